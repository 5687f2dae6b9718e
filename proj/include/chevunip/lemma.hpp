#pragma once

#include <string>
#include <vector>

#include "chevunip/characters.hpp"

namespace chevunip {

// One application of the inflation-induction lemma: G with subgroups
// H (X a transversal of it), Y, Z <= H and a linear lambda on Z. The five
// hypotheses are checked, never assumed.
struct LemmaInstance {
    std::string name;
    const UnipotentGroup* G = nullptr;
    CoordSubgroup H, X, Y, Z;
    LinearForm lambda; // carrier Z
};

struct HypothesisReport {
    bool z_central = false;
    bool x_transversal = false;
    bool xy_elementary_abelian = false;
    bool y_normal_in_h = false;
    bool z_meet_y_trivial = false;
    bool comm_xy_in_z = false;
    std::string detail;
    bool all() const {
        return z_central && x_transversal && xy_elementary_abelian && y_normal_in_h &&
               z_meet_y_trivial && comm_xy_in_z;
    }
};

HypothesisReport check_hypotheses(const LemmaInstance& inst,
                                  std::uint64_t guard = default_guard());

// X' = {x in X : lambda([x,y]) = 1 for all y in Y} and its mirror, by
// exhaustive sweep over the (small) X and Y
struct PrimePair {
    std::vector<GroupElem> x_prime, y_prime;
};
PrimePair compute_primes(const LemmaInstance& inst, std::uint64_t guard = default_guard());

// deterministic complement of Y' in the elementary abelian Y: greedy span
// extension by Y's root-coordinate basis vectors in root-then-digit order
std::vector<GroupElem> choose_complement(const LemmaInstance& inst,
                                         const std::vector<GroupElem>& y_prime);

// Full audit used by the acceptance suite: hypotheses, |X'| = |Y'|, each
// built character irreducible with lambda-isotypic central restriction,
// pairwise distinct, and sum of squared degrees = [G : Z] (the independent
// count of Irr(G | lambda) from decomposing Ind_Z^G lambda).
struct InstanceCheck {
    std::string name;
    bool hypotheses_pass = false;
    bool primes_balanced = false;
    std::uint64_t x_prime_size = 0;
    bool chars_irreducible = false;
    bool chars_isotypic = false;
    bool chars_distinct = false;
    bool count_matches = false;
    std::string detail;
    bool all() const {
        return hypotheses_pass && primes_balanced && chars_irreducible && chars_isotypic &&
               chars_distinct && count_matches;
    }
};
InstanceCheck verify_instance(const LemmaInstance& inst, const std::vector<Character>& built,
                              std::uint64_t guard = default_guard());

// The paper's enumerable instances, one per (group, central character):
// B2 (all q = 2^f), the G2 chains for p = 2, 3 and p >= 5, and D4 at q = 2.
// Each instance comes with the characters its family recipe builds over the
// instance's lambda.
struct PaperInstance {
    LemmaInstance instance;
    std::vector<Character> built;
};
std::vector<PaperInstance> paper_instances_b2(int f);
std::vector<PaperInstance> paper_instances_g2(int p, int f);
std::vector<PaperInstance> paper_instances_d4(int f);

} // namespace chevunip
