#pragma once

#include <map>
#include <vector>

#include "chevunip/rational.hpp"
#include "chevunip/root_system.hpp"

namespace chevunip {

// One factor of a collected commutator word: x_root(cst * s^exp_a * t^exp_b),
// where s is the argument of the lower letter and t of the higher one.
struct SwapTerm {
    int root;  // 1-based root index
    int cst;   // integer structure constant
    int exp_a; // exponent of s
    int exp_b; // exponent of t
};

// Chevalley structure constants for one root system. Signs come from the
// extraspecial-pair normalization (positive on extraspecial pairs, the rest
// forced by the Jacobi identity), except G2 where the five printed relations
// are installed directly. Commutator words are extracted by exponentiating
// ad(e_alpha) in the adjoint module over Q and peeling canonical coordinates,
// so they are correct by construction; a second sample point cross-checks
// each extracted monomial.
class LieConstants {
public:
    explicit LieConstants(const RootSystem& rs);

    const RootSystem& rs() const { return rs_; }

    // N(alpha_i, alpha_j) for signed indices (negative index = negative root);
    // 0 when the sum is not a root.
    int n_constant(int i, int j) const;

    // canonical word of [x_b(t), x_a(s)] for positive roots b > a, terms in
    // increasing root order (empty when the letters commute)
    const std::vector<SwapTerm>& swap_word(int b, int a) const;

private:
    const RootSystem& rs_;
    int nroots_;
    std::map<std::pair<int, int>, int> special_; // (i<j) positive pairs
    mutable std::map<std::pair<int, int>, std::vector<SwapTerm>> swap_cache_;

    // signed-root helpers
    std::optional<int> signed_sum(int i, int j) const;
    int string_p(int i, int j) const; // max k with alpha_j - k alpha_i a root
    int length_sq_signed(int i) const { return rs_.length_sq(i < 0 ? -i : i); }

    void build_special_table();
    std::vector<SwapTerm> compute_swap_word(int b, int a) const;
    std::vector<SwapTerm> g2_swap_word(int b, int a) const;

    // adjoint representation over Q: basis h_1..h_n, e_{+1..+N}, e_{-1..-N}
    int dim() const { return rs_.rank() + 2 * nroots_; }
    int basis_index(int signed_root) const;
    std::vector<Rat> coroot_vector(int i) const; // h_alpha_i in the h-basis
    void ad_apply(int signed_root, const std::map<int, Rat>& v, std::map<int, Rat>& out) const;
    void exp_apply(int signed_root, const Rat& t, std::map<int, Rat>& v) const;
};

const LieConstants& lie_constants(const RootSystem& rs);

} // namespace chevunip
