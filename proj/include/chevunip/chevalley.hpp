#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chevunip/gf.hpp"
#include "chevunip/lie.hpp"
#include "chevunip/root_system.hpp"

namespace chevunip {

struct CapacityError : std::runtime_error {
    std::uint64_t partial;
    explicit CapacityError(const std::string& msg, std::uint64_t partial_count = 0)
        : std::runtime_error(msg), partial(partial_count) {}
};
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical-form element: local coordinate vector, one slot per live root,
// meaning the product of x_alpha(t_alpha) in increasing root order.
using GroupElem = std::vector<Fq>;

// U(q) restricted to a set of live roots: the full group, or a quotient by a
// normal pattern (normality may hold only mod p; the constructor checks).
// Multiplication is leftmost-inversion collection with memoized pair words.
class UnipotentGroup {
public:
    // full group
    UnipotentGroup(const RootSystem& rs, const FqField& F);
    // quotient of `parent` by the pattern subgroup on `normal_roots`
    UnipotentGroup(const UnipotentGroup& parent, const std::set<int>& normal_roots);

    const RootSystem& rs() const { return *rs_; }
    const FqField& F() const { return *F_; }
    int num_live() const { return static_cast<int>(roots_.size()); }
    const std::vector<int>& live_roots() const { return roots_; }
    bool is_live(int parent_root) const { return local_.at(static_cast<size_t>(parent_root)) >= 0; }
    int local_index(int parent_root) const;
    int parent_root(int local) const { return roots_.at(static_cast<size_t>(local)); }

    // |U| = q^{#live}; throws CapacityError if it does not fit in 64 bits
    std::uint64_t order() const;

    GroupElem identity() const { return GroupElem(roots_.size(), 0); }
    GroupElem root_elem(int parent_root, Fq t) const;
    bool is_identity(const GroupElem& g) const;

    GroupElem multiply(const GroupElem& g, const GroupElem& h) const;
    GroupElem inverse(const GroupElem& g) const;
    GroupElem conjugate(const GroupElem& g, const GroupElem& h) const; // h^-1 g h
    GroupElem commutator(const GroupElem& g, const GroupElem& h) const; // g^-1 h^-1 g h
    GroupElem power(const GroupElem& g, std::int64_t k) const;

    Fq coord(const GroupElem& g, int parent_root) const;

    // ranks are mixed-radix coordinates; valid when order() fits
    std::uint64_t rank_of(const GroupElem& g) const;
    GroupElem unrank(std::uint64_t r) const;

    std::vector<GroupElem> enumerate(std::uint64_t guard) const;
    // generating set: x_r(b) over live roots r and field basis b
    std::vector<GroupElem> root_generators() const;

    // roots whose subgroup is central (all collection words with them vanish)
    std::set<int> central_roots() const;

    int conjugacy_class_count(std::uint64_t guard) const;

    std::string elem_str(const GroupElem& g) const; // "x_3(1)*x_4(t)" style

    const std::vector<SwapTerm>& pair_word(int local_b, int local_a) const;

private:
    const RootSystem* rs_;
    const FqField* F_;
    const LieConstants* lie_;
    std::vector<int> roots_;  // live parent indices, increasing
    std::vector<int> local_;  // parent index -> local or -1
    mutable std::vector<std::optional<std::vector<SwapTerm>>> pair_cache_;

    void init_maps();
};

// One-parameter leg of a coordinate subgroup:
//   Formula: t -> prod_k x_{root_k}(w_k t^{e_k}), t in F_q or in F_p,
//   Power:   k -> gen^k for k in F_p.
// The entry with the least root must have exponent 1; peeling solves the
// parameter there.
struct Leg {
    enum class Kind { Formula, Power };
    struct Entry {
        int root; // parent index
        Fq weight;
        int exp;
    };
    Kind kind = Kind::Formula;
    std::vector<Entry> entries; // sorted by root
    bool full_param = true;     // Formula only: t in F_q (else F_p)
    GroupElem power_gen;        // Power only

    static Leg full_root(int root) { return Leg{Kind::Formula, {{root, 1, 1}}, true, {}}; }
    static Leg line(int root, Fq w) { return Leg{Kind::Formula, {{root, w, 1}}, false, {}}; }
    static Leg formula(std::vector<Entry> es, bool full) {
        return Leg{Kind::Formula, std::move(es), full, {}};
    }
    static Leg power(GroupElem gen) { return Leg{Kind::Power, {}, false, std::move(gen)}; }
};

// Product-of-legs subgroup in normal form: legs ordered by their least live
// root, pairwise disjoint supports. Closure under multiplication is a
// property of the instances built here, checked by audits, not assumed.
class CoordSubgroup {
public:
    CoordSubgroup() : G_(nullptr) {}
    CoordSubgroup(const UnipotentGroup& G, std::vector<Leg> legs);

    static CoordSubgroup pattern(const UnipotentGroup& G, const std::set<int>& roots);
    static CoordSubgroup whole_group(const UnipotentGroup& G);

    const UnipotentGroup& group() const { return *G_; }
    const std::vector<Leg>& legs() const { return legs_; }

    int q_dim() const { return q_dim_; }
    int p_dim() const { return p_dim_; }
    std::uint64_t order_u64() const; // throws CapacityError when too large

    GroupElem element(const std::vector<Fq>& params) const;
    bool member(const GroupElem& g, std::vector<Fq>* params = nullptr) const;
    std::vector<GroupElem> enumerate(std::uint64_t guard) const;
    // same enumeration order, returning the parameter tuples
    std::vector<std::vector<Fq>> enumerate_params(std::uint64_t guard) const;
    std::vector<GroupElem> generators() const;
    int leg_min_root(size_t leg) const;
    // index of the leg with the given least root, or -1
    int leg_index_of(int root) const;
    // index [G : K]; exact, throws if non-integral (legs not a subgroup)
    std::uint64_t index_u64() const;
    // index as (q-exponent, p-exponent): [G:K] = q^first / p^second
    std::pair<int, int> index_dims() const;

    bool support_contains(int parent_root) const;

private:
    const UnipotentGroup* G_;
    std::vector<Leg> legs_;
    int q_dim_ = 0, p_dim_ = 0;
    std::vector<int> min_local_; // per leg
};

// left-coset transversal: reps x with G = union x·K, one per coset
std::vector<GroupElem> transversal(const UnipotentGroup& G, const CoordSubgroup& K,
                                   std::uint64_t guard);

// closure of a generating set (breadth-first), guarded
std::vector<GroupElem> generate_closure(const UnipotentGroup& G,
                                        const std::vector<GroupElem>& gens,
                                        std::uint64_t guard);

std::uint64_t default_guard();            // enumeration guard (env-overridable)
std::uint64_t default_pair_budget();      // |G|^2 style sweeps

} // namespace chevunip
