#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chevunip/gf.hpp"

namespace chevunip {

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Positive roots of a Lie type in the order used throughout: by height,
// ties broken by descending lexicographic order on the simple-root
// coefficient vector. Matches the CHEVIE labelling of the diagrams:
// B/C chains with the short (resp. long) root last, D with the fork at
// nodes 1,2 joined to 3, E with node 2 hanging off node 4, F4 chain,
// G2 with the long root first. Root indices are 1-based, as in alpha_1.
class RootSystem {
public:
    RootSystem(char lie_type, int rank);

    char lie_type() const { return type_; }
    int rank() const { return rank_; }
    int num_roots() const { return static_cast<int>(roots_.size()) - 1; }

    // coefficient vector of alpha_i in the simple-root basis, i in 1..num_roots
    const std::vector<int>& root(int i) const { return roots_.at(static_cast<size_t>(i)); }
    int height(int i) const;
    int highest_root() const { return num_roots(); }

    // alpha_i + alpha_j = alpha_k if the sum is a positive root
    std::optional<int> root_sum(int i, int j) const;
    std::optional<int> index_of(const std::vector<int>& coeffs) const;

    std::set<int> bad_primes() const;

    bool is_pattern(const std::set<int>& subset) const;
    // N normal in P: for alpha in N, beta in P, alpha+beta is in N or not a root
    bool is_normal_in(const std::set<int>& normal_part, const std::set<int>& pattern) const;
    std::set<int> all_roots_set() const;
    // all positive roots with coefficient >= 1 at one of the given simples
    std::set<int> upward_closure(const std::set<int>& simple_indices) const;

    // squared length of alpha_i in the type's integral normalization
    int length_sq(int i) const;
    // pairing <alpha_i, alpha_j^vee> extended linearly in the first slot
    int cartan_pairing(const std::vector<int>& coeffs, int j) const;

    std::string name() const { return std::string(1, type_) + std::to_string(rank_); }
    std::string json() const; // {type, rank, roots, order:"chevie-v1"}

private:
    char type_;
    int rank_;
    std::vector<std::vector<int>> roots_; // slot 0 unused; 1..N coefficient vectors
    std::vector<std::vector<int>> bilin_; // (alpha_i, alpha_j), rank x rank
    std::vector<int> sum_table_;          // (i-1)*N + (j-1) -> k or 0

    void build_simple_data();
    void generate_roots();
    bool contains(const std::vector<int>& c) const;
};

const RootSystem& root_system(char lie_type, int rank);

} // namespace chevunip
