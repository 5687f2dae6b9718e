#include "chevunip/root_system.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace chevunip {

namespace {

int expected_count(char t, int n) {
    switch (t) {
        case 'A': return n * (n + 1) / 2;
        case 'B':
        case 'C': return n * n;
        case 'D': return n * (n - 1);
        case 'E': return n == 6 ? 36 : (n == 7 ? 63 : 120);
        case 'F': return 24;
        case 'G': return 6;
    }
    return -1;
}

} // namespace

RootSystem::RootSystem(char lie_type, int rank) : type_(lie_type), rank_(rank) {
    bool ok = (type_ == 'A' && rank >= 1) || ((type_ == 'B' || type_ == 'C') && rank >= 2) ||
              (type_ == 'D' && rank >= 4) || (type_ == 'E' && rank >= 6 && rank <= 8) ||
              (type_ == 'F' && rank == 4) || (type_ == 'G' && rank == 2);
    if (!ok)
        throw ConfigError("RootSystem: unsupported type " + std::string(1, lie_type) +
                          std::to_string(rank));
    build_simple_data();
    generate_roots();
    if (num_roots() != expected_count(type_, rank_))
        throw ConfigError("RootSystem: generated root count mismatch for " + name());
}

void RootSystem::build_simple_data() {
    std::vector<std::pair<int, int>> edges; // 1-based node pairs
    std::vector<int> len(static_cast<size_t>(rank_) + 1, 2);

    auto chain = [&](int from, int to) {
        for (int i = from; i < to; ++i) edges.push_back({i, i + 1});
    };
    switch (type_) {
        case 'A': chain(1, rank_); break;
        case 'B':
            chain(1, rank_);
            len[static_cast<size_t>(rank_)] = 1; // short last node
            break;
        case 'C':
            chain(1, rank_);
            for (int i = 1; i < rank_; ++i) len[static_cast<size_t>(i)] = 2;
            len[static_cast<size_t>(rank_)] = 4; // long last node, short^2 = 2
            break;
        case 'D':
            edges.push_back({1, 3});
            edges.push_back({2, 3});
            chain(3, rank_);
            break;
        case 'E':
            edges.push_back({1, 3});
            edges.push_back({3, 4});
            edges.push_back({2, 4});
            chain(4, rank_);
            break;
        case 'F':
            chain(1, 4);
            len[1] = len[2] = 4;
            len[3] = len[4] = 2;
            break;
        case 'G':
            edges.push_back({1, 2});
            len[1] = 6;
            len[2] = 2;
            break;
    }

    bilin_.assign(static_cast<size_t>(rank_), std::vector<int>(static_cast<size_t>(rank_), 0));
    for (int i = 1; i <= rank_; ++i) bilin_[i - 1][i - 1] = len[static_cast<size_t>(i)];
    for (auto [a, b] : edges) {
        // (x,y) = |x||y| cos(angle); equals -max/2 for 120, 135 and 150 degrees
        int la = len[static_cast<size_t>(a)], lb = len[static_cast<size_t>(b)];
        int v = -std::max(la, lb) / 2;
        bilin_[a - 1][b - 1] = bilin_[b - 1][a - 1] = v;
    }
}

int RootSystem::cartan_pairing(const std::vector<int>& coeffs, int j) const {
    // 2 (r, alpha_j) / (alpha_j, alpha_j)
    long num = 0;
    for (int i = 0; i < rank_; ++i) num += static_cast<long>(coeffs[static_cast<size_t>(i)]) *
                                           bilin_[static_cast<size_t>(i)][static_cast<size_t>(j - 1)];
    long den = bilin_[static_cast<size_t>(j - 1)][static_cast<size_t>(j - 1)];
    long v = 2 * num;
    if (v % den != 0) throw std::logic_error("RootSystem: non-integral Cartan pairing");
    return static_cast<int>(v / den);
}

bool RootSystem::contains(const std::vector<int>& c) const {
    for (int i = 1; i <= num_roots(); ++i)
        if (roots_[static_cast<size_t>(i)] == c) return true;
    return false;
}

void RootSystem::generate_roots() {
    roots_.clear();
    roots_.push_back({}); // slot 0
    for (int i = 1; i <= rank_; ++i) {
        std::vector<int> e(static_cast<size_t>(rank_), 0);
        e[static_cast<size_t>(i - 1)] = 1;
        roots_.push_back(e);
    }

    std::vector<std::vector<int>> layer;
    for (int i = 1; i <= rank_; ++i) layer.push_back(roots_[static_cast<size_t>(i)]);

    while (!layer.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& r : layer) {
            for (int i = 1; i <= rank_; ++i) {
                std::vector<int> cand = r;
                cand[static_cast<size_t>(i - 1)] += 1;
                if (std::find(next.begin(), next.end(), cand) != next.end()) continue;
                // root-string test: r + alpha_i is a root iff p - <r, alpha_i^vee> > 0
                int p = 0;
                std::vector<int> down = r;
                while (true) {
                    down[static_cast<size_t>(i - 1)] -= 1;
                    if (down[static_cast<size_t>(i - 1)] < 0 || !contains(down)) break;
                    ++p;
                }
                if (p - cartan_pairing(r, i) > 0) next.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const std::vector<int>& a, const std::vector<int>& b) { return a > b; });
        for (const auto& r : next) roots_.push_back(r);
        layer = std::move(next);
    }

    int n = num_roots();
    sum_table_.assign(static_cast<size_t>(n) * n, 0);
    std::map<std::vector<int>, int> index;
    for (int i = 1; i <= n; ++i) index[roots_[static_cast<size_t>(i)]] = i;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            std::vector<int> s = roots_[static_cast<size_t>(i)];
            for (int k = 0; k < rank_; ++k) s[static_cast<size_t>(k)] += roots_[static_cast<size_t>(j)][static_cast<size_t>(k)];
            auto it = index.find(s);
            if (it != index.end()) sum_table_[static_cast<size_t>(i - 1) * n + (j - 1)] = it->second;
        }
}

int RootSystem::height(int i) const {
    const auto& r = root(i);
    return std::accumulate(r.begin(), r.end(), 0);
}

std::optional<int> RootSystem::root_sum(int i, int j) const {
    if (i < 1 || j < 1 || i > num_roots() || j > num_roots())
        throw ArgumentError("root_sum: index out of range");
    int k = sum_table_[static_cast<size_t>(i - 1) * num_roots() + (j - 1)];
    if (k == 0) return std::nullopt;
    return k;
}

std::optional<int> RootSystem::index_of(const std::vector<int>& coeffs) const {
    for (int i = 1; i <= num_roots(); ++i)
        if (roots_[static_cast<size_t>(i)] == coeffs) return i;
    return std::nullopt;
}

std::set<int> RootSystem::bad_primes() const {
    std::set<int> out;
    const auto& top = root(highest_root());
    for (int c : top)
        for (int p : {2, 3, 5})
            if (c % p == 0 && c >= p) out.insert(p);
    return out;
}

bool RootSystem::is_pattern(const std::set<int>& subset) const {
    for (int i : subset)
        for (int j : subset) {
            auto s = root_sum(i, j);
            if (s && !subset.count(*s)) return false;
        }
    return true;
}

bool RootSystem::is_normal_in(const std::set<int>& normal_part, const std::set<int>& pattern) const {
    for (int i : normal_part)
        if (!pattern.count(i))
            throw ArgumentError("is_normal_in: N is not contained in P");
    for (int i : normal_part)
        for (int j : pattern) {
            auto s = root_sum(i, j);
            if (s && !normal_part.count(*s)) return false;
        }
    return true;
}

std::set<int> RootSystem::all_roots_set() const {
    std::set<int> s;
    for (int i = 1; i <= num_roots(); ++i) s.insert(i);
    return s;
}

std::set<int> RootSystem::upward_closure(const std::set<int>& simple_indices) const {
    for (int s : simple_indices)
        if (s < 1 || s > rank_) throw ArgumentError("upward_closure: not a simple root index");
    std::set<int> out;
    for (int i = 1; i <= num_roots(); ++i)
        for (int s : simple_indices)
            if (root(i)[static_cast<size_t>(s - 1)] >= 1) { out.insert(i); break; }
    return out;
}

int RootSystem::length_sq(int i) const {
    const auto& c = root(i);
    long v = 0;
    for (int a = 0; a < rank_; ++a)
        for (int b = 0; b < rank_; ++b)
            v += static_cast<long>(c[static_cast<size_t>(a)]) * c[static_cast<size_t>(b)] *
                 bilin_[static_cast<size_t>(a)][static_cast<size_t>(b)];
    return static_cast<int>(v);
}

std::string RootSystem::json() const {
    std::ostringstream os;
    os << "{\"order\":\"chevie-v1\",\"rank\":" << rank_ << ",\"roots\":[";
    for (int i = 1; i <= num_roots(); ++i) {
        if (i > 1) os << ",";
        os << "[";
        const auto& r = root(i);
        for (int k = 0; k < rank_; ++k) {
            if (k) os << ",";
            os << r[static_cast<size_t>(k)];
        }
        os << "]";
    }
    os << "],\"type\":\"" << type_ << "\"}";
    return os.str();
}

const RootSystem& root_system(char lie_type, int rank) {
    static std::map<std::pair<char, int>, std::unique_ptr<RootSystem>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(lie_type, rank);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<RootSystem>(lie_type, rank)).first;
    return *it->second;
}

} // namespace chevunip
