#include "chevunip/lie.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace chevunip {

LieConstants::LieConstants(const RootSystem& rs) : rs_(rs), nroots_(rs.num_roots()) {
    build_special_table();
}

std::optional<int> LieConstants::signed_sum(int i, int j) const {
    std::vector<int> c(static_cast<size_t>(rs_.rank()), 0);
    auto acc = [&](int idx) {
        int sign = idx < 0 ? -1 : 1;
        const auto& r = rs_.root(idx < 0 ? -idx : idx);
        for (int k = 0; k < rs_.rank(); ++k) c[static_cast<size_t>(k)] += sign * r[static_cast<size_t>(k)];
    };
    acc(i);
    acc(j);
    bool pos = false, neg = false;
    for (int v : c) { if (v > 0) pos = true; if (v < 0) neg = true; }
    if (pos == neg) return std::nullopt; // zero or mixed: not a root
    if (neg) for (auto& v : c) v = -v;
    auto k = rs_.index_of(c);
    if (!k) return std::nullopt;
    return neg ? -*k : *k;
}

int LieConstants::string_p(int i, int j) const {
    // longest k with alpha_j - k*alpha_i still a root
    int p = 0, cur = j;
    while (true) {
        auto nxt = signed_sum(cur, -i);
        if (!nxt) break;
        cur = *nxt;
        ++p;
        if (p > 4) throw std::logic_error("LieConstants: root string too long");
    }
    return p;
}

void LieConstants::build_special_table() {
    // positive roots in enumeration (height) order; extraspecial pair of each
    // non-simple root gets the positive sign, the rest follow from Jacobi
    for (int g = 1; g <= nroots_; ++g) {
        std::vector<std::pair<int, int>> decomps;
        for (int a = 1; a <= nroots_; ++a)
            for (int b = a; b <= nroots_; ++b) {
                auto s = rs_.root_sum(a, b);
                if (s && *s == g) decomps.push_back({a, b});
            }
        if (decomps.empty()) continue;
        std::sort(decomps.begin(), decomps.end());
        auto [a1, b1] = decomps.front();
        special_[{a1, b1}] = string_p(a1, b1) + 1;
        for (size_t d = 1; d < decomps.size(); ++d) {
            auto [a, b] = decomps[d];
            // Jacobi on (e_{a1}, e_{b1}, e_{-a})
            Rat t2(0), t3(0);
            auto b1ma = signed_sum(b1, -a);
            if (b1ma) t2 = Rat(n_constant(b1, -a)) * Rat(n_constant(*b1ma, a1));
            auto a1ma = signed_sum(a1, -a);
            if (a1ma) t3 = Rat(n_constant(-a, a1)) * Rat(n_constant(*a1ma, b1));
            Rat val = Rat(rs_.length_sq(g), rs_.length_sq(b)) * (t2 + t3) / Rat(n_constant(a1, b1));
            if (!val.is_integer())
                throw std::logic_error("LieConstants: non-integral N at " + rs_.name());
            int v = static_cast<int>(val.as_integer());
            int expect = string_p(a, b) + 1;
            if (v != expect && v != -expect)
                throw std::logic_error("LieConstants: |N| mismatch at " + rs_.name());
            special_[{a, b}] = v;
        }
    }
}

int LieConstants::n_constant(int i, int j) const {
    auto z = signed_sum(i, j);
    if (!z) return 0;
    if (i > 0 && j > 0) {
        if (i == j) return 0;
        if (i < j) {
            auto it = special_.find({i, j});
            return it == special_.end() ? 0 : it->second;
        }
        return -n_constant(j, i);
    }
    if (i < 0 && j < 0) return -n_constant(-i, -j);
    if (*z > 0) {
        if (i < 0) {
            // x<0<y, z=x+y>0: N(x,y) = (z,z)/(y,y) N(-x,z)
            Rat v = Rat(length_sq_signed(*z), length_sq_signed(j)) * Rat(n_constant(-i, *z));
            return static_cast<int>(v.as_integer());
        }
        return -n_constant(j, i);
    }
    return -n_constant(-i, -j);
}

int LieConstants::basis_index(int signed_root) const {
    if (signed_root > 0) return rs_.rank() + signed_root - 1;
    return rs_.rank() + nroots_ - signed_root - 1;
}

std::vector<Rat> LieConstants::coroot_vector(int i) const {
    // alpha^vee = sum_j c_j (alpha_j,alpha_j)/(alpha,alpha) alpha_j^vee
    std::vector<Rat> v(static_cast<size_t>(rs_.rank()));
    const auto& c = rs_.root(i);
    for (int j = 0; j < rs_.rank(); ++j)
        v[static_cast<size_t>(j)] = Rat(c[static_cast<size_t>(j)]) * Rat(rs_.length_sq(j + 1), rs_.length_sq(i));
    return v;
}

void LieConstants::ad_apply(int g, const std::map<int, Rat>& v, std::map<int, Rat>& out) const {
    out.clear();
    auto add_to = [&](int idx, const Rat& x) {
        if (x.is_zero()) return;
        auto [it, inserted] = out.emplace(idx, x);
        if (!inserted) {
            it->second += x;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    for (const auto& [idx, coef] : v) {
        if (idx < rs_.rank()) {
            // [e_g, h_j] = -<g, alpha_j^vee> e_g
            int gi = g < 0 ? -g : g;
            int pair = rs_.cartan_pairing(rs_.root(gi), idx + 1) * (g < 0 ? -1 : 1);
            add_to(basis_index(g), coef * Rat(-pair));
        } else {
            int d = idx < rs_.rank() + nroots_ ? idx - rs_.rank() + 1
                                               : -(idx - rs_.rank() - nroots_ + 1);
            if (d == -g) {
                // [e_g, e_{-g}] = sign * h_{|g|}
                auto h = coroot_vector(g < 0 ? -g : g);
                for (int j = 0; j < rs_.rank(); ++j)
                    add_to(j, coef * h[static_cast<size_t>(j)] * Rat(g < 0 ? -1 : 1));
            } else {
                auto s = signed_sum(g, d);
                if (s) add_to(basis_index(*s), coef * Rat(n_constant(g, d)));
            }
        }
    }
}

void LieConstants::exp_apply(int g, const Rat& t, std::map<int, Rat>& v) const {
    if (t.is_zero()) return;
    std::map<int, Rat> result = v, term = v, next;
    Rat scale(1);
    bool done = false;
    for (int k = 1; k <= 16; ++k) {
        ad_apply(g, term, next);
        if (next.empty()) { done = true; break; }
        term.swap(next);
        scale = scale * t / Rat(k);
        for (const auto& [idx, coef] : term) {
            Rat x = coef * scale;
            auto [it, inserted] = result.emplace(idx, x);
            if (!inserted) {
                it->second += x;
                if (it->second.is_zero()) result.erase(it);
            }
        }
    }
    if (!done) throw std::logic_error("LieConstants: ad not nilpotent");
    v.swap(result);
}

std::vector<SwapTerm> LieConstants::compute_swap_word(int b, int a) const {
    // cone roots i*alpha_a + j*alpha_b with i,j >= 1, in enumeration order
    struct Cone { int root, ia, ib; };
    std::vector<Cone> cone;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            std::vector<int> c(static_cast<size_t>(rs_.rank()), 0);
            for (int k = 0; k < rs_.rank(); ++k)
                c[static_cast<size_t>(k)] = i * rs_.root(a)[static_cast<size_t>(k)] + j * rs_.root(b)[static_cast<size_t>(k)];
            auto idx = rs_.index_of(c);
            if (idx) cone.push_back({*idx, i, j});
        }
    std::sort(cone.begin(), cone.end(), [](const Cone& x, const Cone& y) { return x.root < y.root; });
    if (cone.empty()) return {};

    // peel [x_b(t), x_a(s)] = x_b(-t) x_a(-s) x_b(t) x_a(s) at numeric (s,t)
    auto peel = [&](Rat s, Rat t) {
        std::vector<std::pair<int, Rat>> letters = {{a, s}, {b, t}, {a, -s}, {b, -t}};
        std::vector<Rat> coeffs;
        for (const auto& cn : cone) {
            std::map<int, Rat> v;
            v[basis_index(-cn.root)] = Rat(1);
            for (const auto& [r, arg] : letters) exp_apply(r, arg, v);
            // h-part must be c * coroot(cn.root)
            auto h = coroot_vector(cn.root);
            Rat c(0);
            for (int j = 0; j < rs_.rank(); ++j) {
                if (h[static_cast<size_t>(j)].is_zero()) continue;
                auto it = v.find(j);
                c = it == v.end() ? Rat(0) : it->second / h[static_cast<size_t>(j)];
                break;
            }
            for (int j = 0; j < rs_.rank(); ++j) {
                auto it = v.find(j);
                Rat got = it == v.end() ? Rat(0) : it->second;
                if (got != c * h[static_cast<size_t>(j)])
                    throw std::logic_error("LieConstants: inconsistent h-part in peel");
            }
            coeffs.push_back(c);
            letters.push_back({cn.root, -c});
        }
        // the peeled word must now act trivially on every e_{-gamma}
        for (const auto& cn : cone) {
            std::map<int, Rat> v;
            v[basis_index(-cn.root)] = Rat(1);
            for (const auto& [r, arg] : letters) exp_apply(r, arg, v);
            if (v.size() != 1 || v.begin()->first != basis_index(-cn.root) || v.begin()->second != Rat(1))
                throw std::logic_error("LieConstants: peel residue nonzero");
        }
        return coeffs;
    };

    auto c11 = peel(Rat(1), Rat(1));
    auto c23 = peel(Rat(2), Rat(3));

    std::vector<SwapTerm> word;
    for (size_t k = 0; k < cone.size(); ++k) {
        if (!c11[k].is_integer()) throw std::logic_error("LieConstants: non-integral constant");
        std::int64_t cst = c11[k].as_integer();
        // verify the monomial shape c * s^ia * t^ib on an independent sample
        Rat expect = Rat(cst);
        for (int i = 0; i < cone[k].ia; ++i) expect *= Rat(2);
        for (int j = 0; j < cone[k].ib; ++j) expect *= Rat(3);
        if (c23[k] != expect) throw std::logic_error("LieConstants: commutator term not monomial");
        if (cst != 0) word.push_back({cone[k].root, static_cast<int>(cst), cone[k].ia, cone[k].ib});
    }
    return word;
}

std::vector<SwapTerm> LieConstants::g2_swap_word(int b, int a) const {
    // [x_b(t), x_a(s)] transcribed from the printed G2 relations; terms are
    // x_root(cst * s^exp_a * t^exp_b) in increasing root order
    if (a == 1 && b == 2) return {{3, 1, 1, 1}, {4, -1, 1, 2}, {5, 1, 1, 3}, {6, -2, 2, 3}};
    if (a == 2 && b == 3) return {{4, -2, 1, 1}, {5, 3, 2, 1}, {6, -3, 1, 2}};
    if (a == 2 && b == 4) return {{5, -3, 1, 1}};
    if (a == 1 && b == 5) return {{6, -1, 1, 1}};
    if (a == 3 && b == 4) return {{6, 3, 1, 1}};
    return {};
}

const std::vector<SwapTerm>& LieConstants::swap_word(int b, int a) const {
    if (!(b > a && a >= 1 && b <= nroots_))
        throw ArgumentError("swap_word: need roots b > a");
    auto key = std::make_pair(b, a);
    auto it = swap_cache_.find(key);
    if (it != swap_cache_.end()) return it->second;
    std::vector<SwapTerm> w =
        (rs_.lie_type() == 'G') ? g2_swap_word(b, a) : compute_swap_word(b, a);
    return swap_cache_.emplace(key, std::move(w)).first->second;
}

const LieConstants& lie_constants(const RootSystem& rs) {
    static std::map<std::string, std::unique_ptr<LieConstants>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = rs.name();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<LieConstants>(rs)).first;
    return *it->second;
}

} // namespace chevunip
