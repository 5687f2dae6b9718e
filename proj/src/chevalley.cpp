#include "chevunip/chevalley.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace chevunip {

std::uint64_t default_guard() {
    if (const char* e = std::getenv("CHEVUNIP_GUARD")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(e, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 2'000'000;
}

std::uint64_t default_pair_budget() { return 20'000'000; }

UnipotentGroup::UnipotentGroup(const RootSystem& rs, const FqField& F)
    : rs_(&rs), F_(&F), lie_(&lie_constants(rs)) {
    for (int i = 1; i <= rs.num_roots(); ++i) roots_.push_back(i);
    init_maps();
}

UnipotentGroup::UnipotentGroup(const UnipotentGroup& parent, const std::set<int>& normal_roots)
    : rs_(parent.rs_), F_(parent.F_), lie_(parent.lie_) {
    int p = F_->p();
    // X_N must be normal at this p: collection words touching N stay in N
    // up to constants that vanish mod p
    for (int n : normal_roots) {
        if (n < 1 || n > rs_->num_roots()) throw ArgumentError("quotient: bad root index");
        for (int x = 1; x <= rs_->num_roots(); ++x) {
            if (x == n) continue;
            int b = std::max(n, x), a = std::min(n, x);
            for (const auto& t : lie_->swap_word(b, a))
                if (!normal_roots.count(t.root) && t.cst % p != 0)
                    throw ArgumentError("quotient: pattern not normal at p=" + std::to_string(p) +
                                        " (root " + std::to_string(n) + " vs " + std::to_string(x) + ")");
        }
    }
    for (int i = 1; i <= rs_->num_roots(); ++i)
        if (!normal_roots.count(i)) roots_.push_back(i);
    init_maps();
}

void UnipotentGroup::init_maps() {
    local_.assign(static_cast<size_t>(rs_->num_roots()) + 1, -1);
    for (size_t i = 0; i < roots_.size(); ++i) local_[static_cast<size_t>(roots_[i])] = static_cast<int>(i);
    pair_cache_.assign(roots_.size() * roots_.size(), std::nullopt);
}

int UnipotentGroup::local_index(int parent_root) const {
    int l = local_.at(static_cast<size_t>(parent_root));
    if (l < 0) throw ArgumentError("root " + std::to_string(parent_root) + " is not live here");
    return l;
}

std::uint64_t UnipotentGroup::order() const {
    std::uint64_t o = 1;
    for (size_t i = 0; i < roots_.size(); ++i) {
        if (o > UINT64_MAX / static_cast<std::uint64_t>(F_->q()))
            throw CapacityError("group order exceeds 64 bits");
        o *= static_cast<std::uint64_t>(F_->q());
    }
    return o;
}

GroupElem UnipotentGroup::root_elem(int parent_root, Fq t) const {
    GroupElem g = identity();
    g[static_cast<size_t>(local_index(parent_root))] = t;
    return g;
}

bool UnipotentGroup::is_identity(const GroupElem& g) const {
    for (Fq t : g) if (t != 0) return false;
    return true;
}

const std::vector<SwapTerm>& UnipotentGroup::pair_word(int local_b, int local_a) const {
    auto& slot = pair_cache_[static_cast<size_t>(local_b) * roots_.size() + static_cast<size_t>(local_a)];
    if (!slot) {
        std::vector<SwapTerm> filtered;
        int p = F_->p();
        for (const auto& t : lie_->swap_word(parent_root(local_b), parent_root(local_a))) {
            if (t.cst % p == 0) continue;
            int l = local_.at(static_cast<size_t>(t.root));
            if (l < 0) continue; // dies in the quotient
            filtered.push_back({l, t.cst, t.exp_a, t.exp_b});
        }
        slot = std::move(filtered);
    }
    return *slot;
}

namespace {
struct Letter {
    int root; // local
    Fq arg;
};
} // namespace

GroupElem UnipotentGroup::multiply(const GroupElem& g, const GroupElem& h) const {
    thread_local std::vector<Letter> w;
    w.clear();
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] != 0) w.push_back({static_cast<int>(i), g[i]});
    for (size_t i = 0; i < h.size(); ++i)
        if (h[i] != 0) w.push_back({static_cast<int>(i), h[i]});

    size_t i = 0;
    while (i + 1 < w.size()) {
        if (w[i].root < w[i + 1].root) { ++i; continue; }
        if (w[i].root == w[i + 1].root) {
            Fq s = F_->add(w[i].arg, w[i + 1].arg);
            if (s == 0) {
                w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
            } else {
                w[i].arg = s;
                w.erase(w.begin() + static_cast<long>(i) + 1);
            }
            i = i > 0 ? i - 1 : 0;
            continue;
        }
        // inversion: x_b(t) x_a(s) -> x_a(s) x_b(t) [x_b(t), x_a(s)]
        Letter b = w[i], a = w[i + 1];
        w[i] = a;
        w[i + 1] = b;
        const auto& word = pair_word(b.root, a.root);
        if (!word.empty()) {
            std::vector<Letter> corr;
            corr.reserve(word.size());
            for (const auto& t : word) {
                Fq v = F_->scale(t.cst, F_->mul(F_->pow(a.arg, t.exp_a), F_->pow(b.arg, t.exp_b)));
                if (v != 0) corr.push_back({t.root, v});
            }
            w.insert(w.begin() + static_cast<long>(i) + 2, corr.begin(), corr.end());
        }
        i = i > 0 ? i - 1 : 0;
    }

    GroupElem out = identity();
    for (const auto& l : w) out[static_cast<size_t>(l.root)] = l.arg;
    return out;
}

GroupElem UnipotentGroup::inverse(const GroupElem& g) const {
    GroupElem acc = identity();
    for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) {
        if (g[static_cast<size_t>(i)] == 0) continue;
        GroupElem letter = identity();
        letter[static_cast<size_t>(i)] = F_->neg(g[static_cast<size_t>(i)]);
        acc = multiply(acc, letter);
    }
    return acc;
}

GroupElem UnipotentGroup::conjugate(const GroupElem& g, const GroupElem& h) const {
    return multiply(multiply(inverse(h), g), h);
}

GroupElem UnipotentGroup::commutator(const GroupElem& g, const GroupElem& h) const {
    return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
}

GroupElem UnipotentGroup::power(const GroupElem& g, std::int64_t k) const {
    GroupElem base = g, out = identity();
    bool neg = k < 0;
    std::uint64_t e = static_cast<std::uint64_t>(neg ? -k : k);
    while (e > 0) {
        if (e & 1) out = multiply(out, base);
        base = multiply(base, base);
        e >>= 1;
    }
    return neg ? inverse(out) : out;
}

Fq UnipotentGroup::coord(const GroupElem& g, int parent_root) const {
    return g[static_cast<size_t>(local_index(parent_root))];
}

std::uint64_t UnipotentGroup::rank_of(const GroupElem& g) const {
    std::uint64_t r = 0;
    for (size_t i = g.size(); i-- > 0;) r = r * static_cast<std::uint64_t>(F_->q()) + g[i];
    return r;
}

GroupElem UnipotentGroup::unrank(std::uint64_t r) const {
    GroupElem g = identity();
    for (size_t i = 0; i < g.size(); ++i) {
        g[i] = static_cast<Fq>(r % static_cast<std::uint64_t>(F_->q()));
        r /= static_cast<std::uint64_t>(F_->q());
    }
    return g;
}

std::vector<GroupElem> UnipotentGroup::enumerate(std::uint64_t guard) const {
    std::uint64_t n = order();
    if (n > guard) throw CapacityError("enumerate: order " + std::to_string(n) + " exceeds guard", 0);
    std::vector<GroupElem> out;
    out.reserve(n);
    for (std::uint64_t r = 0; r < n; ++r) out.push_back(unrank(r));
    return out;
}

std::vector<GroupElem> UnipotentGroup::root_generators() const {
    std::vector<GroupElem> gens;
    for (int r : roots_)
        for (int b = 0; b < F_->f(); ++b) {
            Fq t = 1;
            for (int k = 0; k < b; ++k) t = static_cast<Fq>(t * F_->p()); // basis x^b
            gens.push_back(root_elem(r, t));
        }
    return gens;
}

std::set<int> UnipotentGroup::central_roots() const {
    std::set<int> out;
    for (int i = 0; i < num_live(); ++i) {
        bool central = true;
        for (int j = 0; j < num_live() && central; ++j) {
            if (i == j) continue;
            if (!pair_word(std::max(i, j), std::min(i, j)).empty()) central = false;
        }
        if (central) out.insert(parent_root(i));
    }
    return out;
}

int UnipotentGroup::conjugacy_class_count(std::uint64_t guard) const {
    std::uint64_t n = order();
    if (n > guard) throw CapacityError("class count: order exceeds guard", 0);
    auto gens = root_generators();
    std::vector<char> seen(n, 0);
    int classes = 0;
    std::vector<std::uint64_t> stack;
    for (std::uint64_t r = 0; r < n; ++r) {
        if (seen[r]) continue;
        ++classes;
        seen[r] = 1;
        stack.assign(1, r);
        while (!stack.empty()) {
            std::uint64_t cur = stack.back();
            stack.pop_back();
            GroupElem g = unrank(cur);
            for (const auto& x : gens) {
                std::uint64_t c = rank_of(conjugate(g, x));
                if (!seen[c]) {
                    seen[c] = 1;
                    stack.push_back(c);
                }
            }
        }
    }
    return classes;
}

std::string UnipotentGroup::elem_str(const GroupElem& g) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "x_" << parent_root(static_cast<int>(i)) << "(" << F_->elem_str(g[i]) << ")";
    }
    return first ? "1" : os.str();
}

// ---------------------------------------------------------------------------

CoordSubgroup::CoordSubgroup(const UnipotentGroup& G, std::vector<Leg> legs)
    : G_(&G), legs_(std::move(legs)) {
    std::set<int> covered;
    for (auto& leg : legs_) {
        if (leg.kind == Leg::Kind::Formula) {
            std::sort(leg.entries.begin(), leg.entries.end(),
                      [](const Leg::Entry& a, const Leg::Entry& b) { return a.root < b.root; });
            if (leg.entries.empty()) throw ArgumentError("CoordSubgroup: empty leg");
            if (leg.entries.front().exp != 1 || leg.entries.front().weight == 0)
                throw ArgumentError("CoordSubgroup: leg not solvable at its least root");
            for (const auto& e : leg.entries) {
                G.local_index(e.root); // validates liveness
                if (!covered.insert(e.root).second)
                    throw ArgumentError("CoordSubgroup: overlapping leg supports");
            }
            if (leg.full_param) q_dim_ += 1;
            else p_dim_ += 1;
        } else {
            bool nonzero = false;
            for (size_t i = 0; i < leg.power_gen.size(); ++i)
                if (leg.power_gen[i] != 0) {
                    nonzero = true;
                    if (!covered.insert(G.parent_root(static_cast<int>(i))).second)
                        throw ArgumentError("CoordSubgroup: overlapping leg supports");
                }
            if (!nonzero) throw ArgumentError("CoordSubgroup: trivial power leg");
            p_dim_ += 1;
        }
    }
    auto min_root = [&](const Leg& leg) {
        if (leg.kind == Leg::Kind::Formula) return leg.entries.front().root;
        for (size_t i = 0; i < leg.power_gen.size(); ++i)
            if (leg.power_gen[i] != 0) return G.parent_root(static_cast<int>(i));
        return 0;
    };
    std::sort(legs_.begin(), legs_.end(),
              [&](const Leg& a, const Leg& b) { return min_root(a) < min_root(b); });
    min_local_.clear();
    for (const auto& leg : legs_) min_local_.push_back(G.local_index(min_root(leg)));
}

CoordSubgroup CoordSubgroup::pattern(const UnipotentGroup& G, const std::set<int>& roots) {
    std::vector<Leg> legs;
    for (int r : roots) legs.push_back(Leg::full_root(r));
    return CoordSubgroup(G, std::move(legs));
}

CoordSubgroup CoordSubgroup::whole_group(const UnipotentGroup& G) {
    std::vector<Leg> legs;
    for (int r : G.live_roots()) legs.push_back(Leg::full_root(r));
    return CoordSubgroup(G, std::move(legs));
}

std::uint64_t CoordSubgroup::order_u64() const {
    std::uint64_t o = 1;
    auto mul = [&](std::uint64_t m) {
        if (o > UINT64_MAX / m) throw CapacityError("subgroup order exceeds 64 bits");
        o *= m;
    };
    for (int i = 0; i < q_dim_; ++i) mul(static_cast<std::uint64_t>(G_->F().q()));
    for (int i = 0; i < p_dim_; ++i) mul(static_cast<std::uint64_t>(G_->F().p()));
    return o;
}

std::pair<int, int> CoordSubgroup::index_dims() const {
    return {G_->num_live() - q_dim_, p_dim_};
}

std::uint64_t CoordSubgroup::index_u64() const {
    std::uint64_t g = G_->order(), k = order_u64();
    if (g % k != 0) throw std::logic_error("CoordSubgroup: order does not divide group order");
    return g / k;
}

GroupElem CoordSubgroup::element(const std::vector<Fq>& params) const {
    if (params.size() != legs_.size()) throw ArgumentError("CoordSubgroup: wrong parameter count");
    const auto& F = G_->F();
    GroupElem acc = G_->identity();
    for (size_t i = 0; i < legs_.size(); ++i) {
        const Leg& leg = legs_[i];
        Fq t = params[i];
        if (leg.kind == Leg::Kind::Power) {
            if (t >= F.p()) throw ArgumentError("CoordSubgroup: power parameter not in F_p");
            acc = G_->multiply(acc, G_->power(leg.power_gen, t));
            continue;
        }
        if (!leg.full_param && t >= F.p())
            throw ArgumentError("CoordSubgroup: parameter not in F_p");
        GroupElem piece = G_->identity();
        for (const auto& e : leg.entries) {
            GroupElem letter = G_->root_elem(e.root, F.mul(e.weight, F.pow(t, e.exp)));
            piece = G_->multiply(piece, letter);
        }
        acc = G_->multiply(acc, piece);
    }
    return acc;
}

bool CoordSubgroup::member(const GroupElem& g, std::vector<Fq>* params) const {
    const auto& F = G_->F();
    GroupElem cur = g;
    if (params) params->assign(legs_.size(), 0);
    for (size_t i = 0; i < legs_.size(); ++i) {
        const Leg& leg = legs_[i];
        Fq c = cur[static_cast<size_t>(min_local_[i])];
        Fq t;
        if (leg.kind == Leg::Kind::Power) {
            Fq w = leg.power_gen[static_cast<size_t>(min_local_[i])];
            t = F.div(c, w);
            if (t >= F.p()) return false;
            if (t != 0) cur = G_->multiply(G_->inverse(G_->power(leg.power_gen, t)), cur);
        } else {
            t = F.div(c, leg.entries.front().weight);
            if (!leg.full_param && t >= F.p()) return false;
            if (t != 0) {
                GroupElem piece = G_->identity();
                for (const auto& e : leg.entries)
                    piece = G_->multiply(piece, G_->root_elem(e.root, F.mul(e.weight, F.pow(t, e.exp))));
                cur = G_->multiply(G_->inverse(piece), cur);
            }
        }
        if (params) (*params)[i] = t;
    }
    return G_->is_identity(cur);
}

std::vector<std::vector<Fq>> CoordSubgroup::enumerate_params(std::uint64_t guard) const {
    std::uint64_t n = order_u64();
    if (n > guard) throw CapacityError("subgroup enumerate exceeds guard", 0);
    const auto& F = G_->F();
    std::vector<std::vector<Fq>> out;
    out.reserve(n);
    std::vector<Fq> params(legs_.size(), 0);
    std::vector<int> radix;
    for (const auto& leg : legs_)
        radix.push_back(leg.kind == Leg::Kind::Formula && leg.full_param ? F.q() : F.p());
    while (true) {
        out.push_back(params);
        size_t i = 0;
        for (; i < params.size(); ++i) {
            if (params[i] + 1 < radix[i]) {
                params[i] = static_cast<Fq>(params[i] + 1);
                break;
            }
            params[i] = 0;
        }
        if (i == params.size()) break;
    }
    return out;
}

int CoordSubgroup::leg_min_root(size_t leg) const {
    return G_->parent_root(min_local_.at(leg));
}

int CoordSubgroup::leg_index_of(int root) const {
    for (size_t i = 0; i < min_local_.size(); ++i)
        if (G_->parent_root(min_local_[i]) == root) return static_cast<int>(i);
    return -1;
}

std::vector<GroupElem> CoordSubgroup::enumerate(std::uint64_t guard) const {
    std::uint64_t n = order_u64();
    if (n > guard) throw CapacityError("subgroup enumerate exceeds guard", 0);
    std::vector<GroupElem> out;
    out.reserve(n);
    const auto& F = G_->F();
    std::vector<Fq> params(legs_.size(), 0);
    std::vector<int> radix;
    for (const auto& leg : legs_)
        radix.push_back(leg.kind == Leg::Kind::Formula && leg.full_param ? F.q() : F.p());
    while (true) {
        out.push_back(element(params));
        size_t i = 0;
        for (; i < params.size(); ++i) {
            if (params[i] + 1 < radix[i]) {
                params[i] = static_cast<Fq>(params[i] + 1);
                break;
            }
            params[i] = 0;
        }
        if (i == params.size()) break;
    }
    return out;
}

std::vector<GroupElem> CoordSubgroup::generators() const {
    const auto& F = G_->F();
    std::vector<GroupElem> gens;
    for (size_t i = 0; i < legs_.size(); ++i) {
        std::vector<Fq> params(legs_.size(), 0);
        if (legs_[i].kind == Leg::Kind::Formula && legs_[i].full_param) {
            for (int b = 0; b < F.f(); ++b) {
                Fq t = 1;
                for (int k = 0; k < b; ++k) t = static_cast<Fq>(t * F.p());
                params[i] = t;
                gens.push_back(element(params));
            }
        } else {
            params[i] = 1;
            gens.push_back(element(params));
        }
    }
    return gens;
}

bool CoordSubgroup::support_contains(int parent_root) const {
    for (const auto& leg : legs_) {
        if (leg.kind == Leg::Kind::Formula) {
            for (const auto& e : leg.entries)
                if (e.root == parent_root) return true;
        } else if (leg.power_gen[static_cast<size_t>(G_->local_index(parent_root))] != 0) {
            return true;
        }
    }
    return false;
}

std::vector<GroupElem> transversal(const UnipotentGroup& G, const CoordSubgroup& K,
                                   std::uint64_t guard) {
    std::uint64_t n = G.order();
    if (n > guard) throw CapacityError("transversal: group exceeds guard", 0);
    auto kelems = K.enumerate(guard);
    std::vector<char> marked(n, 0);
    std::vector<GroupElem> reps;
    for (std::uint64_t r = 0; r < n; ++r) {
        if (marked[r]) continue;
        GroupElem x = G.unrank(r);
        reps.push_back(x);
        for (const auto& k : kelems) marked[G.rank_of(G.multiply(x, k))] = 1;
    }
    return reps;
}

std::vector<GroupElem> generate_closure(const UnipotentGroup& G,
                                        const std::vector<GroupElem>& gens,
                                        std::uint64_t guard) {
    std::unordered_map<std::uint64_t, char> seen;
    std::vector<GroupElem> elems = {G.identity()};
    seen[G.rank_of(G.identity())] = 1;
    size_t head = 0;
    while (head < elems.size()) {
        GroupElem g = elems[head++];
        for (const auto& x : gens) {
            GroupElem h = G.multiply(g, x);
            auto r = G.rank_of(h);
            if (!seen.count(r)) {
                seen[r] = 1;
                if (elems.size() + 1 > guard)
                    throw CapacityError("closure exceeds guard", elems.size());
                elems.push_back(h);
            }
        }
    }
    return elems;
}

} // namespace chevunip
