#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chevunip/chevalley.hpp"

#include <map>

using namespace chevunip;

namespace {

GroupElem word(const UnipotentGroup& U, std::initializer_list<std::pair<int, Fq>> letters) {
    GroupElem g = U.identity();
    for (auto [r, t] : letters) g = U.multiply(g, U.root_elem(r, t));
    return g;
}

} // namespace

TEST_CASE("G2 commutator relations, exhaustive over q <= 9") {
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        const auto& F = field(p, f);
        UnipotentGroup U(root_system('G', 2), F);
        for (int s = 0; s < F.q(); ++s) {
            for (int t = 0; t < F.q(); ++t) {
                Fq fs = static_cast<Fq>(s), ft = static_cast<Fq>(t);
                auto st = F.mul(fs, ft);
                auto st2 = F.mul(st, ft);
                auto st3 = F.mul(st2, ft);
                auto s2t3 = F.mul(fs, st3);
                // [x1(s), x2(t)] = x3(-st) x4(st^2) x5(-st^3) x6(-s^2 t^3)
                CHECK(U.commutator(U.root_elem(1, fs), U.root_elem(2, ft)) ==
                      word(U, {{3, F.neg(st)}, {4, st2}, {5, F.neg(st3)}, {6, F.neg(s2t3)}}));
                // [x2(s), x3(t)] = x4(2st) x5(-3s^2 t) x6(3st^2)
                CHECK(U.commutator(U.root_elem(2, fs), U.root_elem(3, ft)) ==
                      word(U, {{4, F.scale(2, st)},
                               {5, F.scale(-3, F.mul(fs, st))},
                               {6, F.scale(3, st2)}}));
                // [x2(s), x4(t)] = x5(3st)
                CHECK(U.commutator(U.root_elem(2, fs), U.root_elem(4, ft)) ==
                      word(U, {{5, F.scale(3, st)}}));
                // [x1(s), x5(t)] = x6(st)
                CHECK(U.commutator(U.root_elem(1, fs), U.root_elem(5, ft)) ==
                      word(U, {{6, st}}));
                // [x3(s), x4(t)] = x6(-3st)
                CHECK(U.commutator(U.root_elem(3, fs), U.root_elem(4, ft)) ==
                      word(U, {{6, F.scale(-3, st)}}));
                // all other pairs commute
                for (int a = 1; a <= 6; ++a)
                    for (int b = a + 1; b <= 6; ++b) {
                        if ((a == 1 && b == 2) || (a == 2 && b == 3) || (a == 2 && b == 4) ||
                            (a == 1 && b == 5) || (a == 3 && b == 4))
                            continue;
                        CHECK(U.is_identity(
                            U.commutator(U.root_elem(a, fs), U.root_elem(b, ft))));
                    }
            }
        }
    }
}

TEST_CASE("B2 relations match the char-2 forms used in the constructions") {
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}}) {
        const auto& F = field(p, f);
        UnipotentGroup U(root_system('B', 2), F);
        for (int s = 0; s < F.q(); ++s)
            for (int t = 0; t < F.q(); ++t) {
                Fq fs = static_cast<Fq>(s), ft = static_cast<Fq>(t);
                auto st = F.mul(fs, ft);
                auto st2 = F.mul(st, ft);
                // [x1(s), x2(t)] = x3(st) x4(st^2) modulo signs, trivial at p=2
                CHECK(U.commutator(U.root_elem(1, fs), U.root_elem(2, ft)) ==
                      word(U, {{3, st}, {4, st2}}));
                // [x2(s), x3(t)] has constant 2, so it vanishes
                CHECK(U.is_identity(U.commutator(U.root_elem(2, fs), U.root_elem(3, ft))));
            }
    }
    // odd characteristic: x4-coefficient of [x2,x3] is +-2st, nonzero
    const auto& F3 = field(3, 1);
    UnipotentGroup U3(root_system('B', 2), F3);
    auto c = U3.commutator(U3.root_elem(2, 1), U3.root_elem(3, 1));
    CHECK(U3.coord(c, 4) != 0);
}

TEST_CASE("group axioms: exhaustive associativity and inverses on small groups") {
    // |U| <= 729: all triples via a multiplication table
    for (auto [t, n, p, f] : std::vector<std::tuple<char, int, int, int>>{
             {'B', 2, 2, 1}, {'G', 2, 2, 1}, {'B', 2, 2, 2}, {'B', 3, 2, 1}, {'G', 2, 3, 1}}) {
        const auto& F = field(p, f);
        UnipotentGroup U(root_system(t, n), F);
        auto n_elems = U.order();
        std::vector<std::uint32_t> mul(n_elems * n_elems);
        std::vector<GroupElem> elems = U.enumerate(default_guard());
        bool inverses_ok = true;
        for (std::uint64_t a = 0; a < n_elems; ++a) {
            inverses_ok = inverses_ok && U.rank_of(U.multiply(U.inverse(elems[a]), elems[a])) == 0;
            for (std::uint64_t b = 0; b < n_elems; ++b)
                mul[a * n_elems + b] =
                    static_cast<std::uint32_t>(U.rank_of(U.multiply(elems[a], elems[b])));
        }
        CHECK(inverses_ok);
        std::uint64_t bad = 0;
        for (std::uint64_t a = 0; a < n_elems && bad == 0; ++a)
            for (std::uint64_t b = 0; b < n_elems && bad == 0; ++b) {
                std::uint64_t ab = mul[a * n_elems + b];
                for (std::uint64_t c = 0; c < n_elems; ++c)
                    if (mul[ab * n_elems + c] != mul[a * n_elems + mul[b * n_elems + c]]) {
                        ++bad;
                        break;
                    }
            }
        CHECK(bad == 0);
    }
}

TEST_CASE("group axioms: pair-times-generator and seeded triples up to 10^4") {
    for (auto [t, n, p, f] : std::vector<std::tuple<char, int, int, int>>{
             {'D', 4, 2, 1}, {'B', 2, 2, 3}, {'G', 2, 2, 2}}) {
        const auto& F = field(p, f);
        UnipotentGroup U(root_system(t, n), F);
        auto elems = U.enumerate(default_guard());
        auto gens = U.root_generators();
        bool ok = true;
        for (const auto& a : elems) ok = ok && U.is_identity(U.multiply(U.inverse(a), a));
        CHECK(ok);
        // (ab)g = a(bg) on a strided pair sweep against every generator
        ok = true;
        std::uint64_t step = 11;
        for (std::uint64_t i = 0; i < elems.size() && ok; i += 3)
            for (std::uint64_t j = i % step; j < elems.size() && ok; j += step)
                for (const auto& g : gens)
                    if (U.multiply(U.multiply(elems[i], elems[j]), g) !=
                        U.multiply(elems[i], U.multiply(elems[j], g))) {
                        ok = false;
                        break;
                    }
        CHECK(ok);
        // seeded random triples
        std::uint64_t state = 0x9e3779b97f4a7c15ull;
        auto next = [&]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        ok = true;
        for (int k = 0; k < 20000 && ok; ++k) {
            const auto& a = elems[next() % elems.size()];
            const auto& b = elems[next() % elems.size()];
            const auto& c = elems[next() % elems.size()];
            ok = U.multiply(U.multiply(a, b), c) == U.multiply(a, U.multiply(b, c));
        }
        CHECK(ok);
    }
}

TEST_CASE("canonical form idempotence") {
    const auto& F = field(3, 1);
    UnipotentGroup U(root_system('G', 2), F);
    for (std::uint64_t r = 0; r < U.order(); r += 17) {
        GroupElem g = U.unrank(r);
        GroupElem prod = U.identity();
        for (int i = 1; i <= 6; ++i)
            if (U.coord(g, i) != 0) prod = U.multiply(prod, U.root_elem(i, U.coord(g, i)));
        CHECK(prod == g);
    }
}

TEST_CASE("quotients: orders, relations, and p-dependent normality") {
    const auto& F2 = field(2, 1);
    const auto& F3 = field(3, 1);
    const auto& g2 = root_system('G', 2);

    SUBCASE("G2 / X5X6 is a B2 group at p=2") {
        UnipotentGroup U(g2, F2);
        UnipotentGroup T(U, {5, 6});
        CHECK(T.order() == 16);
        UnipotentGroup B2(root_system('B', 2), F2);
        // compare collection words pairwise under the index identification
        for (int b = 2; b <= 4; ++b)
            for (int a = 1; a < b; ++a) {
                auto wt = T.pair_word(T.local_index(b), T.local_index(a));
                auto wb = B2.pair_word(B2.local_index(b), B2.local_index(a));
                REQUIRE(wt.size() == wb.size());
                for (size_t k = 0; k < wt.size(); ++k) {
                    CHECK(T.parent_root(wt[k].root) == B2.parent_root(wb[k].root));
                    CHECK((wt[k].cst - wb[k].cst) % 2 == 0);
                    CHECK(wt[k].exp_a == wb[k].exp_a);
                    CHECK(wt[k].exp_b == wb[k].exp_b);
                }
            }
    }
    SUBCASE("X4X6 is normal only at p=3") {
        CHECK_THROWS_AS(UnipotentGroup(UnipotentGroup(g2, F2), std::set<int>{4, 6}),
                        ArgumentError);
        UnipotentGroup T3(UnipotentGroup(g2, F3), std::set<int>{4, 6});
        CHECK(T3.order() == 81);
    }
    SUBCASE("quotient by everything is trivial") {
        UnipotentGroup T(UnipotentGroup(g2, F2), {1, 2, 3, 4, 5, 6});
        CHECK(T.order() == 1);
    }
}

TEST_CASE("centers") {
    const auto& g2 = root_system('G', 2);
    CHECK(UnipotentGroup(g2, field(2, 1)).central_roots() == std::set<int>{6});
    CHECK(UnipotentGroup(g2, field(2, 2)).central_roots() == std::set<int>{6});
    CHECK(UnipotentGroup(g2, field(3, 1)).central_roots() == std::set<int>{4, 6});
    CHECK(UnipotentGroup(g2, field(5, 1)).central_roots() == std::set<int>{6});
    CHECK(UnipotentGroup(root_system('B', 2), field(2, 1)).central_roots() ==
          std::set<int>{3, 4});
    CHECK(UnipotentGroup(root_system('B', 2), field(3, 1)).central_roots() ==
          std::set<int>{4});
    // U(G2)/X6 at p=2 has center X5
    UnipotentGroup T2(UnipotentGroup(g2, field(2, 1)), {6});
    CHECK(T2.central_roots() == std::set<int>{5});

    // brute cross-check on U(G2(3)): the central-root subgroup is the center
    UnipotentGroup U(g2, field(3, 1));
    auto elems = U.enumerate(default_guard());
    int central_count = 0;
    for (const auto& g : elems) {
        bool central = true;
        for (const auto& h : U.root_generators())
            if (U.multiply(g, h) != U.multiply(h, g)) { central = false; break; }
        if (central) ++central_count;
    }
    CHECK(central_count == 9); // q^2 = |X4 X6|
}

TEST_CASE("pattern subgroups, closure, membership") {
    const auto& F = field(2, 1);
    UnipotentGroup U(root_system('G', 2), F);
    auto K = CoordSubgroup::pattern(U, {2, 3, 4, 5, 6});
    CHECK(K.order_u64() == 32);
    CHECK(K.index_u64() == 2);
    for (const auto& g : K.enumerate(1000)) CHECK(K.member(g));
    CHECK_FALSE(K.member(U.root_elem(1, 1)));

    // At p=2 the simple-root elements generate only an index-4 subgroup:
    // the collection constants 2 and 3 degenerate and lock the x3 and x4
    // coordinates together, so the Frattini quotient needs a third generator.
    auto closure = generate_closure(U, {U.root_elem(1, 1), U.root_elem(2, 1)}, 1000);
    CHECK(closure.size() == 16);
    auto closure3 =
        generate_closure(U, {U.root_elem(1, 1), U.root_elem(2, 1), U.root_elem(3, 1)}, 1000);
    CHECK(closure3.size() == 64);

    // a normal pattern gives a normal subgroup
    auto N = CoordSubgroup::pattern(U, {5, 6});
    for (const auto& n : N.enumerate(1000))
        for (const auto& g : U.root_generators())
            CHECK(N.member(U.conjugate(n, g)));
}

TEST_CASE("diagonal legs: membership and enumeration") {
    const auto& F = field(2, 2);
    UnipotentGroup U(root_system('D', 4), F);
    // X' = { x1(t) x2(t) x4(t) } plus X11, X12
    CoordSubgroup K(U, {Leg::formula({{1, 1, 1}, {2, 1, 1}, {4, 1, 1}}, true),
                        Leg::full_root(11), Leg::full_root(12)});
    CHECK(K.order_u64() == 64);
    auto elems = K.enumerate(1000);
    CHECK(elems.size() == 64);
    for (const auto& g : elems) CHECK(K.member(g));
    CHECK_FALSE(K.member(U.root_elem(1, 1)));
    GroupElem diag = U.multiply(U.multiply(U.root_elem(1, 3), U.root_elem(2, 3)),
                                U.root_elem(4, 3));
    CHECK(K.member(diag));
}

TEST_CASE("transversal sizes") {
    const auto& F = field(2, 1);
    UnipotentGroup U(root_system('B', 2), F);
    auto K = CoordSubgroup::pattern(U, {2, 3, 4});
    auto T = transversal(U, K, default_guard());
    CHECK(T.size() == 2);
    // each coset is hit exactly once
    std::vector<char> seen(U.order(), 0);
    auto kelems = K.enumerate(1000);
    for (const auto& x : T)
        for (const auto& k : kelems) {
            auto r = U.rank_of(U.multiply(x, k));
            CHECK(!seen[r]);
            seen[r] = 1;
        }
}

TEST_CASE("conjugacy class counts (the character-count oracle)") {
    CHECK(UnipotentGroup(root_system('B', 2), field(2, 1)).conjugacy_class_count(default_guard()) == 10);
    CHECK(UnipotentGroup(root_system('G', 2), field(2, 1)).conjugacy_class_count(default_guard()) == 16);
    CHECK(UnipotentGroup(root_system('G', 2), field(3, 1)).conjugacy_class_count(default_guard()) == 73);
}

TEST_CASE("element printing") {
    const auto& F = field(2, 1);
    UnipotentGroup U(root_system('B', 2), F);
    auto g = U.multiply(U.root_elem(3, 1), U.root_elem(4, 1));
    CHECK(U.elem_str(g) == "x_3(1)*x_4(1)");
    CHECK(U.elem_str(U.identity()) == "1");
}

TEST_CASE("structure constants stay in the advertised range") {
    for (auto [t, n] : std::vector<std::pair<char, int>>{
             {'B', 3}, {'C', 3}, {'D', 4}, {'D', 5}, {'F', 4}, {'E', 6}}) {
        const auto& rs = root_system(t, n);
        const auto& lc = lie_constants(rs);
        bool simply_laced = (t == 'D' || t == 'E' || t == 'A');
        for (int b = 2; b <= rs.num_roots(); ++b)
            for (int a = 1; a < b; ++a)
                for (const auto& term : lc.swap_word(b, a)) {
                    int c = term.cst < 0 ? -term.cst : term.cst;
                    CHECK(c >= 1);
                    CHECK(c <= (simply_laced ? 1 : 2));
                }
    }
}
