#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chevunip/characters.hpp"
#include "chevunip/families.hpp"

using namespace chevunip;

namespace {

Character induced(const UnipotentGroup& G, std::vector<Leg> legs,
                  const std::map<int, Fq>& coeffs, DegreeExpr de, std::string label) {
    LinearForm form;
    form.G = &G;
    form.K = CoordSubgroup(G, std::move(legs));
    form.leg_coeff.assign(form.K.legs().size(), 0);
    for (auto [r, c] : coeffs) form.set_coeff(r, c);
    REQUIRE(form.is_multiplicative());
    return Character::induced(std::move(form), de, std::move(label), "test");
}

} // namespace

TEST_CASE("linear character of the B2 center") {
    const auto& U = ugroup('B', 2, 2, 2); // q = 4
    const auto& F = U.F();
    Fq a3 = 2, a4 = 3;
    LinearForm lam;
    lam.G = &U;
    lam.K = CoordSubgroup::pattern(U, {3, 4});
    lam.leg_coeff.assign(2, 0);
    lam.set_coeff(3, a3);
    lam.set_coeff(4, a4);
    CHECK(lam.is_multiplicative());
    for (int t = 0; t < 4; ++t)
        for (int u = 0; u < 4; ++u) {
            GroupElem z = U.multiply(U.root_elem(3, static_cast<Fq>(t)),
                                     U.root_elem(4, static_cast<Fq>(u)));
            int expect = F.trace(F.add(F.mul(a3, static_cast<Fq>(t)), F.mul(a4, static_cast<Fq>(u))));
            CHECK(lam.exponent(z) == expect);
        }
    LinearForm triv;
    triv.G = &U;
    triv.K = CoordSubgroup::pattern(U, {3, 4});
    triv.leg_coeff.assign(2, 0);
    for (int t = 0; t < 4; ++t) CHECK(triv.exponent(U.root_elem(3, static_cast<Fq>(t))) == 0);
}

TEST_CASE("order-2 factor with d=1 takes value -1 on the nonidentity element") {
    const auto& U = ugroup('B', 2, 2, 2);
    const auto& F = U.F();
    Fq a3 = 1, a4 = 2;
    Fq w = F.div(a4, F.mul(a3, a3)); // X' = {1, x1(a4/a3^2)}
    LinearForm mu;
    mu.G = &U;
    mu.K = CoordSubgroup(U, {Leg::line(1, w)});
    mu.leg_coeff = {solve_dual(F, {{1, 1}})};
    CHECK(mu.value(U.identity()) == Cyclo(2, 1));
    CHECK(mu.value(U.root_elem(1, w)) == Cyclo(2, -1));
}

TEST_CASE("induction basics") {
    const auto& U = ugroup('B', 2, 2, 1);
    auto triv = induced(U, {Leg::full_root(1), Leg::full_root(2), Leg::full_root(3),
                            Leg::full_root(4)},
                        {}, {0, 0}, "triv");
    CHECK(triv.degree() == Rat(1));
    for (const auto& v : triv.table()) CHECK(v == Cyclo(2, 1));
    CHECK(triv.norm() == Rat(1));
    CHECK(triv.mackey_norm() == Rat(1));

    auto cat = b2_catalog();
    for (const auto& fam : cat.families)
        if (fam.id == "B2.p2.qhalf") {
            auto chars = fam.instantiate(2);
            CHECK(chars.size() == 36);
            for (const auto& c : chars) CHECK(c.degree() == Rat(2)); // q/2 at q=4
        }
    auto g2 = g2_catalog(2);
    for (const auto& fam : g2.families)
        if (fam.id == "G2.p2.F1") {
            auto chars = fam.instantiate(1);
            for (const auto& c : chars) CHECK(c.degree() == Rat(4)); // q^2 at q=2
        }
}

TEST_CASE("inner products are exact and detect orthogonality") {
    auto cat = b2_catalog();
    std::vector<Character> qhalf;
    for (const auto& fam : cat.families)
        if (fam.id == "B2.p2.qhalf") qhalf = fam.instantiate(2);
    CHECK(inner_product(qhalf[0], qhalf[0]) == Rat(1));
    const Character* other = nullptr;
    for (const auto& c : qhalf)
        if (c.label().substr(0, 9) != qhalf[0].label().substr(0, 9)) {
            other = &c;
            break;
        }
    REQUIRE(other);
    CHECK(inner_product(qhalf[0], *other) == Rat(0));
}

TEST_CASE("mackey norm agrees with the direct inner product") {
    auto cat = b2_catalog();
    for (const auto& fam : cat.families)
        if (fam.id == "B2.p2.qhalf")
            for (int f : {1, 2}) {
                auto chars = fam.instantiate(f);
                for (size_t i = 0; i < chars.size(); i += 5)
                    CHECK(chars[i].mackey_norm() == chars[i].norm());
            }
    auto g2 = g2_catalog(3);
    for (const auto& fam : g2.families)
        if (fam.id == "G2.p3.F4") {
            auto chars = fam.instantiate(1);
            CHECK(chars.size() == 18);
            for (size_t i = 0; i < chars.size(); i += 4) {
                CHECK(chars[i].mackey_norm() == Rat(1));
                CHECK(chars[i].norm() == Rat(1));
            }
        }
}

TEST_CASE("central root support") {
    const auto& U5 = ugroup('G', 2, 5, 1);
    auto triv = induced(U5,
                        {Leg::full_root(1), Leg::full_root(2), Leg::full_root(3),
                         Leg::full_root(4), Leg::full_root(5), Leg::full_root(6)},
                        {}, {0, 0}, "triv");
    CHECK(central_root_support(triv).empty());

    auto cat = g2_catalog(5);
    for (const auto& fam : cat.families) {
        if (fam.id == "G2.p5.F1") {
            auto chars = fam.instantiate(1);
            CHECK(central_root_support(chars[0]) == std::set<int>{6});
        }
        if (fam.id == "G2.p5.F2c") {
            auto chars = fam.instantiate(1);
            CHECK(central_root_support(chars[0]) == std::set<int>{3});
        }
    }
}

TEST_CASE("Frobenius reciprocity spot check") {
    const auto& U = ugroup('B', 2, 2, 1);
    LinearForm lam;
    lam.G = &U;
    lam.K = CoordSubgroup::pattern(U, {2, 3, 4});
    lam.leg_coeff.assign(3, 0);
    lam.set_coeff(3, 1);
    auto ind = Character::induced(lam, {1, 0}, "ind", "test");
    auto cat = b2_catalog();
    for (const auto& fam : cat.families)
        for (const auto& chi : fam.instantiate(1)) {
            Rat lhs = inner_product(ind, chi);
            Cyclo acc(2);
            auto params = lam.K.enumerate_params(1000);
            for (const auto& p : params) {
                GroupElem k = lam.K.element(p);
                acc += Cyclo::zeta_power(2, lam.exponent_params(p)) * chi.value(k).conj();
            }
            REQUIRE(acc.is_rational());
            CHECK(lhs == Rat(acc.rational_part(), 8));
        }
}

TEST_CASE("tables are conjugation invariant") {
    auto cat = g2_catalog(3);
    const auto& U = ugroup('G', 2, 3, 1);
    std::uint64_t state = 12345;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (const auto& fam : cat.families) {
        auto chars = fam.instantiate(1);
        const auto& chi = chars[0];
        for (int k = 0; k < 50; ++k) {
            GroupElem g = U.unrank(next() % U.order());
            GroupElem h = U.unrank(next() % U.order());
            CHECK(chi.value(U.conjugate(g, h)) == chi.value(g));
        }
    }
}

TEST_CASE("inflation through a quotient preserves values and degree") {
    const auto& U = ugroup('G', 2, 2, 1);
    const auto& T = ugroup_quotient('G', 2, 2, 1, {5, 6});
    auto chi_t = induced(T, {Leg::full_root(2), Leg::full_root(3), Leg::full_root(4)},
                         {{3, 1}}, {1, 0}, "a3");
    auto chi_u = inflate_from_quotient(U, chi_t);
    CHECK(chi_u.degree() == chi_t.degree());
    for (std::uint64_t r = 0; r < U.order(); ++r) {
        GroupElem g = U.unrank(r);
        GroupElem img = T.identity();
        for (int root : T.live_roots())
            img[static_cast<size_t>(T.local_index(root))] = U.coord(g, root);
        CHECK(chi_u.value(g) == chi_t.value(img));
    }
    auto triv_t = induced(T, {Leg::full_root(1), Leg::full_root(2), Leg::full_root(3),
                              Leg::full_root(4)},
                          {}, {0, 0}, "triv");
    auto triv_u = inflate_from_quotient(U, triv_t);
    for (const auto& v : triv_u.table()) CHECK(v == Cyclo(2, 1));
}

TEST_CASE("character json export") {
    auto cat = b2_catalog();
    for (const auto& fam : cat.families)
        if (fam.id == "B2.p2.qhalf") {
            auto chars = fam.instantiate(1);
            auto js = chars[0].json();
            CHECK(js.find("\"carrier\":\"B2\"") != std::string::npos);
            CHECK(js.find("\"p_denominator\":1") != std::string::npos);
            CHECK(js.find("\"q_exp\":1") != std::string::npos);
            auto jv = chars[0].json(true);
            CHECK(jv.find("\"values\"") != std::string::npos);
        }
}
