#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chevunip/cyclo.hpp"
#include "chevunip/gf.hpp"

#include <set>

using namespace chevunip;

namespace {
// all prime powers q <= 81 with an embedded or prime-field presentation
const std::vector<std::pair<int, int>> kFields = {
    {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 1}, {3, 2}, {3, 3}, {3, 4},
    {5, 1}, {5, 2}, {7, 1}, {7, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1},
    {29, 1}, {31, 1}, {37, 1}, {41, 1}, {43, 1}, {47, 1}, {53, 1}, {59, 1},
    {61, 1}, {67, 1}, {71, 1}, {73, 1}, {79, 1},
};
} // namespace

TEST_CASE("field axioms and Frobenius, exhaustive q <= 81") {
    for (auto [p, f] : kFields) {
        const auto& F = field(p, f);
        int q = F.q();
        for (int a = 0; a < q; ++a) {
            CHECK(F.mul(static_cast<Fq>(a), F.one()) == a);
            CHECK(F.add(static_cast<Fq>(a), F.neg(static_cast<Fq>(a))) == 0);
            if (a != 0) CHECK(F.mul(static_cast<Fq>(a), F.inv(static_cast<Fq>(a))) == 1);
            for (int b = 0; b < q; ++b) {
                Fq fa = static_cast<Fq>(a), fb = static_cast<Fq>(b);
                // (a+b)^p = a^p + b^p
                CHECK(F.pow(F.add(fa, fb), p) == F.add(F.pow(fa, p), F.pow(fb, p)));
            }
        }
    }
}

TEST_CASE("trace is onto and additive-character kernel is {t^p - t}") {
    for (auto [p, f] : kFields) {
        const auto& F = field(p, f);
        int q = F.q();
        std::set<int> traces;
        std::set<Fq> kernel, image;
        for (int a = 0; a < q; ++a) {
            Fq fa = static_cast<Fq>(a);
            traces.insert(F.trace(fa));
            if (F.phi_exponent(fa) == 0) kernel.insert(fa);
            image.insert(F.sub(F.pow(fa, p), fa));
        }
        CHECK(traces.size() == static_cast<size_t>(p));
        CHECK(kernel == image);
        CHECK(kernel.size() == static_cast<size_t>(q / p));
        // linearity
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                CHECK(F.trace(F.add(static_cast<Fq>(a), static_cast<Fq>(b))) ==
                      (F.trace(static_cast<Fq>(a)) + F.trace(static_cast<Fq>(b))) % p);
    }
}

TEST_CASE("squares and canonical square roots") {
    SUBCASE("q=3: S={1}") {
        const auto& F = field(3, 1);
        auto s = F.squares();
        CHECK(s == std::vector<Fq>{1});
        CHECK_FALSE(F.is_square(F.neg(F.one()))); // -1 not a square, q=3 mod 4
    }
    SUBCASE("q=9: |S|=4 and -1 is a square") {
        const auto& F = field(3, 2);
        CHECK(F.squares().size() == 4);
        CHECK(F.is_square(F.neg(F.one())));
        // -a*S has (q-1)/2 elements for each a != 0
        for (int a = 1; a < 9; ++a) {
            std::set<Fq> coset;
            for (Fq s : F.squares()) coset.insert(F.mul(F.neg(static_cast<Fq>(a)), s));
            CHECK(coset.size() == 4);
        }
    }
    SUBCASE("sqrt is canonical and squares back") {
        for (auto [p, f] : {std::pair<int, int>{3, 2}, {5, 1}, {5, 2}, {3, 3}}) {
            const auto& F = field(p, f);
            for (int a = 1; a < F.q(); ++a) {
                auto r = F.sqrt(static_cast<Fq>(a));
                if (!F.is_square(static_cast<Fq>(a))) {
                    CHECK(!r);
                    continue;
                }
                REQUIRE(r);
                CHECK(F.mul(*r, *r) == a);
                CHECK(F.sqrt(static_cast<Fq>(a)) == r); // deterministic
            }
        }
    }
}

TEST_CASE("fourth powers for p=5") {
    SUBCASE("q=5: exactly (q-1)/4 = 1 fourth power") {
        const auto& F = field(5, 1);
        CHECK(F.fourth_powers() == std::vector<Fq>{1});
    }
    SUBCASE("q=25: (q-1)/4 = 6 fourth powers") {
        const auto& F = field(5, 2);
        auto fp = F.fourth_powers();
        CHECK(fp.size() == 6);
        for (Fq a : fp) {
            auto r = F.fourth_root(a);
            REQUIRE(r);
            CHECK(F.pow(*r, 4) == a);
        }
    }
}

TEST_CASE("F4 generator relation x*x = x+1") {
    const auto& F = field(2, 2);
    Fq x = 2; // the residue of the modulus variable
    CHECK(F.mul(x, x) == F.add(x, F.one()));
}

TEST_CASE("F4/F2 trace values") {
    const auto& F = field(2, 2);
    // Tr(t) = t + t^2, so Tr(1) = 0
    CHECK(F.trace(F.one()) == 0);
    int ones = 0;
    for (int a = 0; a < 4; ++a) ones += F.trace(static_cast<Fq>(a));
    CHECK(ones == 2); // two elements of trace 1
}

TEST_CASE("cyclotomic ring basics") {
    SUBCASE("p=3 arithmetic and conjugation") {
        Cyclo z = Cyclo::zeta_power(3, 1);
        Cyclo z2 = Cyclo::zeta_power(3, 2);
        CHECK(z * z == z2);
        CHECK(z * z2 == Cyclo(3, 1));
        CHECK(z.conj() == z2);
        // 1 + z + z^2 = 0
        CHECK((Cyclo(3, 1) + z + z2).is_zero());
    }
    SUBCASE("p=5 norm of a root of unity is 1") {
        for (int k = 0; k < 5; ++k) {
            Cyclo z = Cyclo::zeta_power(5, k);
            CHECK(z.norm_sq() == Cyclo(5, 1));
        }
    }
    SUBCASE("rational detection") {
        CHECK(Cyclo(7, 42).is_rational());
        CHECK(Cyclo(7, 42).rational_part() == 42);
        CHECK_FALSE(Cyclo::zeta_power(7, 3).is_rational());
    }
}
