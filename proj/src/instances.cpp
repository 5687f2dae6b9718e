// The paper's enumerable Lemma 2.1 instances, with the characters the family
// recipes build over each instance's central character.
#include <sstream>

#include "chevunip/families.hpp"
#include "chevunip/lemma.hpp"

namespace chevunip {

namespace {

std::vector<Fq> units(const FqField& F) {
    std::vector<Fq> out;
    for (int a = 1; a < F.q(); ++a) out.push_back(static_cast<Fq>(a));
    return out;
}

LinearForm form_on(const UnipotentGroup& G, const CoordSubgroup& K,
                   const std::map<int, Fq>& coeffs) {
    LinearForm form;
    form.G = &G;
    form.K = K;
    form.leg_coeff.assign(K.legs().size(), 0);
    for (auto [r, c] : coeffs) form.set_coeff(r, c);
    return form;
}

Character induced(const UnipotentGroup& G, std::vector<Leg> legs,
                  const std::map<int, Fq>& coeffs, DegreeExpr de, std::string label,
                  std::string fam) {
    LinearForm form;
    form.G = &G;
    form.K = CoordSubgroup(G, std::move(legs));
    form.leg_coeff.assign(form.K.legs().size(), 0);
    for (auto [r, c] : coeffs) form.set_coeff(r, c);
    std::string why;
    if (!form.is_multiplicative(&why)) throw ConstructionError(fam + ": " + why);
    return Character::induced(std::move(form), de, std::move(label), std::move(fam));
}

GroupElem word_elem(const UnipotentGroup& G,
                    const std::vector<std::pair<int, Fq>>& letters) {
    GroupElem g = G.identity();
    for (auto [r, t] : letters) g = G.multiply(g, G.root_elem(r, t));
    return g;
}

std::vector<Leg> full_legs(std::initializer_list<int> roots) {
    std::vector<Leg> legs;
    for (int r : roots) legs.push_back(Leg::full_root(r));
    return legs;
}

std::vector<Character> b2_shape_qhalf(const UnipotentGroup& G, Fq a3, Fq a4,
                                      const std::string& fam) {
    // the four q/2 characters over lambda^{a3,a4} on any B2-presented group
    // with roots named 1..4
    const auto& F = G.F();
    Fq w1 = F.div(a4, F.mul(a3, a3));
    Fq v = F.div(a3, a4);
    auto ytilde = complement_basis(F, {v});
    std::vector<Character> out;
    for (int d1 = 0; d1 < 2; ++d1)
        for (int d2 = 0; d2 < 2; ++d2) {
            Fq c1 = solve_dual(F, {{1, d1}});
            std::vector<std::pair<Fq, int>> cons;
            for (Fq y : ytilde) cons.push_back({y, 0});
            cons.push_back({v, d2});
            Fq c2 = solve_dual(F, cons);
            std::ostringstream label;
            label << "a3=" << a3 << ",a4=" << a4 << ",d1=" << d1 << ",d2=" << d2;
            out.push_back(induced(G,
                                  {Leg::line(1, w1), Leg::full_root(2), Leg::full_root(3),
                                   Leg::full_root(4)},
                                  {{1, c1}, {2, c2}, {3, a3}, {4, a4}}, DegreeExpr{1, 1},
                                  label.str(), fam));
        }
    return out;
}

} // namespace

std::vector<PaperInstance> paper_instances_b2(int f) {
    const auto& U = ugroup('B', 2, 2, f);
    std::vector<PaperInstance> out;
    for (Fq a3 : units(U.F()))
        for (Fq a4 : units(U.F())) {
            PaperInstance pi;
            pi.instance.name = "B2 q=2^" + std::to_string(f) + " lambda(a3=" +
                               std::to_string(a3) + ",a4=" + std::to_string(a4) + ")";
            pi.instance.G = &U;
            pi.instance.Z = CoordSubgroup::pattern(U, {3, 4});
            pi.instance.X = CoordSubgroup::pattern(U, {1});
            pi.instance.Y = CoordSubgroup::pattern(U, {2});
            pi.instance.H = CoordSubgroup::pattern(U, {2, 3, 4});
            pi.instance.lambda = form_on(U, pi.instance.Z, {{3, a3}, {4, a4}});
            pi.built = b2_shape_qhalf(U, a3, a4, "B2.p2.qhalf");
            out.push_back(std::move(pi));
        }
    return out;
}

namespace {

std::vector<PaperInstance> g2_p2_instances(int f) {
    std::vector<PaperInstance> out;
    const auto& U = ugroup('G', 2, 2, f);
    const auto& F = U.F();
    // T1: Z = X6, X = X1 X3, Y = X4 X5, H = X2 Y Z
    for (Fq a6 : units(F)) {
        PaperInstance pi;
        pi.instance.name = "G2 p=2 T1 lambda(a6=" + std::to_string(a6) + ")";
        pi.instance.G = &U;
        pi.instance.Z = CoordSubgroup::pattern(U, {6});
        pi.instance.X = CoordSubgroup::pattern(U, {1, 3});
        pi.instance.Y = CoordSubgroup::pattern(U, {4, 5});
        pi.instance.H = CoordSubgroup::pattern(U, {2, 4, 5, 6});
        pi.instance.lambda = form_on(U, pi.instance.Z, {{6, a6}});
        for (int b2 = 0; b2 < F.q(); ++b2) {
            std::ostringstream label;
            label << "a6=" << a6 << ",b2=" << b2;
            pi.built.push_back(induced(U, full_legs({2, 4, 5, 6}),
                                       {{2, static_cast<Fq>(b2)}, {6, a6}}, DegreeExpr{2, 0},
                                       label.str(), "G2.p2.F1"));
        }
        out.push_back(std::move(pi));
    }
    // T2: G = U/X6, Z = X5, X = X2, Y = X4, H = X1 X3 X4 X5
    const auto& T2 = ugroup_quotient('G', 2, 2, f, {6});
    for (Fq a5 : units(F)) {
        PaperInstance pi;
        pi.instance.name = "G2 p=2 T2 lambda(a5=" + std::to_string(a5) + ")";
        pi.instance.G = &T2;
        pi.instance.Z = CoordSubgroup::pattern(T2, {5});
        pi.instance.X = CoordSubgroup::pattern(T2, {2});
        pi.instance.Y = CoordSubgroup::pattern(T2, {4});
        pi.instance.H = CoordSubgroup::pattern(T2, {1, 3, 4, 5});
        pi.instance.lambda = form_on(T2, pi.instance.Z, {{5, a5}});
        for (int b1 = 0; b1 < F.q(); ++b1)
            for (int b3 = 0; b3 < F.q(); ++b3) {
                std::ostringstream label;
                label << "a5=" << a5 << ",b1=" << b1 << ",b3=" << b3;
                pi.built.push_back(induced(T2, full_legs({1, 3, 4, 5}),
                                           {{1, static_cast<Fq>(b1)},
                                            {3, static_cast<Fq>(b3)},
                                            {5, a5}},
                                           DegreeExpr{1, 0}, label.str(), "G2.p2.F2"));
            }
        out.push_back(std::move(pi));
    }
    // T3: G = U/X5X6 (a B2 group), the B2 instance
    const auto& T3 = ugroup_quotient('G', 2, 2, f, {5, 6});
    for (Fq a3 : units(F))
        for (Fq a4 : units(F)) {
            PaperInstance pi;
            pi.instance.name = "G2 p=2 T3 lambda(a3=" + std::to_string(a3) +
                               ",a4=" + std::to_string(a4) + ")";
            pi.instance.G = &T3;
            pi.instance.Z = CoordSubgroup::pattern(T3, {3, 4});
            pi.instance.X = CoordSubgroup::pattern(T3, {1});
            pi.instance.Y = CoordSubgroup::pattern(T3, {2});
            pi.instance.H = CoordSubgroup::pattern(T3, {2, 3, 4});
            pi.instance.lambda = form_on(T3, pi.instance.Z, {{3, a3}, {4, a4}});
            pi.built = b2_shape_qhalf(T3, a3, a4, "G2.p2.F4(T3)");
            out.push_back(std::move(pi));
        }
    return out;
}

std::vector<PaperInstance> g2_p3_instances(int f) {
    std::vector<PaperInstance> out;
    const auto& U = ugroup('G', 2, 3, f);
    const auto& F = U.F();
    // T1: Z = X4 X6 = Z(U), X = X2, Y = X3, H = X1 X3 X4 X5 X6; a4, a6 nonzero
    for (Fq a4 : units(F))
        for (Fq a6 : units(F)) {
            PaperInstance pi;
            pi.instance.name = "G2 p=3 T1 lambda(a4=" + std::to_string(a4) +
                               ",a6=" + std::to_string(a6) + ")";
            pi.instance.G = &U;
            pi.instance.Z = CoordSubgroup::pattern(U, {4, 6});
            pi.instance.X = CoordSubgroup::pattern(U, {2});
            pi.instance.Y = CoordSubgroup::pattern(U, {3});
            pi.instance.H = CoordSubgroup::pattern(U, {1, 3, 4, 5, 6});
            pi.instance.lambda = form_on(U, pi.instance.Z, {{4, a4}, {6, a6}});
            std::ostringstream label;
            label << "a4=" << a4 << ",a6=" << a6;
            pi.built.push_back(induced(U, full_legs({1, 3, 4, 6}), {{4, a4}, {6, a6}},
                                       DegreeExpr{2, 0}, label.str(), "G2.p3.F1"));
            out.push_back(std::move(pi));
        }
    // T2: G = U/X6, Z = X4, X = X2, Y = X3, H = X1 X3 X4 X5
    const auto& T2 = ugroup_quotient('G', 2, 3, f, {6});
    for (Fq a4 : units(F)) {
        PaperInstance pi;
        pi.instance.name = "G2 p=3 T2 lambda(a4=" + std::to_string(a4) + ")";
        pi.instance.G = &T2;
        pi.instance.Z = CoordSubgroup::pattern(T2, {4});
        pi.instance.X = CoordSubgroup::pattern(T2, {2});
        pi.instance.Y = CoordSubgroup::pattern(T2, {3});
        pi.instance.H = CoordSubgroup::pattern(T2, {1, 3, 4, 5});
        pi.instance.lambda = form_on(T2, pi.instance.Z, {{4, a4}});
        for (int b1 = 0; b1 < F.q(); ++b1)
            for (int b5 = 0; b5 < F.q(); ++b5) {
                std::ostringstream label;
                label << "a4=" << a4 << ",b1=" << b1 << ",b5=" << b5;
                pi.built.push_back(induced(T2, full_legs({1, 3, 4, 5}),
                                           {{1, static_cast<Fq>(b1)},
                                            {4, a4},
                                            {5, static_cast<Fq>(b5)}},
                                           DegreeExpr{1, 0}, label.str(), "G2.p3.F3"));
            }
        out.push_back(std::move(pi));
    }
    // T3: G = U/X4X6, Z = X3 X5, X = X1, Y = X2, H = X2 X3 X5; both branches
    const auto& T3 = ugroup_quotient('G', 2, 3, f, {4, 6});
    for (Fq a3 : units(F))
        for (Fq a5 : units(F)) {
            PaperInstance pi;
            bool square_branch = F.is_square(F.div(F.neg(a3), a5));
            pi.instance.name = std::string("G2 p=3 T3 ") +
                               (square_branch ? "square" : "nonsquare") + " lambda(a3=" +
                               std::to_string(a3) + ",a5=" + std::to_string(a5) + ")";
            pi.instance.G = &T3;
            pi.instance.Z = CoordSubgroup::pattern(T3, {3, 5});
            pi.instance.X = CoordSubgroup::pattern(T3, {1});
            pi.instance.Y = CoordSubgroup::pattern(T3, {2});
            pi.instance.H = CoordSubgroup::pattern(T3, {2, 3, 5});
            pi.instance.lambda = form_on(T3, pi.instance.Z, {{3, a3}, {5, a5}});
            if (square_branch) {
                Fq w = *F.sqrt(F.div(F.neg(a5), F.pow(a3, 3)));
                Fq omega = *F.sqrt(F.div(F.neg(a3), a5));
                auto ytilde = complement_basis(F, {omega});
                for (int e1 = 0; e1 < 3; ++e1)
                    for (int e2 = 0; e2 < 3; ++e2) {
                        Fq c1 = solve_dual(F, {{1, e1}});
                        std::vector<std::pair<Fq, int>> cons;
                        for (Fq y : ytilde) cons.push_back({y, 0});
                        cons.push_back({omega, e2});
                        Fq c2 = solve_dual(F, cons);
                        std::ostringstream label;
                        label << "a3*=" << a3 << ",a5=" << a5 << ",e1=" << e1 << ",e2=" << e2;
                        pi.built.push_back(
                            induced(T3,
                                    {Leg::line(1, w), Leg::full_root(2), Leg::full_root(3),
                                     Leg::full_root(5)},
                                    {{1, c1}, {2, c2}, {3, a3}, {5, a5}}, DegreeExpr{1, 1},
                                    label.str(), "G2.p3.F4(T3)"));
                    }
            } else {
                std::ostringstream label;
                label << "a3'=" << a3 << ",a5=" << a5;
                pi.built.push_back(induced(T3, full_legs({2, 3, 5}), {{3, a3}, {5, a5}},
                                           DegreeExpr{1, 0}, label.str(), "G2.p3.F5(T3)"));
            }
            out.push_back(std::move(pi));
        }
    return out;
}

std::vector<PaperInstance> g2_p5_instances(int p, int f) {
    std::vector<PaperInstance> out;
    const auto& U = ugroup('G', 2, p, f);
    const auto& F = U.F();
    Fq a = units(F).back();
    {
        // T1
        PaperInstance pi;
        pi.instance.name = "G2 p>=5 T1";
        pi.instance.G = &U;
        pi.instance.Z = CoordSubgroup::pattern(U, {6});
        pi.instance.X = CoordSubgroup::pattern(U, {1, 3});
        pi.instance.Y = CoordSubgroup::pattern(U, {4, 5});
        pi.instance.H = CoordSubgroup::pattern(U, {2, 4, 5, 6});
        pi.instance.lambda = form_on(U, pi.instance.Z, {{6, a}});
        for (int b2 = 0; b2 < F.q(); ++b2)
            pi.built.push_back(induced(U, full_legs({2, 4, 5, 6}),
                                       {{2, static_cast<Fq>(b2)}, {6, a}}, DegreeExpr{2, 0},
                                       "a6=" + std::to_string(a) + ",b2=" + std::to_string(b2),
                                       "G2.p5.F1"));
        out.push_back(std::move(pi));
    }
    {
        // T2: U/X6
        const auto& T2 = ugroup_quotient('G', 2, p, f, {6});
        PaperInstance pi;
        pi.instance.name = "G2 p>=5 T2";
        pi.instance.G = &T2;
        pi.instance.Z = CoordSubgroup::pattern(T2, {5});
        pi.instance.X = CoordSubgroup::pattern(T2, {2});
        pi.instance.Y = CoordSubgroup::pattern(T2, {4});
        pi.instance.H = CoordSubgroup::pattern(T2, {1, 3, 4, 5});
        pi.instance.lambda = form_on(T2, pi.instance.Z, {{5, a}});
        for (int b1 = 0; b1 < F.q(); ++b1)
            for (int b3 = 0; b3 < F.q(); ++b3)
                pi.built.push_back(induced(T2, full_legs({1, 3, 4, 5}),
                                           {{1, static_cast<Fq>(b1)},
                                            {3, static_cast<Fq>(b3)},
                                            {5, a}},
                                           DegreeExpr{1, 0},
                                           "a5=" + std::to_string(a) + ",b1=" +
                                               std::to_string(b1) + ",b3=" + std::to_string(b3),
                                           "G2.p5.F2a"));
        out.push_back(std::move(pi));
    }
    {
        // T3: U/X5X6
        const auto& T3 = ugroup_quotient('G', 2, p, f, {5, 6});
        PaperInstance pi;
        pi.instance.name = "G2 p>=5 T3";
        pi.instance.G = &T3;
        pi.instance.Z = CoordSubgroup::pattern(T3, {4});
        pi.instance.X = CoordSubgroup::pattern(T3, {2});
        pi.instance.Y = CoordSubgroup::pattern(T3, {3});
        pi.instance.H = CoordSubgroup::pattern(T3, {1, 3, 4});
        pi.instance.lambda = form_on(T3, pi.instance.Z, {{4, a}});
        for (int b1 = 0; b1 < F.q(); ++b1)
            pi.built.push_back(induced(T3, full_legs({1, 3, 4}),
                                       {{1, static_cast<Fq>(b1)}, {4, a}}, DegreeExpr{1, 0},
                                       "a4=" + std::to_string(a) + ",b1=" + std::to_string(b1),
                                       "G2.p5.F2b"));
        out.push_back(std::move(pi));
    }
    {
        // T4: U/X4X5X6
        const auto& T4 = ugroup_quotient('G', 2, p, f, {4, 5, 6});
        PaperInstance pi;
        pi.instance.name = "G2 p>=5 T4";
        pi.instance.G = &T4;
        pi.instance.Z = CoordSubgroup::pattern(T4, {3});
        pi.instance.X = CoordSubgroup::pattern(T4, {1});
        pi.instance.Y = CoordSubgroup::pattern(T4, {2});
        pi.instance.H = CoordSubgroup::pattern(T4, {2, 3});
        pi.instance.lambda = form_on(T4, pi.instance.Z, {{3, a}});
        pi.built.push_back(induced(T4, full_legs({2, 3}), {{3, a}}, DegreeExpr{1, 0},
                                   "a3=" + std::to_string(a), "G2.p5.F2c"));
        out.push_back(std::move(pi));
    }
    return out;
}

} // namespace

std::vector<PaperInstance> paper_instances_g2(int p, int f) {
    if (p == 2) return g2_p2_instances(f);
    if (p == 3) return g2_p3_instances(f);
    return g2_p5_instances(p, f);
}

std::vector<PaperInstance> paper_instances_d4(int f) {
    // in T = U(D4)/X_{11,12}: Z = X8 X9 X10, X = X1 X2 X4, Y = X5 X6 X7,
    // H = X3 Y Z. Over each lambda the construction yields the four
    // degree-q^3/2 characters plus one Heisenberg character of degree q^3
    // per Y'-central value.
    if (f != 1)
        throw CapacityError("paper_instances_d4: the q^3/2 construction is a q=2 statement");
    std::vector<PaperInstance> out;
    const auto& T = ugroup_quotient('D', 4, 2, f, {11, 12});
    const auto& F = T.F();
    for (Fq a8 : units(F))
        for (Fq a9 : units(F))
            for (Fq a10 : units(F)) {
                PaperInstance pi;
                pi.instance.name = "D4 lambda(a8=" + std::to_string(a8) +
                                   ",a9=" + std::to_string(a9) + ",a10=" + std::to_string(a10) +
                                   ")";
                pi.instance.G = &T;
                pi.instance.Z = CoordSubgroup::pattern(T, {8, 9, 10});
                pi.instance.X = CoordSubgroup::pattern(T, {1, 2, 4});
                pi.instance.Y = CoordSubgroup::pattern(T, {5, 6, 7});
                pi.instance.H = CoordSubgroup::pattern(T, {3, 5, 6, 7, 8, 9, 10});
                pi.instance.lambda = form_on(T, pi.instance.Z, {{8, a8}, {9, a9}, {10, a10}});

                for (Fq a567 : units(F)) {
                    Fq w1 = F.div(a567, F.mul(F.mul(a8, a9), a10));
                    Fq w2 = F.div(F.mul(F.mul(a8, a9), a10), F.mul(a567, a567));
                    for (int d124 = 0; d124 < 2; ++d124)
                        for (int d3 = 0; d3 < 2; ++d3) {
                            FormSolver sol;
                            sol.G = &T;
                            sol.legs = {
                                Leg::formula({{1, a10, 1}, {2, a9, 1}, {4, a8, 1}}, true),
                                Leg::line(3, w2)};
                            for (int r : {5, 6, 7, 8, 9, 10})
                                sol.legs.push_back(Leg::full_root(r));
                            sol.fixed = {{8, a8}, {9, a9}, {10, a10}};
                            sol.unknowns = {1, 3, 5, 6, 7};
                            GroupElem xp = word_elem(
                                T, {{1, F.mul(a10, w1)}, {2, F.mul(a9, w1)}, {4, F.mul(a8, w1)}});
                            sol.constraints.push_back({xp, d124});
                            sol.constraints.push_back({T.root_elem(3, w2), d3});
                            std::string why;
                            auto formv = sol.solve(&why);
                            if (!formv)
                                throw ConstructionError("D4 instance char: " + why);
                            std::ostringstream label;
                            label << "a567=" << a567 << ",d124=" << d124 << ",d3=" << d3;
                            pi.built.push_back(Character::induced(std::move(*formv),
                                                                  DegreeExpr{3, 1}, label.str(),
                                                                  "D4.p2.q3half(T)"));
                        }
                }
                // the remaining constituent of Ind_Z^T lambda: one character
                // of degree q^3 with trivial Y'-restriction, induced from the
                // polarization X' Y Z
                pi.built.push_back(induced(
                    T,
                    {Leg::formula({{1, a10, 1}, {2, a9, 1}, {4, a8, 1}}, true),
                     Leg::full_root(5), Leg::full_root(6), Leg::full_root(7),
                     Leg::full_root(8), Leg::full_root(9), Leg::full_root(10)},
                    {{8, a8}, {9, a9}, {10, a10}}, DegreeExpr{3, 0}, "heis",
                    "D4.heisenberg(T)"));
                out.push_back(std::move(pi));
            }
    return out;
}

} // namespace chevunip
