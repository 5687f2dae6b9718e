#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chevunip/characters.hpp"
#include "chevunip/qpoly.hpp"

namespace chevunip {

struct AuditCheck {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct AuditReport {
    std::string target;
    std::vector<AuditCheck> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, bool ok, std::string witness = "") {
        checks.push_back({std::move(name), ok, std::move(witness)});
    }
    std::string summary() const;
};

// A parametrized family of irreducible characters: label schema, size and
// degree in q, and an executable construction. `carrier_quotient` lists the
// roots quotiented away when the construction lives in U/X_N rather than U
// itself (the large types); characters then inflate along that quotient.
struct CharFamily {
    std::string id;
    char lie_type = 0;
    int rank = 0;
    int p = 0;
    std::string label_schema;
    QPoly size;
    DegreeExpr degree;
    std::string unique_flag; // yes / no / iff n=. / Conjecture 1 / -
    std::string provenance;
    std::set<int> carrier_quotient;
    std::function<std::vector<Character>(int f)> instantiate;
    std::function<AuditReport(int f)> audit;

    std::string json() const;
};

struct FamilyCatalog {
    std::string id;
    char lie_type = 0;
    int rank = 0;
    int p = 0;
    bool complete = false; // completeness identity claimed for this (type, p)
    std::vector<CharFamily> families;

    QPoly size_sum() const;
    // sum of size * degree^2 as a polynomial (exact, with p-denominators)
    QPoly mass_sum() const;
    std::string json() const;
};

FamilyCatalog g2_catalog(int p);
FamilyCatalog b2_catalog();
CharFamily bn_cn_family(char lie_type, int n);
CharFamily d4_family();
CharFamily dn_family(int n);
std::vector<CharFamily> f4_catalog(int p);
std::vector<CharFamily> e_catalog(int k, int p);
// every family of the bad-prime table, one per (type, p) row
std::vector<CharFamily> table1_families();

// the G2 count formulas of the main theorem
QPoly g2_count_formula(int p);

// rendering of the two tables as markdown (columns follow the paper)
std::string table1_markdown();
std::string table2_markdown(int p);

// Affine solver for form coefficients: fixed label coefficients plus unknown
// ones, constrained by prescribed values on elements and by multiplicativity
// on the commutator closure of K's generators. Returns the solution with
// free variables zeroed (deterministic), or nothing with a witness.
struct FormSolver {
    const UnipotentGroup* G = nullptr;
    std::vector<Leg> legs;
    std::map<int, Fq> fixed;  // parent root -> coefficient
    std::set<int> unknowns;   // parent roots with coefficients to solve
    std::vector<std::pair<GroupElem, int>> constraints; // exponent(elem) == target

    std::optional<LinearForm> solve(std::string* why = nullptr) const;
};

// Tr(c * w_k) = t_k for all k; unique or lexicographically-least solution
Fq solve_dual(const FqField& F, const std::vector<std::pair<Fq, int>>& constraints);
// greedy F_p-complement of a span inside F_q, in field-basis order
std::vector<Fq> complement_basis(const FqField& F, const std::vector<Fq>& span_gens);

} // namespace chevunip
