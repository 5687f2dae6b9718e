#pragma once

#include <string>
#include <vector>

#include "chevunip/families.hpp"
#include "chevunip/lemma.hpp"

namespace chevunip {

struct CheckResult {
    std::string name;
    std::string level; // symbolic | structural | brute
    bool pass = false;
    std::string witness;
};

struct VerificationReport {
    std::string plan;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, std::string level, bool ok, std::string witness = "") {
        checks.push_back({std::move(name), std::move(level), ok, std::move(witness)});
    }
    std::string json() const;
    std::string text() const;
};

struct Guards {
    std::uint64_t enumeration = default_guard();
    std::uint64_t pair_budget = default_pair_budget();
};

// Sum over the catalog of size(q) * degree(q)^2 = q^{|Phi+|} and, when a
// formula is supplied, sum of sizes = formula; both as exact polynomial
// identities and numerically at q = p^f.
VerificationReport completeness_check(const FamilyCatalog& cat, int f,
                                      const QPoly* count_formula = nullptr);

// Instantiates every family of the catalog at q = p^f and verifies, by
// enumeration: each character has norm 1 (Mackey), the characters are
// pairwise distinct, counts match size polynomials, the total matches the
// conjugacy class count, and the squared degrees sum to |U|.
VerificationReport brute_verify_catalog(const FamilyCatalog& cat, int f,
                                        const Guards& guards = {});

// The same checks for one family (no completeness claims). Distinctness
// needs per-character value tables; callers skip it when the tables exceed
// memory sense and distinctness is inherited (inflations of a verified base).
VerificationReport brute_verify_family(const CharFamily& fam, int f, const Guards& guards = {},
                                       bool check_distinct = true);

int class_count_oracle(const UnipotentGroup& U, std::uint64_t guard = default_guard());

// Requires a complete catalog: every instantiated character whose degree
// equals the family's is a member of the family (degenerate small-q
// collisions are reported and checked for distinctness instead).
VerificationReport uniqueness_check(const FamilyCatalog& cat, const std::string& family_id,
                                    int f, const Guards& guards = {});

// Generator-level audit of a family's construction (delegates to the
// family's own audit and wraps it in a report).
VerificationReport structural_audit(const CharFamily& fam, int f);

// lemma-instance sweep used by the acceptance suite
VerificationReport verify_paper_instances(const std::vector<PaperInstance>& instances,
                                          const Guards& guards = {});

} // namespace chevunip
