#pragma once

#include <memory>
#include <string>
#include <vector>

#include "chevunip/chevalley.hpp"
#include "chevunip/cyclo.hpp"
#include "chevunip/qpoly.hpp"

namespace chevunip {

// Shared immutable group instances (full groups and quotients by a pattern).
const UnipotentGroup& ugroup(char lie_type, int rank, int p, int f);
const UnipotentGroup& ugroup_quotient(char lie_type, int rank, int p, int f,
                                      const std::set<int>& normal_roots);

// Linear character of a coordinate subgroup K, linear in the leg parameters:
// g = prod_l leg_l(t_l) maps to zeta_p^{ sum_l Tr(c_l t_l) }. Any character
// of K restricts to a character of each one-parameter leg, so every linear
// character of K has this shape; whether a given coefficient vector is
// multiplicative is a property the construction sites check or solve for.
struct LinearForm {
    const UnipotentGroup* G = nullptr;
    CoordSubgroup K;
    std::vector<Fq> leg_coeff; // one per leg, in K's leg order

    // coefficient of the leg whose least root is `root` (for constructions)
    void set_coeff(int root, Fq c);
    Fq coeff_at(int root) const;

    int exponent_params(const std::vector<Fq>& params) const;
    // peels g into leg parameters; g must lie in K
    int exponent(const GroupElem& g) const;
    Cyclo value(const GroupElem& g) const;

    bool is_multiplicative(std::string* witness = nullptr) const;
};

// A character of U built as Ind_K^G of a linear form (all constructions in
// this project have that shape).
class Character {
public:
    Character() = default;
    static Character induced(LinearForm psi, DegreeExpr degree_expr, std::string label,
                             std::string family_id);

    const UnipotentGroup& group() const { return *psi_.G; }
    const LinearForm& form() const { return psi_; }
    const std::string& label() const { return label_; }
    const std::string& family_id() const { return family_id_; }
    DegreeExpr degree_expr() const { return degree_expr_; }

    Rat degree() const; // [G:K]

    const std::vector<Cyclo>& table(std::uint64_t guard = default_guard()) const;
    Cyclo value(const GroupElem& g) const; // via table

    Rat norm(std::uint64_t guard = default_guard()) const;
    Rat mackey_norm(std::uint64_t guard = default_guard()) const;

    bool restricts_as(const CoordSubgroup& Z, const LinearForm& lambda) const;

    std::string json(bool with_values = false) const;

private:
    LinearForm psi_;
    DegreeExpr degree_expr_;
    std::string label_, family_id_;
    mutable std::shared_ptr<std::vector<Cyclo>> table_;
};

Rat inner_product(const Character& a, const Character& b,
                  std::uint64_t guard = default_guard());
bool is_irreducible(const Character& chi, std::uint64_t guard = default_guard());
Rat mackey_norm_of_form(const LinearForm& lambda, std::uint64_t guard = default_guard());

std::set<int> central_root_support(const Character& chi);

Character inflate_from_quotient(const UnipotentGroup& parent, const Character& chi_on_quotient);

} // namespace chevunip
