#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chevunip {

// Field element: index into the field's tables. Index n encodes the
// polynomial-basis vector (c_0,...,c_{f-1}) with n = sum c_i p^i, so 0 is
// the zero element and 1 the one element for every field.
using Fq = std::uint16_t;

struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// F_{p^f} with all unary/binary operations tabulated. Moduli are Conway
// polynomials (embedded below for the p, f this project touches), so the
// presentation is reproducible bit-for-bit across runs and machines.
class FqField {
public:
    FqField(int p, int f);

    int p() const { return p_; }
    int f() const { return f_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; } // length f+1, monic

    Fq zero() const { return 0; }
    Fq one() const { return 1; }
    // Embeds an integer n (mod p) into the prime subfield.
    Fq from_int(std::int64_t n) const {
        std::int64_t r = n % p_;
        if (r < 0) r += p_;
        return static_cast<Fq>(r);
    }

    Fq add(Fq a, Fq b) const { return add_[a * q_ + b]; }
    Fq sub(Fq a, Fq b) const { return add_[a * q_ + neg_[b]]; }
    Fq mul(Fq a, Fq b) const { return mul_[a * q_ + b]; }
    Fq neg(Fq a) const { return neg_[a]; }
    Fq inv(Fq a) const {
        if (a == 0) throw ArithmeticError("FqField: inversion of zero");
        return inv_[a];
    }
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::int64_t e) const;
    // integer scalar action n*a (repeated addition, n mod p)
    Fq scale(std::int64_t n, Fq a) const { return mul(from_int(n), a); }

    // coefficient c_i of the polynomial-basis expansion
    int coeff(Fq a, int i) const;

    // field trace F_q -> F_p, returned as an integer in [0,p)
    int trace(Fq a) const { return trace_[a]; }
    // exponent of the additive character phi(t) = zeta_p^{Tr(t)}
    int phi_exponent(Fq a) const { return trace_[a]; }

    bool is_square(Fq a) const; // of F_q^x for a != 0; is_square(0) = true
    // canonical square root: among {r,-r} the one with lexicographically
    // smallest coefficient vector (c_0, c_1, ...)
    std::optional<Fq> sqrt(Fq a) const;
    std::vector<Fq> squares() const;       // the subgroup S of F_q^x
    bool is_fourth_power(Fq a) const;
    std::optional<Fq> fourth_root(Fq a) const; // canonical, like sqrt
    std::vector<Fq> fourth_powers() const;

    // multiplicative generator (verifies cyclicity of F_q^x)
    Fq generator() const { return gen_; }

    // a fixed element of trace 1 (exists: trace is onto)
    Fq trace_one_elem() const { return trace_one_; }

    std::string elem_str(Fq a) const; // human-readable polynomial form

private:
    int p_, f_, q_;
    std::vector<int> modulus_;
    std::vector<Fq> add_, mul_, neg_, inv_;
    std::vector<int> trace_;
    Fq gen_, trace_one_;

    Fq pow_tableless(Fq a) const;    // a -> a^p, used while tables build
    bool lex_less(Fq a, Fq b) const; // coefficient-vector lex order
};

// Shared field cache: fields are immutable, so one instance per (p,f).
const FqField& field(int p, int f);

} // namespace chevunip
