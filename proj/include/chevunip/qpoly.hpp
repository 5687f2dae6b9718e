#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chevunip/rational.hpp"

namespace chevunip {

// Polynomial in the symbol q with rational coefficients. Family sizes like
// 9(q-1)^2/2 and completeness identities are checked coefficient-wise here.
class QPoly {
public:
    QPoly() {}
    QPoly(Rat c) { if (!c.is_zero()) coeff_ = {c}; }
    QPoly(std::int64_t c) : QPoly(Rat(c)) {}

    static QPoly q_power(int e, Rat c = Rat(1)) {
        QPoly p;
        if (c.is_zero()) return p;
        p.coeff_.assign(static_cast<size_t>(e) + 1, Rat(0));
        p.coeff_[static_cast<size_t>(e)] = c;
        return p;
    }
    static QPoly q() { return q_power(1); }
    // (q - 1)^k
    static QPoly qm1_pow(int k) {
        QPoly r(1), f = q() - QPoly(1);
        for (int i = 0; i < k; ++i) r = r * f;
        return r;
    }

    int degree() const { return static_cast<int>(coeff_.size()) - 1; } // -1 for zero
    Rat coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeff_.size())) return Rat(0);
        return coeff_[static_cast<size_t>(i)];
    }
    bool is_zero() const { return coeff_.empty(); }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        QPoly r;
        size_t n = std::max(a.coeff_.size(), b.coeff_.size());
        r.coeff_.assign(n, Rat(0));
        for (size_t i = 0; i < n; ++i) r.coeff_[i] = a.coeff((int)i) + b.coeff((int)i);
        r.trim();
        return r;
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (b * QPoly(-1)); }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        QPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.coeff_.size(); ++i)
            for (size_t j = 0; j < b.coeff_.size(); ++j)
                r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
        r.trim();
        return r;
    }
    QPoly operator/(Rat d) const {
        QPoly r = *this;
        for (auto& c : r.coeff_) c = c / d;
        return r;
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeff_ == b.coeff_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    Rat eval(std::int64_t q) const {
        Rat acc(0), pw(1);
        for (const auto& c : coeff_) { acc += c * pw; pw *= Rat(q); }
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            Rat c = coeff(i);
            if (c.is_zero()) continue;
            if (!s.empty()) s += " + ";
            if (i == 0) { s += c.str(); continue; }
            std::string m = (i == 1) ? "q" : "q^" + std::to_string(i);
            if (c == Rat(1)) s += m;
            else s += c.str() + "*" + m;
        }
        return s;
    }

private:
    std::vector<Rat> coeff_; // coeff_[i] multiplies q^i; empty means 0

    void trim() {
        while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
    }
};

// Character degree of the form q^a / p^b, kept symbolic next to its value.
struct DegreeExpr {
    int q_exp = 0;
    int p_den = 0; // degree = q^q_exp / p^p_den
    std::string str() const {
        std::string s = q_exp == 0 ? "1" : (q_exp == 1 ? "q" : "q^" + std::to_string(q_exp));
        if (p_den > 0) s += "/p" + std::string(p_den > 1 ? "^" + std::to_string(p_den) : "");
        return s;
    }
    Rat eval(std::int64_t q, std::int64_t p) const {
        Rat r(1);
        for (int i = 0; i < q_exp; ++i) r *= Rat(q);
        for (int i = 0; i < p_den; ++i) r /= Rat(p);
        return r;
    }
    // degree^2 * size as a polynomial, using q = p^f only through p_den:
    // (q^a/p^b)^2 * size. Caller supplies p and f=1 semantics are avoided by
    // keeping the p-denominator exact: valid since sizes carry matching halves.
    QPoly square_times(const QPoly& size, std::int64_t p) const {
        QPoly r = size * QPoly::q_power(2 * q_exp);
        Rat d(1);
        for (int i = 0; i < 2 * p_den; ++i) d *= Rat(p);
        return r / d;
    }
};

} // namespace chevunip
