#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chevunip/rational.hpp"

namespace chevunip {

// Element of Z[zeta_p] in the free basis 1, zeta, ..., zeta^{p-2}, with
// zeta^{p-1} reduced to -(1 + zeta + ... + zeta^{p-2}). All character
// arithmetic stays in this ring; inner products divide by |G| at the end.
class Cyclo {
public:
    Cyclo() : p_(2), c_(1, 0) {}
    explicit Cyclo(int p) : p_(p), c_(static_cast<size_t>(p - 1), 0) {}
    Cyclo(int p, std::int64_t integer) : Cyclo(p) { c_[0] = integer; }

    static Cyclo zeta_power(int p, std::int64_t k) {
        Cyclo z(p);
        std::int64_t r = k % p;
        if (r < 0) r += p;
        if (r == p - 1) {
            for (auto& x : z.c_) x = -1;
        } else {
            z.c_[static_cast<size_t>(r)] = 1;
        }
        return z;
    }

    int p() const { return p_; }
    std::int64_t coeff(int i) const { return c_[static_cast<size_t>(i)]; }

    bool is_zero() const {
        for (auto x : c_) if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i) if (c_[i] != 0) return false;
        return true;
    }
    std::int64_t rational_part() const {
        if (!is_rational()) throw std::domain_error("Cyclo: not rational: " + str());
        return c_[0];
    }

    Cyclo conj() const {
        // zeta^k -> zeta^{p-k}
        Cyclo r(p_);
        for (int k = 0; k < p_ - 1; ++k) {
            if (c_[static_cast<size_t>(k)] == 0) continue;
            r += zeta_power(p_, k == 0 ? 0 : p_ - k) * c_[static_cast<size_t>(k)];
        }
        return r;
    }

    Cyclo& operator+=(const Cyclo& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
        return *this;
    }
    Cyclo& operator-=(const Cyclo& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], -o.c_[i]);
        return *this;
    }
    friend Cyclo operator+(Cyclo a, const Cyclo& b) { a += b; return a; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { a -= b; return a; }

    Cyclo operator*(std::int64_t s) const {
        Cyclo r = *this;
        for (auto& x : r.c_) x = checked_mul(x, s);
        return r;
    }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        a.check(b);
        int p = a.p_;
        std::vector<std::int64_t> prod(static_cast<size_t>(2 * p - 3), 0);
        for (int i = 0; i < p - 1; ++i) {
            if (a.c_[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < p - 1; ++j)
                prod[static_cast<size_t>(i + j)] = checked_add(
                    prod[static_cast<size_t>(i + j)],
                    checked_mul(a.c_[static_cast<size_t>(i)], b.c_[static_cast<size_t>(j)]));
        }
        Cyclo r(p);
        for (int d = 0; d < 2 * p - 3; ++d) {
            std::int64_t v = prod[static_cast<size_t>(d)];
            if (v == 0) continue;
            int k = d % p;
            if (k == p - 1) {
                for (auto& x : r.c_) x = checked_add(x, -v);
            } else {
                r.c_[static_cast<size_t>(k)] = checked_add(r.c_[static_cast<size_t>(k)], v);
            }
        }
        return r;
    }

    friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    // |z|^2 = z * conj(z)
    Cyclo norm_sq() const { return *this * conj(); }

    std::string str() const {
        std::string s;
        for (int i = 0; i < p_ - 1; ++i) {
            std::int64_t v = c_[static_cast<size_t>(i)];
            if (v == 0) continue;
            if (!s.empty()) s += v > 0 ? "+" : "";
            if (i == 0) { s += std::to_string(v); continue; }
            std::string m = i == 1 ? "z" : "z^" + std::to_string(i);
            if (v == 1) s += m;
            else if (v == -1) s += "-" + m;
            else s += std::to_string(v) + m;
        }
        return s.empty() ? "0" : s;
    }

private:
    int p_;
    std::vector<std::int64_t> c_;

    void check(const Cyclo& o) const {
        if (p_ != o.p_) throw std::domain_error("Cyclo: mixed cyclotomic orders");
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Cyclo: add overflow");
        return r;
    }
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Cyclo: mul overflow");
        return r;
    }
};

} // namespace chevunip
