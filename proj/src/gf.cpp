#include "chevunip/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace chevunip {

namespace {

// Conway polynomials, coefficients low-to-high, monic leading term included.
// C_{p,f} for the (p,f) pairs this project evaluates numerically.
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> t = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{5, 4}, {2, 4, 4, 0, 1}},
        {{7, 2}, {3, 6, 1}},
    };
    return t;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

FqField::FqField(int p, int f) : p_(p), f_(f) {
    if (!is_prime(p)) throw ConfigError("FqField: p must be prime, got " + std::to_string(p));
    if (f < 1) throw ConfigError("FqField: f must be >= 1");
    std::int64_t q = 1;
    for (int i = 0; i < f; ++i) {
        q *= p;
        if (q > 6561) throw ConfigError("FqField: q too large for tabulated arithmetic");
    }
    q_ = static_cast<int>(q);

    if (f == 1) {
        modulus_ = {0, 1}; // placeholder x; prime field needs no reduction
    } else {
        auto it = conway_table().find({p, f});
        if (it == conway_table().end())
            throw ConfigError("FqField: no embedded Conway polynomial for p=" + std::to_string(p) +
                              ", f=" + std::to_string(f));
        modulus_ = it->second;
    }

    // polynomial arithmetic on index-encoded vectors
    auto digits = [&](Fq a) {
        std::vector<int> d(f_);
        int x = a;
        for (int i = 0; i < f_; ++i) { d[i] = x % p_; x /= p_; }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        int x = 0;
        for (int i = f_ - 1; i >= 0; --i) x = x * p_ + d[i];
        return static_cast<Fq>(x);
    };

    add_.resize(static_cast<size_t>(q_) * q_);
    mul_.resize(static_cast<size_t>(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    trace_.resize(q_);

    for (int a = 0; a < q_; ++a) {
        auto da = digits(static_cast<Fq>(a));
        std::vector<int> dn(f_);
        for (int i = 0; i < f_; ++i) dn[i] = (p_ - da[i]) % p_;
        neg_[a] = encode(dn);
        for (int b = 0; b < q_; ++b) {
            auto db = digits(static_cast<Fq>(b));
            std::vector<int> ds(f_);
            for (int i = 0; i < f_; ++i) ds[i] = (da[i] + db[i]) % p_;
            add_[static_cast<size_t>(a) * q_ + b] = encode(ds);
            // multiply then reduce by the modulus
            std::vector<int> prod(2 * f_ - 1, 0);
            for (int i = 0; i < f_; ++i)
                for (int j = 0; j < f_; ++j)
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (int d = 2 * f_ - 2; d >= f_; --d) {
                int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < f_; ++i) {
                    // x^d = x^{d-f} * (x^f) and x^f = -sum modulus_i x^i
                    int coeffm = modulus_[i];
                    prod[d - f_ + i] = ((prod[d - f_ + i] - c * coeffm) % p_ + p_) % p_;
                }
            }
            std::vector<int> dr(prod.begin(), prod.begin() + f_);
            mul_[static_cast<size_t>(a) * q_ + b] = encode(dr);
        }
    }

    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[static_cast<size_t>(a) * q_ + b] == 1) { inv_[a] = static_cast<Fq>(b); break; }

    // trace via Frobenius orbit sums
    for (int a = 0; a < q_; ++a) {
        Fq acc = 0, x = static_cast<Fq>(a);
        for (int i = 0; i < f_; ++i) {
            acc = add(acc, x);
            x = pow_tableless(x);
        }
        // acc lies in the prime subfield; its index is the value
        if (acc >= static_cast<Fq>(p_)) throw ConfigError("FqField: trace left the prime field");
        trace_[a] = acc;
    }

    // find a multiplicative generator (smallest index); certifies cyclicity
    gen_ = 0;
    for (int a = 2; a < q_; ++a) {
        Fq x = static_cast<Fq>(a);
        int ord = 1;
        Fq y = x;
        while (y != 1) { y = mul(y, x); ++ord; }
        if (ord == q_ - 1) { gen_ = static_cast<Fq>(a); break; }
    }
    if (q_ == 2) gen_ = 1;
    if (gen_ == 0 && q_ > 2) throw ConfigError("FqField: no generator found (modulus not primitive?)");

    trace_one_ = 0;
    for (int a = 1; a < q_; ++a)
        if (trace_[a] == 1) { trace_one_ = static_cast<Fq>(a); break; }
    if (trace_one_ == 0) throw ConfigError("FqField: trace not onto");
}

// one Frobenius step a -> a^p without the pow() table (used during build)
Fq FqField::pow_tableless(Fq a) const {
    Fq r = 1;
    for (int i = 0; i < p_; ++i) r = mul_[static_cast<size_t>(r) * q_ + a];
    return r;
}

Fq FqField::pow(Fq a, std::int64_t e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Fq r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

int FqField::coeff(Fq a, int i) const {
    int x = a;
    for (int k = 0; k < i; ++k) x /= p_;
    return x % p_;
}

bool FqField::lex_less(Fq a, Fq b) const {
    for (int i = 0; i < f_; ++i) {
        int ca = coeff(a, i), cb = coeff(b, i);
        if (ca != cb) return ca < cb;
    }
    return false;
}

bool FqField::is_square(Fq a) const {
    if (a == 0) return true;
    if (p_ == 2) return true; // Frobenius is onto
    return pow(a, (q_ - 1) / 2) == 1;
}

std::optional<Fq> FqField::sqrt(Fq a) const {
    if (a == 0) return Fq(0);
    if (!is_square(a)) return std::nullopt;
    for (int r = 1; r < q_; ++r) {
        if (mul(static_cast<Fq>(r), static_cast<Fq>(r)) == a) {
            Fq r1 = static_cast<Fq>(r), r2 = neg(r1);
            return lex_less(r1, r2) ? r1 : r2;
        }
    }
    return std::nullopt;
}

std::vector<Fq> FqField::squares() const {
    std::vector<Fq> s;
    std::vector<bool> seen(q_, false);
    for (int a = 1; a < q_; ++a) {
        Fq sq = mul(static_cast<Fq>(a), static_cast<Fq>(a));
        if (!seen[sq]) { seen[sq] = true; s.push_back(sq); }
    }
    std::sort(s.begin(), s.end());
    return s;
}

bool FqField::is_fourth_power(Fq a) const {
    if (a == 0) return true;
    int g = std::gcd(4, q_ - 1);
    return pow(a, (q_ - 1) / g) == 1;
}

std::optional<Fq> FqField::fourth_root(Fq a) const {
    if (a == 0) return Fq(0);
    Fq best = 0;
    bool found = false;
    for (int r = 1; r < q_; ++r) {
        Fq r2 = mul(static_cast<Fq>(r), static_cast<Fq>(r));
        if (mul(r2, r2) == a) {
            if (!found || lex_less(static_cast<Fq>(r), best)) best = static_cast<Fq>(r);
            found = true;
        }
    }
    if (!found) return std::nullopt;
    return best;
}

std::vector<Fq> FqField::fourth_powers() const {
    std::vector<Fq> s;
    std::vector<bool> seen(q_, false);
    for (int a = 1; a < q_; ++a) {
        Fq x = pow(static_cast<Fq>(a), 4);
        if (!seen[x]) { seen[x] = true; s.push_back(x); }
    }
    std::sort(s.begin(), s.end());
    return s;
}

std::string FqField::elem_str(Fq a) const {
    if (f_ == 1) return std::to_string(a);
    std::string s;
    for (int i = 0; i < f_; ++i) {
        int c = coeff(a, i);
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) s += std::to_string(c);
        else {
            if (c != 1) s += std::to_string(c) + "*";
            s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

const FqField& field(int p, int f) {
    static std::map<std::pair<int, int>, std::unique_ptr<FqField>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, f);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<FqField>(p, f)).first;
    return *it->second;
}

} // namespace chevunip
