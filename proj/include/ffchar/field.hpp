// The finite field F_q, q = p^e <= 2^16, with table-driven multiplication.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "integer.hpp"

namespace ffchar {

/// A field element, encoded as the integer sum c_i p^i of its power-basis
/// coordinates. 0 and 1 are the additive and multiplicative identities and
/// 0..p-1 is the prime subfield.
using Elem = std::uint32_t;

namespace detail {

// Dense polynomials over F_p, low-to-high, used only to pick and verify the
// defining polynomial before the field tables exist.
using ModpPoly = std::vector<u64>;

inline void trim(ModpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModpPoly modp_rem(ModpPoly a, const ModpPoly& m, u64 p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const u64 inv_lead = powmod(m.back(), p - 2, p);
    while (a.size() > dm) {
        const u64 c = a.back() * inv_lead % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
        trim(a);
    }
    return a;
}

inline ModpPoly modp_mulmod(const ModpPoly& a, const ModpPoly& b, const ModpPoly& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    ModpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return modp_rem(std::move(r), m, p);
}

inline ModpPoly modp_gcd(ModpPoly a, ModpPoly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModpPoly r = modp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline ModpPoly modp_pow(ModpPoly base, u64 e, const ModpPoly& m, u64 p) {
    ModpPoly r{1};
    base = modp_rem(std::move(base), m, p);
    for (; e; e >>= 1) {
        if (e & 1) r = modp_mulmod(r, base, m, p);
        base = modp_mulmod(base, base, m, p);
    }
    return r;
}

/// Rabin-style check over the prime field: no factor of degree <= deg/2.
inline bool modp_irreducible(const ModpPoly& f, u64 p) {
    const std::size_t d = f.size() - 1;
    if (d <= 1) return d == 1;
    ModpPoly h{0, 1};
    for (std::size_t k = 1; k <= d / 2; ++k) {
        h = modp_pow(h, p, f, p);
        ModpPoly diff = h;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if (modp_gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

inline bool is_small_prime(u64 p) {
    if (p < 2) return false;
    for (u64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

/// F_q for q = p^e. Elements are stored as indices; multiplication and
/// inversion go through discrete log/antilog tables built once at construction.
class Field {
public:
    /// The prime field F_p.
    static Field prime(u64 p) { return Field(p, 1); }

    /// F_{p^e} defined by the lexicographically least monic irreducible of
    /// degree e over F_p (constant coefficient varying fastest).
    static Field extension(u64 p, unsigned e) { return Field(p, e); }

    /// F_q for a prime power q.
    static Field of_order(u64 q) {
        if (q < 2) throw std::invalid_argument("field order must be a prime power >= 2");
        const auto ps = detail::distinct_prime_factors(q);
        if (ps.size() != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
        unsigned e = 0;
        for (u64 r = q; r > 1; r /= ps[0]) ++e;
        return Field(ps[0], e);
    }

    u64 p() const { return p_; }
    unsigned e() const { return e_; }
    u64 q() const { return q_; }

    /// Monic defining polynomial over F_p, low-to-high; empty for prime fields.
    const std::vector<u64>& defining_poly() const { return defining_; }

    /// Primitive element used for the log tables.
    Elem primitive_element() const { return exp_[1]; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    /// Image of the integer n under Z -> F_p -> F_q.
    Elem from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        return static_cast<Elem>(r < 0 ? r + static_cast<long long>(p_) : r);
    }

    std::vector<u64> coords(Elem a) const {
        std::vector<u64> c(e_);
        for (unsigned i = 0; i < e_; ++i, a /= static_cast<Elem>(p_)) c[i] = a % p_;
        return c;
    }

    Elem from_coords(const std::vector<u64>& c) const {
        u64 v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i] % p_;
        return static_cast<Elem>(v);
    }

    Elem add(Elem a, Elem b) const {
        if (e_ == 1) {
            const u64 s = u64{a} + b;
            return static_cast<Elem>(s >= p_ ? s - p_ : s);
        }
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
        return add_digits(a, b);
    }

    Elem neg(Elem a) const { return neg_table_[a]; }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("inverse of zero in F_q");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, u64 k) const {
        if (k == 0) return 1;
        if (a == 0) return 0;
        return exp_[static_cast<u64>(log_[a]) * (k % (q_ - 1)) % (q_ - 1)];
    }

    /// a^p.
    Elem frobenius(Elem a) const { return pow(a, p_); }

    /// Discrete log of a nonzero element to the base primitive_element().
    u64 log(Elem a) const {
        if (a == 0) throw std::domain_error("log of zero in F_q");
        return log_[a];
    }

    bool operator==(const Field& o) const { return p_ == o.p_ && e_ == o.e_ && defining_ == o.defining_; }

private:
    Field(u64 p, unsigned e) : p_(p), e_(e) {
        if (!detail::is_small_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
        if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
        q_ = 1;
        for (unsigned i = 0; i < e; ++i) {
            q_ *= p;
            if (q_ > (u64{1} << 16)) throw std::invalid_argument("fields with q > 2^16 are not supported");
        }
        if (e > 1) defining_ = least_irreducible(p, e);
        build_tables();
    }

    static std::vector<u64> least_irreducible(u64 p, unsigned e) {
        u64 count = 1;
        for (unsigned i = 0; i < e; ++i) count *= p;
        for (u64 idx = 0; idx < count; ++idx) {
            detail::ModpPoly f(e + 1, 0);
            u64 v = idx;
            for (unsigned i = 0; i < e; ++i, v /= p) f[i] = v % p;
            f[e] = 1;
            if (detail::modp_irreducible(f, p)) return f;
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    Elem add_digits(Elem a, Elem b) const {
        Elem out = 0, scale = 1;
        for (unsigned i = 0; i < e_; ++i) {
            out += static_cast<Elem>(((a % p_) + (b % p_)) % p_) * scale;
            a /= static_cast<Elem>(p_);
            b /= static_cast<Elem>(p_);
            scale *= static_cast<Elem>(p_);
        }
        return out;
    }

    // Multiply by the element with coordinates g in F_p[x]/(defining).
    Elem mul_slow(Elem a, Elem b) const {
        if (e_ == 1) return static_cast<Elem>(u64{a} * b % p_);
        auto r = detail::modp_mulmod(coords(a), coords(b), defining_, p_);
        r.resize(e_, 0);
        return from_coords(r);
    }

    void build_tables() {
        const u64 order = q_ - 1;
        neg_table_.resize(q_);
        for (u64 a = 0; a < q_; ++a) {
            auto c = coords(static_cast<Elem>(a));
            for (auto& x : c) x = (p_ - x) % p_;
            neg_table_[a] = from_coords(c);
        }
        if (e_ > 1 && p_ != 2 && q_ <= 256) {
            add_table_.resize(q_ * q_);
            for (u64 a = 0; a < q_; ++a)
                for (u64 b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_digits(static_cast<Elem>(a), static_cast<Elem>(b));
        }
        exp_.assign(2 * order + 1, 0);
        log_.assign(q_, 0);
        const auto ps = detail::distinct_prime_factors(order);
        for (u64 g = 1; g < q_; ++g) {
            const Elem cand = static_cast<Elem>(g);
            bool generator = true;
            for (u64 l : ps) {
                Elem x = 1, b = cand;
                for (u64 k = order / l; k; k >>= 1) {
                    if (k & 1) x = mul_slow(x, b);
                    b = mul_slow(b, b);
                }
                if (x == 1) {
                    generator = false;
                    break;
                }
            }
            if (!generator) continue;
            Elem x = 1;
            for (u64 k = 0; k < order; ++k) {
                exp_[k] = x;
                log_[x] = static_cast<std::uint32_t>(k);
                x = mul_slow(x, cand);
            }
            for (u64 k = order; k <= 2 * order; ++k) exp_[k] = exp_[k - order];
            return;
        }
        throw std::logic_error("no primitive element in F_q");
    }

    u64 p_ = 2;
    unsigned e_ = 1;
    u64 q_ = 2;
    std::vector<u64> defining_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> neg_table_;
    std::vector<Elem> add_table_;
};

}  // namespace ffchar
