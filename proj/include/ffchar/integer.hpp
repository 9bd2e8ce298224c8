// Integer arithmetic on group orders: primality, factorization, phi, omega, mu.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace ffchar {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    for (; e; e >>= 1) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
    }
    return r;
}

inline BigInt powmod(BigInt b, BigInt e, const BigInt& m) { return boost::multiprecision::powm(b, e, m); }

inline BigInt ipow(const BigInt& b, unsigned e) { return boost::multiprecision::pow(b, e); }

/// q^e as u64; throws if it does not fit below 2^63.
inline u64 checked_pow(u64 q, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (u64{1} << 63) / q) throw std::overflow_error("q^n exceeds 2^63");
        r *= q;
    }
    return r;
}

inline unsigned msb_or_zero(const BigInt& x) { return x == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(x)); }

inline bool fits_u64(const BigInt& x) { return x >= 0 && msb_or_zero(x) < 64; }

inline std::string to_string(const BigInt& x) { return x.str(); }

namespace detail {

template <class Int>
bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned s) {
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        if constexpr (std::is_same_v<Int, u64>)
            x = mulmod(x, x, n);
        else
            x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;
}

inline const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        constexpr u64 limit = 1000000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<u64> out;
        for (u64 i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace detail

/// Miller-Rabin with the first twelve prime bases; deterministic for all 64-bit n.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : bases) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : bases) {
        if (detail::miller_rabin_witness<u64>(n, a, d, s)) return false;
    }
    return true;
}

/// Deterministic below 3.3e24 (first thirteen prime bases); above that the
/// extra bases make it a strong probable-prime test.
inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime(static_cast<u64>(n));
    static constexpr unsigned bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (unsigned p : bases) {
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (unsigned a : bases) {
        if (detail::miller_rabin_witness<BigInt>(n, BigInt(a), d, s)) return false;
    }
    return true;
}

namespace detail {

template <class Int>
Int gcd_int(Int a, Int b) {
    if constexpr (std::is_same_v<Int, u64>)
        return std::gcd(a, b);
    else
        return boost::multiprecision::gcd(a, b);
}

template <class Int>
Int mul_mod_generic(const Int& a, const Int& b, const Int& m) {
    if constexpr (std::is_same_v<Int, u64>)
        return mulmod(a, b, m);
    else
        return a * b % m;
}

template <class Int>
Int abs_diff(const Int& a, const Int& b) {
    return a > b ? Int(a - b) : Int(b - a);
}

/// Pollard rho with Brent's cycle detection and batched gcds. Returns a
/// nontrivial divisor of composite n, or 0 if this constant c fails.
template <class Int>
Int pollard_brent(const Int& n, const Int& c) {
    if (n % 2 == 0) return Int(2);
    const unsigned batch = 128;
    Int y = 2, x, ys, g = 1, q = 1;
    unsigned long long r = 1;
    auto f = [&](const Int& v) { return Int((mul_mod_generic(v, v, n) + c) % n); };
    const unsigned long long max_r = 1ULL << 26;
    while (g == 1) {
        x = y;
        for (unsigned long long i = 0; i < r; ++i) y = f(y);
        unsigned long long k = 0;
        while (k < r && g == 1) {
            ys = y;
            const unsigned long long lim = std::min<unsigned long long>(batch, r - k);
            for (unsigned long long i = 0; i < lim; ++i) {
                y = f(y);
                q = mul_mod_generic(q, abs_diff(x, y), n);
            }
            g = gcd_int(q, n);
            k += lim;
        }
        r <<= 1;
        if (r > max_r) return Int(0);
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd_int(abs_diff(x, ys), n);
        } while (g == 1);
    }
    return g == n ? Int(0) : g;
}

template <class Int>
Int find_divisor(const Int& n) {
    for (unsigned c = 1; c <= 64; ++c) {
        Int g = pollard_brent<Int>(n, Int(c));
        if (g != 0) return g;
    }
    throw std::runtime_error("factor_integer: composite cofactor resisted splitting: " + BigInt(n).str());
}

inline void split_into(const BigInt& n, std::vector<BigInt>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    BigInt g;
    if (msb_or_zero(n) < 62)
        g = find_divisor<u64>(static_cast<u64>(n));
    else
        g = find_divisor<BigInt>(n);
    split_into(g, primes);
    split_into(n / g, primes);
}

}  // namespace detail

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;
};

/// A positive integer together with its complete prime factorization.
class FactoredInteger {
public:
    FactoredInteger() : value_(1) {}
    FactoredInteger(BigInt value, std::vector<PrimePower> factors) : value_(std::move(value)), factors_(std::move(factors)) {
        std::sort(factors_.begin(), factors_.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
    }

    const BigInt& value() const { return value_; }
    const std::vector<PrimePower>& factors() const { return factors_; }

    std::size_t omega() const { return factors_.size(); }

    BigInt phi() const {
        BigInt r = 1;
        for (const auto& pp : factors_) r *= ipow(pp.prime, pp.exponent - 1) * (pp.prime - 1);
        return r;
    }

    BigInt radical() const {
        BigInt r = 1;
        for (const auto& pp : factors_) r *= pp.prime;
        return r;
    }

    bool squarefree() const {
        return std::all_of(factors_.begin(), factors_.end(), [](const auto& pp) { return pp.exponent == 1; });
    }

    std::vector<BigInt> primes() const {
        std::vector<BigInt> out;
        for (const auto& pp : factors_) out.push_back(pp.prime);
        return out;
    }

private:
    BigInt value_;
    std::vector<PrimePower> factors_;
};

/// Trial division by primes below 10^6, then Pollard-Brent on the cofactor.
inline FactoredInteger factor_integer(const BigInt& m) {
    if (m < 1) throw std::invalid_argument("factor_integer: argument must be >= 1");
    BigInt rest = m;
    std::vector<BigInt> primes;
    for (u64 p : detail::small_primes()) {
        if (BigInt(p) * p > rest) break;
        while (rest % p == 0) {
            primes.emplace_back(p);
            rest /= p;
        }
    }
    if (rest > 1) detail::split_into(rest, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<PrimePower> factors;
    for (const auto& p : primes) {
        if (!factors.empty() && factors.back().prime == p)
            ++factors.back().exponent;
        else
            factors.push_back({p, 1});
    }
    BigInt check = 1;
    for (const auto& pp : factors) {
        if (!is_prime(pp.prime)) throw std::runtime_error("factor_integer: non-prime factor " + pp.prime.str());
        check *= ipow(pp.prime, pp.exponent);
    }
    if (check != m) throw std::logic_error("factor_integer: product mismatch");
    return FactoredInteger(m, std::move(factors));
}

/// Mobius function from a factorization: 0 unless squarefree.
inline int mobius(const FactoredInteger& m) {
    if (!m.squarefree()) return 0;
    return (m.omega() % 2 == 0) ? 1 : -1;
}

/// A squarefree divisor of a factored integer, carried with its prime support.
struct SquarefreeDivisor {
    BigInt value;
    std::vector<BigInt> primes;
    int mobius() const { return primes.size() % 2 == 0 ? 1 : -1; }
};

/// All 2^omega squarefree divisors, ordered by bitmask over the sorted primes.
inline std::vector<SquarefreeDivisor> squarefree_divisors(const FactoredInteger& n) {
    const auto ps = n.primes();
    if (ps.size() > 30) throw std::length_error("squarefree_divisors: omega too large");
    std::vector<SquarefreeDivisor> out;
    const std::size_t count = std::size_t{1} << ps.size();
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        SquarefreeDivisor d{1, {}};
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (mask >> i & 1) {
                d.value *= ps[i];
                d.primes.push_back(ps[i]);
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

/// Exact rational p/q with BigInt parts, kept reduced.
struct Rational {
    BigInt num = 0;
    BigInt den = 1;

    Rational() = default;
    Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) num = -num, den = -den;
        BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
        if (g > 1) num /= g, den /= g;
    }

    double to_double() const {
        using boost::multiprecision::cpp_bin_float_quad;
        return static_cast<double>(cpp_bin_float_quad(num) / cpp_bin_float_quad(den));
    }

    std::string str() const { return num.str() + "/" + den.str(); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend Rational operator-(const Rational& a, const Rational& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }
};

inline Rational abs(const Rational& r) { return {r.num < 0 ? BigInt(-r.num) : r.num, r.den}; }

}  // namespace ffchar
