// Irreducibility, irreducible tables and complete factorization in F_q[t].
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "poly.hpp"

namespace ffchar {

/// Number of monic irreducibles of degree k: (1/k) sum_{e|k} mu(e) q^{k/e}.
inline BigInt necklace_count(u64 q, unsigned k) {
    if (k == 0) throw std::invalid_argument("necklace_count: k must be >= 1");
    const auto fk = factor_integer(BigInt(k));
    BigInt total = 0;
    for (const auto& d : squarefree_divisors(fk)) {
        const unsigned e = static_cast<unsigned>(d.value);
        const BigInt term = ipow(BigInt(q), k / e);
        if (d.mobius() > 0)
            total += term;
        else
            total -= term;
    }
    return total / k;
}

namespace detail {

inline Poly x_minus(const Field& F, const Poly& h) { return poly::sub(F, h, Poly::monomial(1)); }

inline std::vector<unsigned> prime_divisors(unsigned d) {
    std::vector<unsigned> out;
    for (unsigned p = 2; p * p <= d; ++p) {
        if (d % p) continue;
        out.push_back(p);
        while (d % p == 0) d /= p;
    }
    if (d > 1) out.push_back(d);
    return out;
}

/// a^(1/p) coefficientwise for a polynomial in t^p.
inline Poly pth_root(const Field& F, const Poly& a) {
    std::vector<Elem> r(a.degree() / F.p() + 1, 0);
    const u64 root_exp = F.q() / F.p();
    for (std::size_t i = 0; i < a.c.size(); i += F.p()) r[i / F.p()] = F.pow(a.c[i], root_exp);
    return Poly(std::move(r));
}

}  // namespace detail

/// Frobenius test: t^(q^d) = t mod f and gcd(t^(q^(d/l)) - t, f) = 1 for
/// each prime l | d.
inline bool is_irreducible(const Field& F, const Poly& f) {
    if (!f.is_monic()) throw std::invalid_argument("is_irreducible: polynomial must be monic");
    const std::size_t d = f.degree();
    if (d == 0) throw std::invalid_argument("is_irreducible: degree must be >= 1");
    if (d == 1) return true;
    const auto ls = detail::prime_divisors(static_cast<unsigned>(d));
    std::vector<Poly> frob(d + 1);
    frob[0] = Poly::monomial(1);
    const BigInt q(F.q());
    for (std::size_t k = 1; k <= d; ++k) frob[k] = poly::pow_mod(F, frob[k - 1], q, f);
    if (frob[d] != poly::rem(F, Poly::monomial(1), f)) return false;
    for (unsigned l : ls) {
        const Poly g = poly::gcd(F, f, detail::x_minus(F, frob[d / l]));
        if (!g.is_one()) return false;
    }
    return true;
}

/// irreducibles[k] holds I_k sorted in enumeration order; irreducibles[0] is empty.
using IrreducibleTable = std::vector<std::vector<Poly>>;

inline IrreducibleTable irreducibles_up_to(const Field& F, std::size_t r) {
    if (r < 1) throw std::invalid_argument("irreducibles_up_to: r must be >= 1");
    IrreducibleTable table(r + 1);
    for (std::size_t k = 1; k <= r; ++k) {
        MonicRange range(F, k);
        range.for_each([&](u64, const Poly& f) {
            if (is_irreducible(F, f)) table[k].push_back(f);
        });
    }
    return table;
}

struct FactorPower {
    Poly factor;
    unsigned multiplicity = 1;
};

/// f = unit * prod factor^multiplicity, factors monic irreducible and sorted.
struct Factorization {
    Elem unit = 1;
    std::vector<FactorPower> factors;

    std::size_t max_degree() const {
        std::size_t m = 0;
        for (const auto& fp : factors) m = std::max(m, fp.factor.degree());
        return m;
    }
};

namespace detail {

struct DegreeBlock {
    Poly product;  // product of all irreducible factors of this degree
    std::size_t degree;
};

// Squarefree decomposition: returns (squarefree part, multiplicity) pairs.
inline void squarefree_decompose(const Field& F, const Poly& f, unsigned scale, std::vector<std::pair<Poly, unsigned>>& out) {
    if (f.degree() == 0) return;
    const Poly fd = poly::derivative(F, f);
    if (fd.is_zero()) {
        squarefree_decompose(F, pth_root(F, f), scale * static_cast<unsigned>(F.p()), out);
        return;
    }
    Poly c = poly::gcd(F, f, fd);
    Poly w = poly::div_exact(F, f, c);
    unsigned i = 1;
    while (!w.is_one()) {
        const Poly y = poly::gcd(F, w, c);
        const Poly fac = poly::div_exact(F, w, y);
        if (!fac.is_one()) out.emplace_back(fac, i * scale);
        ++i;
        w = y;
        c = poly::div_exact(F, c, y);
    }
    if (!c.is_one()) squarefree_decompose(F, pth_root(F, c), scale * static_cast<unsigned>(F.p()), out);
}

// Distinct-degree split of a monic squarefree polynomial.
inline std::vector<DegreeBlock> distinct_degree(const Field& F, Poly f) {
    std::vector<DegreeBlock> out;
    Poly h = Poly::monomial(1);
    const BigInt q(F.q());
    for (std::size_t i = 1; f.degree() >= 2 * i; ++i) {
        h = poly::pow_mod(F, h, q, f);
        const Poly g = poly::gcd(F, f, x_minus(F, h));
        if (!g.is_one()) {
            out.push_back({g, i});
            f = poly::div_exact(F, f, g);
            h = poly::rem(F, h, f);
        }
    }
    if (f.degree() > 0) out.push_back({f, f.degree()});
    return out;
}

// Cantor-Zassenhaus equal-degree split; trace map in characteristic 2.
inline void equal_degree(const Field& F, const Poly& g, std::size_t k, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (g.degree() == k) {
        out.push_back(g);
        return;
    }
    const std::size_t n = g.degree();
    BigInt exponent = 0;
    if (F.p() != 2) exponent = (ipow(BigInt(F.q()), static_cast<unsigned>(k)) - 1) / 2;
    while (true) {
        std::vector<Elem> coeffs(n);
        for (auto& c : coeffs) c = static_cast<Elem>(rng() % F.q());
        const Poly a(std::move(coeffs));
        if (a.is_zero() || a.degree() == 0) continue;
        Poly b;
        if (F.p() == 2) {
            Poly term = a;
            b = a;
            for (std::size_t i = 1; i < F.e() * k; ++i) {
                term = poly::mul_mod(F, term, term, g);
                b = poly::add(F, b, term);
            }
        } else {
            b = poly::sub(F, poly::pow_mod(F, a, exponent, g), Poly::constant(1));
        }
        const Poly d = poly::gcd(F, g, b);
        if (d.is_zero() || d.is_one() || d.degree() == n) continue;
        equal_degree(F, d, k, rng, out);
        equal_degree(F, poly::div_exact(F, g, d), k, rng, out);
        return;
    }
}

}  // namespace detail

/// Complete factorization: squarefree decomposition, distinct-degree split,
/// then equal-degree splitting with a fixed-seed generator (deterministic).
inline Factorization factorize(const Field& F, const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("factorize: zero polynomial");
    Factorization out;
    out.unit = f.lead();
    const Poly m = poly::make_monic(F, f);
    std::vector<std::pair<Poly, unsigned>> sqf;
    detail::squarefree_decompose(F, m, 1, sqf);
    std::map<Poly, unsigned> mult;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    for (const auto& [part, e] : sqf) {
        for (const auto& block : detail::distinct_degree(F, part)) {
            std::vector<Poly> irr;
            detail::equal_degree(F, block.product, block.degree, rng, irr);
            for (auto& p : irr) mult[poly::make_monic(F, p)] += e;
        }
    }
    for (auto& [p, e] : mult) out.factors.push_back({p, e});
    return out;
}

/// Largest irreducible-factor degree of a nonzero f (0 for constants),
/// without the equal-degree stage.
inline std::size_t max_factor_degree(const Field& F, const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("max_factor_degree: zero polynomial");
    std::vector<std::pair<Poly, unsigned>> sqf;
    detail::squarefree_decompose(F, poly::make_monic(F, f), 1, sqf);
    std::size_t m = 0;
    for (const auto& [part, e] : sqf)
        for (const auto& block : detail::distinct_degree(F, part)) m = std::max(m, block.degree);
    return m;
}

/// True iff every irreducible factor of f has degree <= r.
inline bool is_smooth(const Field& F, const Poly& f, std::size_t r) {
    if (f.is_zero()) throw std::invalid_argument("is_smooth: zero polynomial");
    if (f.degree() <= r) return true;
    return max_factor_degree(F, f) <= r;
}

inline Poly expand(const Field& F, const Factorization& fac) {
    Poly r = Poly::constant(fac.unit);
    for (const auto& fp : fac.factors) r = poly::mul(F, r, poly::pow(F, fp.factor, fp.multiplicity));
    return r;
}

}  // namespace ffchar
