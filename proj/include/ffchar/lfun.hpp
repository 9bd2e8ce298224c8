// L-polynomials L(z, chi) = sum_m A(m, chi) z^m: coefficients, inverse roots,
// root-modulus checks, prime character sums and the Mertens product.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include "characters.hpp"

namespace ffchar {

enum class RootClass { unit, sqrt_q, violation };

inline const char* to_string(RootClass c) {
    switch (c) {
        case RootClass::unit: return "unit";
        case RootClass::sqrt_q: return "sqrt_q";
        default: return "violation";
    }
}

struct LPolynomial {
    std::string chi;
    u64 q = 0;
    std::size_t n = 0;            // degree of the modulus
    std::vector<cplx> coeffs;     // A(0, chi) .. A(n-1, chi)
    std::vector<double> coeff_error;
    std::size_t degree = 0;       // numerical degree after dropping |A(m)| < zero_threshold
    std::vector<cplx> inverse_roots;
    double root_residual = 0.0;   // max |L(1/alpha_i)|

    /// L(z) from the stored coefficients.
    cplx eval(cplx z) const {
        cplx r = 0.0;
        for (std::size_t m = coeffs.size(); m-- > 0;) r = r * z + coeffs[m];
        return r;
    }
};

inline constexpr double kCoefficientZero = 1e-9;

namespace detail {

// Reversed polynomial R(z) = z^D L(1/z) = sum_m A(m) z^{D-m}; monic since A(0) = 1.
inline cplx eval_reversed(const std::vector<cplx>& a, std::size_t D, cplx z, cplx* deriv) {
    cplx r = 0.0, dr = 0.0;
    for (std::size_t m = 0; m <= D; ++m) {
        dr = dr * z + r;
        r = r * z + a[m];
    }
    if (deriv) *deriv = dr;
    return r;
}

}  // namespace detail

/// Inverse roots of sum_{m<=D} a_m z^m (a_0 != 0): eigenvalues of the companion
/// matrix of the reversed polynomial, one Newton step each, and clusters
/// of near-equal eigenvalues replaced by their centroid.
inline std::vector<cplx> inverse_roots(const std::vector<cplx>& a, std::size_t D) {
    if (D == 0) return {};
    std::vector<cplx> monic(D + 1);
    for (std::size_t m = 0; m <= D; ++m) monic[m] = a[m] / a[0];
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D));
    for (std::size_t j = 0; j < D; ++j) C(0, static_cast<Eigen::Index>(j)) = -monic[j + 1];
    for (std::size_t i = 1; i < D; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("inverse_roots: eigenvalue iteration failed");
    std::vector<cplx> roots(D);
    for (std::size_t i = 0; i < D; ++i) roots[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];

    // Multiple roots come back as a ring of perturbed eigenvalues whose centroid
    // is accurate to working precision; Newton would only break the symmetry.
    // Isolated roots get one Newton step.
    std::vector<bool> used(D, false);
    for (std::size_t i = 0; i < D; ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cluster{i};
        const double scale = std::max(1.0, std::abs(roots[i]));
        for (std::size_t j = i + 1; j < D; ++j)
            if (!used[j] && std::abs(roots[j] - roots[i]) < 1e-4 * scale) cluster.push_back(j);
        if (cluster.size() > 1) {
            cplx c = 0.0;
            for (auto k : cluster) c += roots[k];
            c /= static_cast<double>(cluster.size());
            for (auto k : cluster) roots[k] = c, used[k] = true;
            continue;
        }
        cplx& z = roots[i];
        cplx d;
        const cplx r = detail::eval_reversed(monic, D, z, &d);
        if (std::abs(d) < 1e-300) continue;
        const cplx next = z - r / d;
        if (std::abs(detail::eval_reversed(monic, D, next, nullptr)) < std::abs(r)) z = next;
    }
    std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
        if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
        return std::arg(x) < std::arg(y);
    });
    return roots;
}

/// Assembles an LPolynomial from already computed A(0..n-1).
inline LPolynomial lpolynomial_from_coefficients(std::string chi_name, u64 q, std::size_t n, std::vector<cplx> coeffs, std::vector<double> errors = {}) {
    LPolynomial L;
    L.chi = std::move(chi_name);
    L.q = q;
    L.n = n;
    L.coeffs = std::move(coeffs);
    L.coeff_error = std::move(errors);
    if (L.coeffs.empty() || std::abs(L.coeffs[0] - cplx(1.0)) > 1e-9) throw std::logic_error("L-polynomial constant term must be 1");
    std::size_t D = L.coeffs.size() - 1;
    while (D > 0 && std::abs(L.coeffs[D]) < kCoefficientZero) --D;
    L.degree = D;
    L.inverse_roots = inverse_roots(L.coeffs, D);
    for (const auto& a : L.inverse_roots) L.root_residual = std::max(L.root_residual, std::abs(L.eval(1.0 / a)));
    return L;
}

/// Coefficients A(m, chi) for m < n from character_sum_Ad, then inverse roots.
inline LPolynomial build_lpolynomial(const Character& chi, unsigned workers = 1) {
    if (chi.is_principal()) throw std::invalid_argument("build_lpolynomial: principal character has no L-polynomial");
    const std::size_t n = chi.group().modulus().degree();
    const RootsOfUnity roots(chi.value_modulus());
    std::vector<cplx> a(n);
    std::vector<double> err(n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto s = character_sum(chi, monic_profile(chi.group(), m, workers), roots);
        a[m] = s.value;
        err[m] = s.error_bound;
    }
    return lpolynomial_from_coefficients(chi.name(), chi.group().field().q(), n, std::move(a), std::move(err));
}

/// L-polynomials of the given characters; A_m profiles are built once.
inline std::vector<LPolynomial> build_lpolynomials(const std::vector<Character>& chars, unsigned workers = 1) {
    if (chars.empty()) return {};
    const UnitGroup& g = chars.front().group();
    const std::size_t n = g.modulus().degree();
    std::vector<PhaseProfile> profiles;
    for (std::size_t m = 0; m < n; ++m) profiles.push_back(monic_profile(g, m, workers));
    const RootsOfUnity roots(g.exponent());
    std::vector<LPolynomial> out(chars.size());
    parallel_for(chars.size(), workers, [&](std::size_t i) {
        const Character& chi = chars[i];
        if (chi.is_principal()) throw std::invalid_argument("build_lpolynomial: principal character has no L-polynomial");
        std::vector<cplx> a(n);
        std::vector<double> err(n);
        for (std::size_t m = 0; m < n; ++m) {
            const auto s = character_sum(chi, profiles[m], roots);
            a[m] = s.value;
            err[m] = s.error_bound;
        }
        out[i] = lpolynomial_from_coefficients(chi.name(), g.field().q(), n, std::move(a), std::move(err));
    });
    return out;
}

/// max_m |coeff of prod (1 - alpha_i z) - A(m, chi)| over m < n.
inline double coefficient_reconstruction_error(const LPolynomial& L) {
    std::vector<cplx> prod{1.0};
    for (const auto& a : L.inverse_roots) {
        std::vector<cplx> next(prod.size() + 1, 0.0);
        for (std::size_t i = 0; i < prod.size(); ++i) {
            next[i] += prod[i];
            next[i + 1] -= a * prod[i];
        }
        prod = std::move(next);
    }
    double err = 0.0;
    for (std::size_t m = 0; m < std::max(prod.size(), L.coeffs.size()); ++m) {
        const cplx x = m < prod.size() ? prod[m] : cplx(0.0);
        const cplx y = m < L.coeffs.size() ? L.coeffs[m] : cplx(0.0);
        err = std::max(err, std::abs(x - y));
    }
    return err;
}

struct RootCheck {
    cplx alpha;
    double modulus = 0.0;
    RootClass cls = RootClass::violation;
};

struct WeilReport {
    std::string chi;
    std::vector<RootCheck> roots;
    double max_deviation = 0.0;  // max over roots of distance to {1, sqrt q}
    double residual = 0.0;
    bool pass = true;
};

/// Every inverse root must have modulus within tol of 1 or sqrt(q).
/// Failures are reported, never thrown.
inline WeilReport verify_weil(const LPolynomial& L, double tol = 1e-6) {
    WeilReport rep;
    rep.chi = L.chi;
    rep.residual = L.root_residual;
    const double sq = std::sqrt(static_cast<double>(L.q));
    for (const auto& a : L.inverse_roots) {
        RootCheck rc;
        rc.alpha = a;
        rc.modulus = std::abs(a);
        const double d1 = std::fabs(rc.modulus - 1.0), d2 = std::fabs(rc.modulus - sq);
        const double dev = std::min(d1, d2);
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (dev > tol)
            rc.cls = RootClass::violation, rep.pass = false;
        else
            rc.cls = d1 <= d2 ? RootClass::unit : RootClass::sqrt_q;
        rep.roots.push_back(rc);
    }
    return rep;
}

struct BoundedSum {
    cplx value;
    double bound = 0.0;
    bool within() const { return std::abs(value) <= bound; }
};

/// sum_{P in I_k} chi(P), paired with the bound (n+1) q^{k/2} / k.
inline BoundedSum prime_char_sum(const Character& chi, std::size_t k, const IrreducibleTable& irr, const RootsOfUnity& roots) {
    if (k < 1 || k >= irr.size()) throw std::out_of_range("prime_char_sum: degree outside irreducible table");
    detail::Neumaier re, im;
    for (const auto& P : irr[k]) {
        const auto v = chi.eval(P);
        if (v.zero) continue;
        const cplx z = roots(v.phase);
        re.add(z.real());
        im.add(z.imag());
    }
    const double n = static_cast<double>(chi.group().modulus().degree());
    const double q = static_cast<double>(chi.group().field().q());
    return {{re.result(), im.result()}, (n + 1.0) * std::pow(q, static_cast<double>(k) / 2.0) / static_cast<double>(k)};
}

inline BoundedSum prime_char_sum(const Character& chi, std::size_t k, const IrreducibleTable& irr) {
    return prime_char_sum(chi, k, irr, RootsOfUnity(chi.value_modulus()));
}

/// sum_{f in A_k} Lambda(f) chi(f) = sum_{l | k} l * sum_{P in I_l} chi(P)^{k/l}.
inline cplx von_mangoldt_sum(const Character& chi, std::size_t k, const IrreducibleTable& irr, const RootsOfUnity& roots) {
    if (k < 1 || k >= irr.size()) throw std::out_of_range("von_mangoldt_sum: degree outside irreducible table");
    const u64 M = chi.value_modulus();
    detail::Neumaier re, im;
    for (std::size_t l = 1; l <= k; ++l) {
        if (k % l) continue;
        const u64 power = k / l;
        for (const auto& P : irr[l]) {
            const auto v = chi.eval(P);
            if (v.zero) continue;
            const cplx z = roots(static_cast<u64>(static_cast<u128>(v.phase) * power % M)) * static_cast<double>(l);
            re.add(z.real());
            im.add(z.imag());
        }
    }
    return {re.result(), im.result()};
}

inline cplx von_mangoldt_sum(const Character& chi, std::size_t k, const IrreducibleTable& irr) {
    return von_mangoldt_sum(chi, k, irr, RootsOfUnity(chi.value_modulus()));
}

/// -sum_i alpha_i^k.
inline cplx negated_power_sum(const std::vector<cplx>& alphas, std::size_t k) {
    cplx s = 0.0;
    for (const auto& a : alphas) s += std::pow(a, static_cast<double>(k));
    return -s;
}

/// prod_{deg P <= D} (1 - chi(P) z^{deg P})^{-1}.
inline cplx truncated_euler_product(const Character& chi, cplx z, const IrreducibleTable& irr) {
    cplx prod = 1.0;
    for (std::size_t k = 1; k < irr.size(); ++k) {
        const cplx zk = std::pow(z, static_cast<double>(k));
        for (const auto& P : irr[k]) {
            const auto v = chi.eval(P);
            if (!v.zero) prod /= (1.0 - v.value() * zk);
        }
    }
    return prod;
}

/// Coefficients of z^0..z^k_max in prod (1 - chi(P) z^{deg P})^{-1} over the
/// irreducibles with min_deg <= deg P <= max_deg, as a truncated formal series.
inline std::vector<cplx> euler_product_series(const Character& chi, const IrreducibleTable& irr, std::size_t min_deg, std::size_t max_deg,
                                              std::size_t k_max) {
    std::vector<cplx> series(k_max + 1, 0.0);
    series[0] = 1.0;
    const RootsOfUnity roots(chi.value_modulus());
    for (std::size_t k = std::max<std::size_t>(min_deg, 1); k <= std::min(max_deg, k_max); ++k) {
        if (k >= irr.size()) throw std::out_of_range("euler_product_series: degree outside irreducible table");
        for (const auto& P : irr[k]) {
            const auto v = chi.eval(P);
            if (v.zero) continue;
            const cplx c = roots(v.phase);
            // Multiplying by 1/(1 - c z^k) is the recurrence s[i] += c s[i-k].
            for (std::size_t i = k; i <= k_max; ++i) series[i] += c * series[i - k];
        }
    }
    return series;
}

struct MertensResult {
    double product = 0.0;
    double ratio = 0.0;  // product / (e^gamma k)
};

/// prod_{deg P <= k} (1 - q^{-deg P})^{-1} = prod_j (1 - q^{-j})^{-pi_j},
/// with exact pi_j and the logarithm accumulated in long double.
inline MertensResult mertens_product(u64 q, unsigned k) {
    if (k < 1) throw std::invalid_argument("mertens_product: k must be >= 1");
    long double log_prod = 0.0L;
    for (unsigned j = 1; j <= k; ++j) {
        const long double pj = static_cast<long double>(necklace_count(q, j));
        log_prod -= pj * std::log1p(-std::pow(static_cast<long double>(q), -static_cast<long double>(j)));
    }
    MertensResult r;
    r.product = static_cast<double>(std::exp(log_prod));
    r.ratio = static_cast<double>(std::exp(log_prod) / (std::exp(static_cast<long double>(std::numbers::egamma_v<long double>)) * k));
    return r;
}

/// The same product as an exact rational (feasible for small q^k only).
inline boost::multiprecision::cpp_rational mertens_product_exact(u64 q, unsigned k) {
    boost::multiprecision::cpp_rational prod = 1;
    for (unsigned j = 1; j <= k; ++j) {
        const BigInt qj = ipow(BigInt(q), j);
        const BigInt pj = necklace_count(q, j);
        const boost::multiprecision::cpp_rational factor(qj, qj - 1);
        for (BigInt i = 0; i < pj; ++i) prod *= factor;
    }
    return prod;
}

}  // namespace ffchar
