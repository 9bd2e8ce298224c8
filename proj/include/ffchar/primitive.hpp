// Primitive elements among low-degree polynomials mod an irreducible Q:
// the indicator decomposition, the density experiment and the sieve
// quantities S_m, T.
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "smooth.hpp"

namespace ffchar {

/// 2 log_q n <= r <= d <= n.
inline bool main_theorem_in_range(u64 q, std::size_t n, std::size_t d, std::size_t r) {
    const double lower = 2.0 * std::log(static_cast<double>(n)) / std::log(static_cast<double>(q));
    return static_cast<double>(r) >= lower - 1e-12 && r <= d && d <= n;
}

struct EpsilonBound {
    double value = 0.0;
    double smooth_part = 0.0;  // rho(d/r) q^{C2 d log d / r^2}
    double short_part = 0.0;   // C3 n q^{-r/2}
    bool in_range = false;
};

/// rho(d/r) q^{C2 d log d / r^2} + C3 n q^{-r/2}. Computed outside the
/// theorem's range too; the flag records it.
inline EpsilonBound epsilon_bound(u64 q, std::size_t d, std::size_t r, std::size_t n, double C2 = 1.0, double C3 = 1.0,
                                  const DickmanTable& rho = default_dickman_table()) {
    if (r < 1) throw std::invalid_argument("epsilon_bound: r must be >= 1");
    const double qd = static_cast<double>(q);
    const double dd = static_cast<double>(d), rd = static_cast<double>(r);
    const double dlogd = d >= 2 ? dd * std::log(dd) : 0.0;
    EpsilonBound e;
    e.smooth_part = rho(dd / rd) * std::pow(qd, C2 * dlogd / (rd * rd));
    e.short_part = C3 * static_cast<double>(n) * std::pow(qd, -rd / 2.0);
    e.value = e.smooth_part + e.short_part;
    e.in_range = main_theorem_in_range(q, n, d, r);
    return e;
}

/// The r in [1, d] minimising epsilon_bound (smallest r on ties).
inline std::size_t best_smoothness(u64 q, std::size_t d, std::size_t n, double C2 = 1.0, double C3 = 1.0) {
    std::size_t best = 1;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t r = 1; r <= std::max<std::size_t>(d, 1); ++r) {
        if (static_cast<double>(d) / static_cast<double>(r) > default_dickman_table().u_max()) continue;
        const double v = epsilon_bound(q, d, r, n, C2, C3).value;
        if (v < best_value) best_value = v, best = r;
    }
    return best;
}

/// d = (2 log_q n + 2 log_q(1/eps)) * C * log(1/eps) / log log(1/eps), rounded up.
inline std::size_t degree_schedule(u64 q, std::size_t n, double eps, double C) {
    if (!(eps > 0.0 && eps < std::exp(-1.0))) throw std::invalid_argument("degree_schedule: eps must lie in (0, 1/e)");
    if (!(C > 0.0)) throw std::invalid_argument("degree_schedule: C must be positive");
    const double lq = std::log(static_cast<double>(q));
    const double li = std::log(1.0 / eps);
    const double d = (2.0 * std::log(static_cast<double>(n)) / lq + 2.0 * li / lq) * C * li / std::log(li);
    return static_cast<std::size_t>(std::ceil(d));
}

namespace detail {

inline const UnitGroup& require_irreducible(const UnitGroup& g, const char* who) {
    if (!g.modulus().irreducible()) throw std::invalid_argument(std::string(who) + ": modulus must be irreducible");
    return g;
}

inline FactoredInteger order_factorization(const UnitGroup& g) { return factor_integer(BigInt(g.order())); }

/// Characters of order dividing m in the cyclic dual group: indices j (N-1)/m.
inline std::vector<u64> characters_killed_by(u64 group_order, u64 m) {
    std::vector<u64> out;
    const u64 step = group_order / m;
    for (u64 j = 0; j < m; ++j) out.push_back(j * step);
    return out;
}

/// Character sums over one profile, computed on demand.
class CharacterSumCache {
public:
    CharacterSumCache(std::shared_ptr<const UnitGroup> g, const PhaseProfile& profile) : g_(std::move(g)), profile_(&profile), roots_(g_->exponent()) {}
    cplx operator()(u64 k) {
        auto it = sums_.find(k);
        if (it != sums_.end()) return it->second;
        const cplx v = character_sum(character_at(g_, k), *profile_, roots_).value;
        sums_.emplace(k, v);
        return v;
    }

private:
    std::shared_ptr<const UnitGroup> g_;
    const PhaseProfile* profile_;
    RootsOfUnity roots_;
    std::map<u64, cplx> sums_;
};

}  // namespace detail

struct IndicatorReport {
    u64 units = 0;
    u64 primitive_count = 0;     // by the power test
    double max_deviation = 0.0;  // max over units |RHS(x) - [x primitive]|
    double indicator_total = 0.0;
    BigInt phi;
    bool pass(double tol = 1e-9) const { return max_deviation <= tol; }
};

/// For every unit x: sum_{m | N-1} mu(m)/m sum_{chi^m = chi_0} chi(x) against
/// the power-test predicate.
inline IndicatorReport primitivity_indicator_check(const std::shared_ptr<const UnitGroup>& g) {
    detail::require_irreducible(*g, "primitivity_indicator_check");
    const u64 N1 = g->order();
    if (N1 > (u64{1} << 20)) throw std::length_error("primitivity_indicator_check: unit group too large for exhaustive check");
    const auto fac = detail::order_factorization(*g);
    const RootsOfUnity roots(N1);
    struct Term {
        double weight;
        std::vector<Character> chars;
    };
    std::vector<Term> terms;
    for (const auto& m : squarefree_divisors(fac)) {
        const u64 mv = static_cast<u64>(m.value);
        Term t{static_cast<double>(m.mobius()) / static_cast<double>(mv), {}};
        for (u64 k : detail::characters_killed_by(N1, mv)) t.chars.push_back(character_at(g, k));
        terms.push_back(std::move(t));
    }
    IndicatorReport rep;
    rep.phi = fac.phi();
    const Field& F = g->field();
    const Poly& Q = g->modulus().poly();
    const Poly& gen = g->components()[0].generator;
    Poly x = poly::rem(F, Poly::constant(1), Q);
    detail::Neumaier total;
    for (u64 L = 0; L < N1; ++L, x = poly::mul_mod(F, x, gen, Q)) {
        const auto log = g->dlog(x);
        if (!log) throw std::logic_error("primitivity_indicator_check: unit without logarithm");
        cplx rhs = 0.0;
        for (const auto& t : terms) {
            cplx inner = 0.0;
            for (const auto& chi : t.chars) inner += roots(chi.phase_of_log(*log));
            rhs += t.weight * inner;
        }
        const bool prim = is_primitive(g->modulus(), x, fac);
        rep.primitive_count += prim;
        rep.max_deviation = std::max(rep.max_deviation, std::abs(rhs - (prim ? 1.0 : 0.0)));
        total.add(rhs.real());
        ++rep.units;
    }
    rep.indicator_total = total.result();
    return rep;
}

/// Count of primitive f in A_d by the power test, chunked as in monic_profile.
inline u64 count_primitive(const UnitGroup& g, std::size_t d, const FactoredInteger& n_minus_1, unsigned workers = 1) {
    detail::require_irreducible(g, "count_primitive");
    MonicRange range(g.field(), d);
    const u64 chunks = (range.size() + kEnumerationChunk - 1) / kEnumerationChunk;
    std::vector<u64> counts(chunks, 0);
    parallel_for(chunks, workers, [&](std::size_t c) {
        const u64 begin = c * kEnumerationChunk;
        const u64 end = std::min(range.size(), begin + kEnumerationChunk);
        range.for_each(begin, end, [&](u64, const Poly& f) { counts[c] += is_primitive(g.modulus(), f, n_minus_1); });
    });
    u64 total = 0;
    for (u64 c : counts) total += c;
    return total;
}

struct DecompositionTerm {
    BigInt m;
    int mobius = 1;
    cplx inner;      // sum_{chi^m = chi_0} A(d, chi)
    cplx weighted;   // mu(m)/m * inner
};

struct DecompositionReport {
    std::size_t d = 0;
    u64 direct_count = 0;
    Rational main_term;            // A(d, chi_0) phi(N-1)/(N-1)
    std::vector<DecompositionTerm> terms;
    cplx reconstructed;            // sum of all weighted terms
    double error = 0.0;            // |reconstructed - direct_count|
};

/// |Q(d)| = sum_{m | N-1} mu(m)/m sum_{chi^m = chi_0} A(d, chi).
inline DecompositionReport indicator_decomposition(const std::shared_ptr<const UnitGroup>& g, std::size_t d, unsigned workers = 1) {
    detail::require_irreducible(*g, "indicator_decomposition");
    const auto fac = detail::order_factorization(*g);
    const auto profile = monic_profile(*g, d, workers);
    detail::CharacterSumCache sums(g, profile);
    DecompositionReport rep;
    rep.d = d;
    rep.direct_count = count_primitive(*g, d, fac, workers);
    rep.main_term = Rational(BigInt(profile.units()) * fac.phi(), fac.value());
    for (const auto& m : squarefree_divisors(fac)) {
        DecompositionTerm t;
        t.m = m.value;
        t.mobius = m.mobius();
        for (u64 k : detail::characters_killed_by(g->order(), static_cast<u64>(m.value))) t.inner += sums(k);
        t.weighted = static_cast<double>(t.mobius) / static_cast<double>(m.value) * t.inner;
        rep.reconstructed += t.weighted;
        rep.terms.push_back(std::move(t));
    }
    rep.error = std::abs(rep.reconstructed - static_cast<double>(rep.direct_count));
    return rep;
}

struct DensityReport {
    u64 q = 0;
    std::size_t n = 0, d = 0, r = 0;
    u64 count = 0;                  // |Q(d)| by the power test
    BigInt q_to_d;
    Rational density;               // |Q(d)| / q^d
    Rational target;                // phi(N-1)/(N-1)
    Rational deviation;             // |density - target|
    std::size_t omega = 0;
    EpsilonBound eps;
    double predicted_bound = 0.0;   // 2^omega eps
    std::optional<double> max_char_norm;  // max_{chi != chi_0} |A(d, chi)| / q^d
    std::optional<double> exact_bound;    // 2^omega max_char_norm + principal defect
    std::optional<bool> exact_bound_holds;
};

/// Density of primitive elements among A_d. The exact bound follows the
/// indicator decomposition: the non-principal part contributes at most
/// 2^omega max |A(d, chi)| / q^d, the principal part |A(d, chi_0)/q^d - 1|
/// times phi/(N-1) (zero for d < n).
inline DensityReport density_experiment(const std::shared_ptr<const UnitGroup>& g, std::size_t d, std::optional<std::size_t> r = std::nullopt,
                                        double C2 = 1.0, double C3 = 1.0, unsigned workers = 1, bool exact_characters = true) {
    detail::require_irreducible(*g, "density_experiment");
    const auto fac = detail::order_factorization(*g);
    DensityReport rep;
    rep.q = g->field().q();
    rep.n = g->modulus().degree();
    rep.d = d;
    rep.r = r.value_or(best_smoothness(rep.q, d, rep.n, C2, C3));
    rep.count = count_primitive(*g, d, fac, workers);
    rep.q_to_d = ipow(BigInt(rep.q), static_cast<unsigned>(d));
    rep.density = Rational(BigInt(rep.count), rep.q_to_d);
    rep.target = Rational(fac.phi(), fac.value());
    rep.deviation = abs(rep.density - rep.target);
    rep.omega = fac.omega();
    rep.eps = epsilon_bound(rep.q, d, rep.r, rep.n, C2, C3);
    rep.predicted_bound = std::ldexp(rep.eps.value, static_cast<int>(rep.omega));
    if (exact_characters) {
        const auto profile = monic_profile(*g, d, workers);
        const auto sums = all_character_sums(g, profile, workers);
        const double qd = rep.q_to_d.convert_to<double>();
        double mx = 0.0;
        for (std::size_t k = 1; k < sums.size(); ++k) mx = std::max(mx, std::abs(sums[k].value) / qd);
        rep.max_char_norm = mx;
        const Rational principal_defect = abs(Rational(BigInt(profile.units()), rep.q_to_d) - Rational(1, 1)) * rep.target;
        rep.exact_bound = std::ldexp(mx, static_cast<int>(rep.omega)) + principal_defect.to_double();
        rep.exact_bound_holds = rep.deviation.to_double() <= *rep.exact_bound * (1.0 + 1e-12) + 1e-15;
    }
    return rep;
}

struct SieveTerm {
    BigInt m;
    u64 S = 0;                  // #{f in A_d unit : U(f) = 0 mod m}
    Rational expected;          // A / m
    double deviation = 0.0;     // |S_m - A/m|
    cplx identity;              // (1/m) sum_{chi^m = chi_0} A(d, chi)
    double identity_error = 0.0;
    bool within_eps = false;    // |S_m - A/m| <= q^d eps
};

struct SieveReport {
    u64 q = 0;
    std::size_t n = 0, d = 0, r = 0;
    BigInt A;                   // q^d
    std::vector<SieveTerm> terms;
    u64 T = 0;                  // #{f : gcd(U(f), radical) = 1}
    double B_observed = 0.0;    // max_m |S_m - A/m|
    std::size_t l = 0;          // number of distinct primes of N-1
    EpsilonBound eps;
    double max_identity_error = 0.0;
    std::optional<double> lower_bound;  // c1 A/(log l + 1)^2 - c2 l^2 B_observed
    std::optional<bool> lower_bound_holds;
};

/// Gamma = A_d, U = discrete log base the generator, W = 1. Non-units have no
/// logarithm and are left out of every S_m and of T.
inline SieveReport sieve_quantities(const std::shared_ptr<const UnitGroup>& g, std::size_t d, std::optional<std::size_t> r = std::nullopt,
                                    double C2 = 1.0, double C3 = 1.0, std::optional<double> c1 = std::nullopt,
                                    std::optional<double> c2 = std::nullopt, unsigned workers = 1) {
    detail::require_irreducible(*g, "sieve_quantities");
    const auto fac = detail::order_factorization(*g);
    const auto profile = monic_profile(*g, d, workers);
    detail::CharacterSumCache sums(g, profile);
    SieveReport rep;
    rep.q = g->field().q();
    rep.n = g->modulus().degree();
    rep.d = d;
    rep.r = r.value_or(best_smoothness(rep.q, d, rep.n, C2, C3));
    rep.A = ipow(BigInt(rep.q), static_cast<unsigned>(d));
    rep.l = fac.omega();
    rep.eps = epsilon_bound(rep.q, d, rep.r, rep.n, C2, C3);
    const double Ad = rep.A.convert_to<double>();
    const u64 rad = static_cast<u64>(fac.radical());
    for (std::size_t i = 0; i < profile.logs.size(); ++i)
        if (std::gcd(profile.logs[i], rad) == 1) rep.T += profile.counts[i];
    for (const auto& m : squarefree_divisors(fac)) {
        SieveTerm t;
        t.m = m.value;
        const u64 mv = static_cast<u64>(m.value);
        for (std::size_t i = 0; i < profile.logs.size(); ++i)
            if (profile.logs[i] % mv == 0) t.S += profile.counts[i];
        t.expected = Rational(rep.A, m.value);
        t.deviation = abs(Rational(BigInt(t.S), 1) - t.expected).to_double();
        for (u64 k : detail::characters_killed_by(g->order(), mv)) t.identity += sums(k);
        t.identity /= static_cast<double>(mv);
        t.identity_error = std::abs(t.identity - static_cast<double>(t.S));
        t.within_eps = t.deviation <= Ad * rep.eps.value;
        rep.B_observed = std::max(rep.B_observed, t.deviation);
        rep.max_identity_error = std::max(rep.max_identity_error, t.identity_error);
        rep.terms.push_back(std::move(t));
    }
    if (c1 && c2) {
        const double ll = std::log(static_cast<double>(std::max<std::size_t>(rep.l, 1))) + 1.0;
        const double l = static_cast<double>(rep.l);
        rep.lower_bound = *c1 * Ad / (ll * ll) - *c2 * l * l * rep.B_observed;
        rep.lower_bound_holds = static_cast<double>(rep.T) >= *rep.lower_bound;
    }
    return rep;
}

}  // namespace ffchar
