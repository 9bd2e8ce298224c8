// Smooth polynomials: exact counts N(d, r), smooth character sums, the
// Dickman function and the comparison N(d, r) ~ q^d rho(d/r).
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "characters.hpp"

namespace ffchar {

/// N(d, r) for d = 0..d_max: coefficients of prod_{k<=r} (1 - z^k)^{-pi_k},
/// in exact integer arithmetic.
inline std::vector<BigInt> smooth_count_table(u64 q, std::size_t d_max, std::size_t r) {
    if (r < 1) throw std::invalid_argument("smooth_count: r must be >= 1");
    std::vector<BigInt> series(d_max + 1, 0);
    series[0] = 1;
    for (std::size_t k = 1; k <= std::min(r, d_max); ++k) {
        const BigInt pk = necklace_count(q, static_cast<unsigned>(k));
        // (1 - z^k)^{-pk} = sum_j C(pk + j - 1, j) z^{kj}
        std::vector<BigInt> factor(d_max / k + 1);
        factor[0] = 1;
        for (std::size_t j = 1; j < factor.size(); ++j) factor[j] = factor[j - 1] * (pk + j - 1) / j;
        std::vector<BigInt> next(d_max + 1, 0);
        for (std::size_t i = 0; i <= d_max; ++i) {
            if (series[i] == 0) continue;
            for (std::size_t j = 0; i + j * k <= d_max; ++j) next[i + j * k] += series[i] * factor[j];
        }
        series = std::move(next);
    }
    return series;
}

inline BigInt smooth_count(u64 q, std::size_t d, std::size_t r) { return smooth_count_table(q, d, r)[d]; }

namespace detail {

struct SmoothGenerator {
    const UnitGroup* group;
    std::vector<std::size_t> degree;                 // per irreducible
    std::vector<std::vector<u64>> logs;              // component logs per irreducible
    std::vector<bool> unit;                          // false if P divides Q
    std::vector<u64> orders;

    u64 pack(const std::vector<u64>& state) const {
        u64 packed = 0;
        for (std::size_t i = 0; i < state.size(); ++i) packed += state[i] * group->radices()[i];
        return packed;
    }

    // Multisets of irreducibles with index >= start and total degree budget.
    void walk(std::size_t start, std::size_t budget, std::vector<u64>& state, bool is_unit, std::vector<u64>& out, u64& non_units) const {
        if (budget == 0) {
            if (is_unit)
                out.push_back(pack(state));
            else
                ++non_units;
            return;
        }
        for (std::size_t j = start; j < degree.size() && degree[j] <= budget; ++j) {
            std::vector<u64> next = state;
            if (unit[j])
                for (std::size_t c = 0; c < next.size(); ++c) next[c] = (next[c] + logs[j][c]) % orders[c];
            walk(j, budget - degree[j], next, is_unit && unit[j], out, non_units);
        }
    }
};

}  // namespace detail

/// Profile of P(d, r), the r-smooth monic polynomials of degree d, generated
/// as multisets of irreducibles of degree <= r (never by filtering A_d).
/// Work is split on the first factor.
inline PhaseProfile smooth_profile(const UnitGroup& g, std::size_t d, std::size_t r, const IrreducibleTable& irr, unsigned workers = 1) {
    if (r < 1) throw std::invalid_argument("smooth_profile: r must be >= 1");
    const std::size_t rmax = std::min(r, d);
    if (d > 0 && irr.size() <= rmax) throw std::invalid_argument("smooth_profile: irreducible table too short");
    detail::SmoothGenerator gen;
    gen.group = &g;
    for (const auto& c : g.components()) gen.orders.push_back(c.order);
    for (std::size_t k = 1; k <= rmax; ++k) {
        for (const auto& P : irr[k]) {
            gen.degree.push_back(k);
            const auto l = g.dlog(P);
            gen.unit.push_back(l.has_value());
            gen.logs.push_back(l ? g.unpack(*l) : std::vector<u64>(gen.orders.size(), 0));
        }
    }
    if (d == 0) return PhaseProfile::from_logs({0}, 0);
    const std::size_t first = gen.degree.size();
    std::vector<std::vector<u64>> parts(first);
    std::vector<u64> zeros(first, 0);
    parallel_for(first, workers, [&](std::size_t j) {
        if (gen.degree[j] > d) return;
        std::vector<u64> state(gen.orders.size(), 0);
        if (gen.unit[j]) state = gen.logs[j];
        gen.walk(j, d - gen.degree[j], state, gen.unit[j], parts[j], zeros[j]);
    });
    std::vector<u64> all;
    u64 nz = 0;
    for (std::size_t j = 0; j < first; ++j) {
        all.insert(all.end(), parts[j].begin(), parts[j].end());
        nz += zeros[j];
    }
    return PhaseProfile::from_logs(std::move(all), nz);
}

/// sum_{f in P(d, r)} chi(f).
inline CharSum smooth_char_sum(const Character& chi, std::size_t d, std::size_t r, const IrreducibleTable& irr, unsigned workers = 1) {
    return character_sum(chi, smooth_profile(chi.group(), d, r, irr, workers));
}

/// The Dickman function on [0, u_max], solved panel by panel on [k, k+1].
///
/// On each panel rho is represented by its values at Chebyshev-Lobatto nodes
/// (polynomial degree 16 by default). Node values come from the integral form
/// u rho(u) = int_{u-1}^{u} rho(t) dt: the part over the previous panel is
/// known, the part over the current panel is resolved by fixed-point
/// iteration (contraction factor at most 1/k). Every quantity stays positive,
/// so relative accuracy holds as rho decays.
class DickmanTable {
public:
    explicit DickmanTable(double u_max = 30.0, unsigned degree = 16) : degree_(degree) {
        if (!(u_max >= 1.0)) throw std::invalid_argument("DickmanTable: u_max must be >= 1");
        if (degree < 4 || degree > 64) throw std::invalid_argument("DickmanTable: degree must be in [4, 64]");
        panels_ = static_cast<std::size_t>(std::ceil(u_max));
        u_max_ = static_cast<double>(panels_);
        build_nodes();
        values_.assign(panels_, std::vector<long double>(degree_ + 1, 1.0L));
        for (std::size_t k = 1; k < panels_; ++k) solve_panel(k);
    }

    double u_max() const { return u_max_; }
    unsigned degree() const { return degree_; }
    /// Panel width (the natural delay of the equation).
    double step() const { return 1.0; }

    double operator()(double u) const {
        if (!(u >= 0.0)) throw std::domain_error("dickman_rho: u must be >= 0");
        if (u <= 1.0) return 1.0;
        if (u > u_max_) throw std::domain_error("dickman_rho: u beyond table range");
        std::size_t k = static_cast<std::size_t>(std::floor(u));
        if (k >= panels_) k = panels_ - 1;
        return static_cast<double>(interp(k, static_cast<long double>(u) - static_cast<long double>(k)));
    }

    /// |u rho(u) - int_{u-1}^{u} rho(t) dt| with the integral evaluated by
    /// Gauss-Legendre on the interpolant, split at the panel boundary.
    double residual(double u) const {
        if (u <= 1.0) return 0.0;
        const long double lo = static_cast<long double>(u) - 1.0L;
        const long double hi = static_cast<long double>(u);
        const long double mid = std::floor(hi) == hi ? hi : std::floor(hi);
        long double integral = integrate(lo, mid) + integrate(mid, hi);
        return static_cast<double>(std::fabs(hi * static_cast<long double>((*this)(u)) - integral));
    }

private:
    void build_nodes() {
        const unsigned N = degree_;
        nodes_.resize(N + 1);
        weights_.resize(N + 1);
        for (unsigned j = 0; j <= N; ++j) {
            nodes_[j] = (1.0L - std::cos(std::numbers::pi_v<long double> * j / N)) / 2.0L;
            weights_[j] = (j % 2 ? -1.0L : 1.0L) * ((j == 0 || j == N) ? 0.5L : 1.0L);
        }
        // Gauss-Legendre on [0, 1], exact for the degree-N interpolant.
        const unsigned G = N / 2 + 4;
        gl_x_.resize(G);
        gl_w_.resize(G);
        for (unsigned i = 0; i < G; ++i) {
            long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (G + 0.5L));
            long double dp = 0;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1, p1 = x;
                for (unsigned m = 2; m <= G; ++m) {
                    const long double p2 = ((2.0L * m - 1) * x * p1 - (m - 1.0L) * p0) / m;
                    p0 = p1;
                    p1 = p2;
                }
                dp = G * (x * p1 - p0) / (x * x - 1.0L);
                const long double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-19L) break;
            }
            gl_x_[i] = (1.0L - x) / 2.0L;
            gl_w_[i] = 1.0L / ((1.0L - x * x) * dp * dp);
        }
        // cumulative[j][i] = int_0^{s_j} l_i(s) ds for the Lagrange basis l_i.
        cumulative_.assign(N + 1, std::vector<long double>(N + 1, 0.0L));
        std::vector<long double> unit(N + 1);
        for (unsigned i = 0; i <= N; ++i) {
            std::fill(unit.begin(), unit.end(), 0.0L);
            unit[i] = 1.0L;
            for (unsigned j = 0; j <= N; ++j) {
                long double acc = 0;
                for (unsigned g = 0; g < G; ++g) acc += gl_w_[g] * nodes_[j] * bary(unit, gl_x_[g] * nodes_[j]);
                cumulative_[j][i] = acc;
            }
        }
    }

    long double bary(const std::vector<long double>& v, long double s) const {
        long double num = 0, den = 0;
        for (unsigned j = 0; j <= degree_; ++j) {
            const long double diff = s - nodes_[j];
            if (diff == 0.0L) return v[j];
            const long double t = weights_[j] / diff;
            num += t * v[j];
            den += t;
        }
        return num / den;
    }

    long double interp(std::size_t k, long double s) const { return bary(values_[k], s); }

    // int_0^{s_j} of panel values v.
    long double partial(const std::vector<long double>& v, unsigned j) const {
        long double acc = 0;
        for (unsigned i = 0; i <= degree_; ++i) acc += cumulative_[j][i] * v[i];
        return acc;
    }

    void solve_panel(std::size_t k) {
        const unsigned N = degree_;
        const auto& prev = values_[k - 1];
        const long double prev_total = partial(prev, N);
        std::vector<long double> known(N + 1);
        for (unsigned j = 0; j <= N; ++j) known[j] = prev_total - partial(prev, j);  // int_{k-1+s_j}^{k} rho
        auto& cur = values_[k];
        std::fill(cur.begin(), cur.end(), prev[N]);
        for (int it = 0; it < 200; ++it) {
            long double change = 0;
            std::vector<long double> next(N + 1);
            for (unsigned j = 0; j <= N; ++j) {
                const long double u = static_cast<long double>(k) + nodes_[j];
                next[j] = (known[j] + partial(cur, j)) / u;
                change = std::max(change, std::fabs(next[j] - cur[j]) / next[j]);
            }
            cur = std::move(next);
            if (change < 1e-19L) break;
        }
    }

    long double integrate(long double a, long double b) const {
        if (b <= a) return 0.0L;
        long double acc = 0;
        for (std::size_t g = 0; g < gl_x_.size(); ++g) {
            const long double t = a + (b - a) * gl_x_[g];
            acc += gl_w_[g] * eval_ld(t);
        }
        return acc * (b - a);
    }

    long double eval_ld(long double u) const {
        if (u <= 1.0L) return 1.0L;
        std::size_t k = static_cast<std::size_t>(std::floor(u));
        if (k >= panels_) k = panels_ - 1;
        return interp(k, u - static_cast<long double>(k));
    }

    unsigned degree_;
    std::size_t panels_ = 0;
    double u_max_ = 0;
    std::vector<long double> nodes_, weights_, gl_x_, gl_w_;
    std::vector<std::vector<long double>> cumulative_;
    std::vector<std::vector<long double>> values_;
};

inline const DickmanTable& default_dickman_table() {
    static const DickmanTable table(30.0, 16);
    return table;
}

/// rho(u) for 0 <= u <= 30 from the default table.
inline double dickman_rho(double u) { return default_dickman_table()(u); }

struct SoundararajanReport {
    u64 q = 0;
    std::size_t d = 0, r = 0;
    BigInt exact;
    double prediction = 0.0;          // q^d rho(d/r)
    double ratio = 0.0;               // N(d, r) / prediction
    std::optional<double> normalized_exponent;  // log_q(ratio) r^2 / (d log d)
    bool in_range = false;            // log_q(d log^2 d) <= r <= d
};

inline bool soundararajan_in_range(u64 q, std::size_t d, std::size_t r) {
    if (r > d) return false;
    if (d < 2) return r >= 1;
    const double ld = std::log(static_cast<double>(d));
    const double lower = std::log(static_cast<double>(d) * ld * ld) / std::log(static_cast<double>(q));
    return static_cast<double>(r) >= lower;
}

inline SoundararajanReport soundararajan_check(u64 q, std::size_t d, std::size_t r, const DickmanTable& rho = default_dickman_table()) {
    using boost::multiprecision::cpp_bin_float_50;
    SoundararajanReport rep;
    rep.q = q;
    rep.d = d;
    rep.r = r;
    rep.exact = smooth_count(q, d, r);
    const double u = static_cast<double>(d) / static_cast<double>(r);
    const double rv = rho(u);
    const cpp_bin_float_50 qd = boost::multiprecision::pow(cpp_bin_float_50(q), static_cast<int>(d));
    rep.prediction = static_cast<double>(qd * rv);
    rep.ratio = static_cast<double>(cpp_bin_float_50(rep.exact) / (qd * rv));
    if (d >= 2) {
        const double ld = std::log(static_cast<double>(d));
        rep.normalized_exponent = std::log(rep.ratio) / std::log(static_cast<double>(q)) * static_cast<double>(r * r) / (static_cast<double>(d) * ld);
    }
    rep.in_range = soundararajan_in_range(q, d, r);
    return rep;
}

}  // namespace ffchar
