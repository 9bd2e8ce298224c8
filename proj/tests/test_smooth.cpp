#include <gtest/gtest.h>

#include <cmath>

#include "ffchar/lfun.hpp"
#include "ffchar/smooth.hpp"

using namespace ffchar;

namespace {

// Oracle: u rho'(u) = -rho(u-1) via rho(u) = rho(k) - int_k^u rho(t-1)/t dt on a
// grid aligned with the integers, trapezoid rule on each unit panel, then one
// Richardson step between step sizes 1/N and 1/(2N).
std::vector<double> rho_trapezoid(int N, int u_max) {
    std::vector<double> v(static_cast<std::size_t>(N * u_max) + 1, 1.0);
    const double h = 1.0 / N;
    for (int i = N + 1; i <= N * u_max; ++i) {
        const double t0 = (i - 1) * h, t1 = i * h;
        v[i] = v[i - 1] - 0.5 * h * (v[i - 1 - N] / t0 + v[i - N] / t1);
    }
    return v;
}

double rho_oracle(double u, const std::vector<double>& coarse, const std::vector<double>& fine, int N) {
    const auto i = static_cast<std::size_t>(std::lround(u * N));
    return (4.0 * fine[2 * i] - coarse[i]) / 3.0;
}

}  // namespace

TEST(SmoothCount, SmallValues) {
    EXPECT_EQ(smooth_count(2, 2, 1), 3);  // t^2, t(t+1), (t+1)^2
    EXPECT_EQ(smooth_count(2, 0, 1), 1);
    EXPECT_EQ(smooth_count(3, 0, 4), 1);
    for (std::size_t d = 1; d <= 12; ++d) EXPECT_EQ(smooth_count(2, d, 1), BigInt(d + 1));
    EXPECT_THROW(smooth_count(2, 3, 0), std::invalid_argument);
}

TEST(SmoothCount, MatchesEnumeration) {
    for (u64 q : {2ULL, 3ULL, 4ULL}) {
        const Field F = Field::of_order(q);
        const std::size_t dmax = q == 2 ? 10 : (q == 3 ? 6 : 5);
        for (std::size_t r = 1; r <= dmax; ++r) {
            const auto table = smooth_count_table(q, dmax, r);
            for (std::size_t d = 1; d <= dmax; ++d) {
                u64 n = 0;
                for (const auto& f : enumerate_monic(F, d)) n += is_smooth(F, f, r);
                ASSERT_EQ(table[d], BigInt(n)) << q << " d=" << d << " r=" << r;
            }
        }
    }
}

TEST(SmoothCount, MonotoneAndSaturates) {
    for (u64 q : {2ULL, 3ULL, 5ULL}) {
        for (std::size_t d = 1; d <= 30; ++d) {
            BigInt prev = 0;
            for (std::size_t r = 1; r <= d + 2; ++r) {
                const BigInt c = smooth_count(q, d, r);
                EXPECT_GE(c, prev);
                prev = c;
                if (r >= d) { EXPECT_EQ(c, ipow(BigInt(q), static_cast<unsigned>(d))); }
            }
        }
    }
}

TEST(SmoothProfile, MultisetsMatchFiltering) {
    const auto g = standard_unit_group(2, 5);
    const Field& F = g->field();
    const auto irr = irreducibles_up_to(F, 10);
    for (std::size_t d = 1; d <= 10; ++d) {
        for (std::size_t r = 1; r <= d; ++r) {
            std::vector<u64> logs;
            u64 zeros = 0;
            for (const auto& f : enumerate_monic(F, d)) {
                if (!is_smooth(F, f, r)) continue;
                if (auto l = g->dlog(f))
                    logs.push_back(*l);
                else
                    ++zeros;
            }
            const auto want = PhaseProfile::from_logs(logs, zeros);
            const auto got = smooth_profile(*g, d, r, irr, 2);
            ASSERT_EQ(got.logs, want.logs) << d << " " << r;
            ASSERT_EQ(got.counts, want.counts);
            ASSERT_EQ(got.non_units, want.non_units);
            ASSERT_EQ(BigInt(got.total), smooth_count(2, d, r));
        }
    }
}

TEST(SmoothProfile, SumsAreSeriesCoefficients) {
    const auto g = standard_unit_group(3, 3);
    const auto irr = irreducibles_up_to(g->field(), 6);
    for (u64 k = 1; k < g->order(); k += 3) {
        const auto chi = character_at(g, k);
        for (std::size_t r = 1; r <= 6; ++r) {
            const auto series = euler_product_series(chi, irr, 1, r, 6);
            for (std::size_t d = 0; d <= 6; ++d)
                EXPECT_NEAR(std::abs(smooth_char_sum(chi, d, r, irr).value - series[d]), 0.0, 1e-8) << chi.name() << " d=" << d << " r=" << r;
        }
    }
}

TEST(SmoothProfile, WorkerCountIrrelevant) {
    const auto g = standard_unit_group(2, 13);
    const auto irr = irreducibles_up_to(g->field(), 5);
    const auto a = smooth_profile(*g, 14, 5, irr, 1), b = smooth_profile(*g, 14, 5, irr, 4);
    EXPECT_EQ(a.logs, b.logs);
    EXPECT_EQ(a.counts, b.counts);
}

TEST(Dickman, ElementaryRange) {
    EXPECT_EQ(dickman_rho(0.0), 1.0);
    EXPECT_EQ(dickman_rho(0.5), 1.0);
    EXPECT_EQ(dickman_rho(1.0), 1.0);
    for (double u = 1.0; u <= 2.0; u += 0.03125) EXPECT_NEAR(dickman_rho(u), 1.0 - std::log(u), 1e-12) << u;
    EXPECT_THROW(dickman_rho(-0.1), std::domain_error);
    EXPECT_THROW(dickman_rho(30.5), std::domain_error);
}

TEST(Dickman, FrozenHighPrecisionValues) {
    // Reference values from a 150-digit evaluation of the same delay equation.
    const std::vector<std::pair<double, double>> ref{
        {2.0, 0.30685281944005469058},    {2.5, 0.13031956183225074561},    {3.0, 0.048608388291131566907},
        {3.5, 0.016229593243235991631},   {4.0, 0.0049109256477608323527},  {5.0, 0.00035472470045603972983},
        {6.0, 0.000019649696353955289652}, {7.25, 3.8977236839110946922e-7}, {10.0, 2.7701718377259589888e-11},
        {15.0, 7.5899080042980595047e-20}, {20.0, 2.4617828287649180559e-29}, {25.0, 1.6658044236715868314e-39},
        {30.0, 3.2690443250819011055e-50}};
    for (auto [u, want] : ref) EXPECT_NEAR(dickman_rho(u) / want, 1.0, 1e-8) << u;
}

TEST(Dickman, AgreesWithTrapezoidOracle) {
    const int N = 1024;
    const auto coarse = rho_trapezoid(N, 6), fine = rho_trapezoid(2 * N, 6);
    for (double u = 1.0; u <= 6.0; u += 0.0625) {
        const double o = rho_oracle(u, coarse, fine, N);
        EXPECT_NEAR(dickman_rho(u) / o, 1.0, 1e-8) << u;
    }
}

TEST(Dickman, DecayAndResidual) {
    const auto& t = default_dickman_table();
    double prev = 1.0;
    for (double u = 1.0; u <= 30.0; u += 0.25) {
        const double v = t(u);
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, prev);
        prev = v;
        if (u >= 10.0) { EXPECT_LE(v, std::exp(-u * std::log(u))); }
        EXPECT_LE(t.residual(u), 1e-6 * std::max(v, 1e-300) + 1e-300) << u;
    }
    EXPECT_EQ(t.residual(0.5), 0.0);
}

TEST(Soundararajan, SaturatedRatioIsOne) {
    for (std::size_t d = 1; d <= 20; ++d) {
        const auto rep = soundararajan_check(2, d, d);
        EXPECT_NEAR(rep.ratio, 1.0, 1e-15);
        EXPECT_EQ(rep.exact, ipow(BigInt(2), static_cast<unsigned>(d)));
    }
    EXPECT_FALSE(soundararajan_in_range(2, 20, 3));
    EXPECT_TRUE(soundararajan_in_range(2, 20, 11));
    EXPECT_FALSE(soundararajan_in_range(2, 20, 21));
}

TEST(Soundararajan, RatioTendsToOneInRange) {
    for (std::size_t d : {40u, 60u, 80u}) {
        for (std::size_t r = 1; r <= d; ++r) {
            if (!soundararajan_in_range(2, d, r)) continue;
            const auto rep = soundararajan_check(2, d, r);
            EXPECT_GT(rep.ratio, 0.5) << d << " " << r;
            EXPECT_LT(rep.ratio, 4.0) << d << " " << r;
        }
    }
}
