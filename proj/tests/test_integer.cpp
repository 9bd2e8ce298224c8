#include <gtest/gtest.h>

#include <random>

#include "ffchar/integer.hpp"

using namespace ffchar;

namespace {

// Independent oracle: plain trial division.
std::vector<std::pair<u64, unsigned>> trial_factor(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

TEST(FactorInteger, SmallExamples) {
    const auto f15 = factor_integer(15);
    ASSERT_EQ(f15.factors().size(), 2u);
    EXPECT_EQ(f15.factors()[0].prime, 3);
    EXPECT_EQ(f15.factors()[1].prime, 5);
    EXPECT_EQ(f15.phi(), 8);
    EXPECT_EQ(f15.omega(), 2u);

    const auto f8191 = factor_integer(8191);
    EXPECT_EQ(f8191.omega(), 1u);
    EXPECT_EQ(f8191.phi(), 8190);

    const auto f1 = factor_integer(1);
    EXPECT_TRUE(f1.factors().empty());
    EXPECT_EQ(f1.phi(), 1);
    EXPECT_THROW(factor_integer(0), std::invalid_argument);
}

TEST(FactorInteger, MatchesTrialDivision) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const u64 n = rng() % 1'000'000'000'000ULL + 1;
        const auto fac = factor_integer(BigInt(n));
        const auto want = trial_factor(n);
        ASSERT_EQ(fac.factors().size(), want.size()) << n;
        for (std::size_t j = 0; j < want.size(); ++j) {
            EXPECT_EQ(fac.factors()[j].prime, want[j].first) << n;
            EXPECT_EQ(fac.factors()[j].exponent, want[j].second) << n;
        }
    }
}

TEST(FactorInteger, LargeCofactorsNeedPollard) {
    // q^n - 1 values at the top of the desk-scale range.
    for (unsigned e : {59u, 61u, 62u, 64u, 67u, 71u, 79u, 80u}) {
        const BigInt m = ipow(BigInt(2), e) - 1;
        const auto fac = factor_integer(m);
        BigInt prod = 1;
        for (const auto& pp : fac.factors()) {
            EXPECT_TRUE(is_prime(pp.prime)) << pp.prime;
            prod *= ipow(pp.prime, pp.exponent);
        }
        EXPECT_EQ(prod, m);
    }
    // Semiprime with two ~2^40 factors.
    const BigInt p("1099511627791"), q("1099511627803");
    ASSERT_TRUE(is_prime(p));
    ASSERT_TRUE(is_prime(q));
    const auto fac = factor_integer(p * q);
    ASSERT_EQ(fac.factors().size(), 2u);
    EXPECT_EQ(fac.factors()[0].prime, p);
    EXPECT_EQ(fac.factors()[1].prime, q);
}

TEST(Primality, AgreesWithSieve) {
    const u64 limit = 200000;
    std::vector<bool> comp(limit + 1, false);
    for (u64 i = 2; i * i <= limit; ++i)
        if (!comp[i])
            for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
    for (u64 n = 0; n <= limit; ++n) ASSERT_EQ(is_prime(n), n >= 2 && !comp[n]) << n;
    // Strong pseudoprimes to several small bases.
    EXPECT_FALSE(is_prime(u64{3215031751}));
    EXPECT_FALSE(is_prime(u64{3825123056546413051ULL}));
    EXPECT_TRUE(is_prime(u64{18446744073709551557ULL}));
}

TEST(Mobius, Basics) {
    EXPECT_EQ(mobius(factor_integer(1)), 1);
    EXPECT_EQ(mobius(factor_integer(6)), 1);
    EXPECT_EQ(mobius(factor_integer(4)), 0);
    EXPECT_EQ(mobius(factor_integer(30)), -1);
}

TEST(SquarefreeDivisors, RadicalOfNMinusOne) {
    const auto fac = factor_integer(63);  // 3^2 * 7
    const auto divs = squarefree_divisors(fac);
    std::vector<BigInt> vals;
    int sum_mu = 0;
    for (const auto& d : divs) vals.push_back(d.value), sum_mu += d.mobius();
    EXPECT_EQ(vals, (std::vector<BigInt>{1, 3, 7, 21}));
    EXPECT_EQ(sum_mu, 0);
    EXPECT_EQ(fac.radical(), 21);
}

TEST(Rational, PhiRatioIsEulerProduct) {
    for (u64 m : {15ULL, 63ULL, 255ULL, 8191ULL, 4095ULL, 1048575ULL}) {
        const auto fac = factor_integer(BigInt(m));
        Rational prod(1, 1);
        for (const auto& pp : fac.factors()) prod = prod * Rational(pp.prime - 1, pp.prime);
        EXPECT_EQ(Rational(fac.phi(), fac.value()), prod) << m;
    }
    EXPECT_EQ(Rational(6, -4).str(), "-3/2");
    EXPECT_EQ(abs(Rational(-1, 3)).str(), "1/3");
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}
