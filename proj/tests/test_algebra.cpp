#include <gtest/gtest.h>

#include <map>

#include "ffchar/factor.hpp"

using namespace ffchar;

namespace {

const std::vector<u64> kFieldOrders{2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 256};

// Oracle multiplication in F_p[x]/(m) on coordinate vectors.
std::vector<u64> coord_mul(const Field& F, const std::vector<u64>& a, const std::vector<u64>& b) {
    const u64 p = F.p();
    const unsigned e = F.e();
    std::vector<u64> prod(2 * e, 0);
    for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    if (e == 1) return {prod[0]};
    const auto& m = F.defining_poly();
    for (std::size_t k = 2 * e - 1; k-- > e;) {
        const u64 c = prod[k];
        if (!c) continue;
        for (unsigned i = 0; i <= e; ++i) prod[k - e + i] = (prod[k - e + i] + (p - c) * m[i]) % p;
    }
    prod.resize(e);
    return prod;
}

// Oracle irreducibility: no monic divisor of degree 1..deg/2.
bool irreducible_by_trial(const Field& F, const Poly& f) {
    for (std::size_t k = 1; 2 * k <= f.degree(); ++k)
        for (const auto& g : enumerate_monic(F, k))
            if (poly::rem(F, f, g).is_zero()) return false;
    return true;
}

}  // namespace

TEST(Field, RejectsNonPrimePowers) {
    EXPECT_THROW(Field::of_order(6), std::invalid_argument);
    EXPECT_THROW(Field::of_order(1), std::invalid_argument);
    EXPECT_THROW(Field::of_order(100), std::invalid_argument);
    EXPECT_THROW(Field::of_order(u64{1} << 17), std::invalid_argument);
}

TEST(Field, MultiplicationMatchesCoordinateOracle) {
    for (u64 q : kFieldOrders) {
        const Field F = Field::of_order(q);
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; b += (q > 64 ? 7 : 1))
                ASSERT_EQ(F.coords(F.mul(a, b)), coord_mul(F, F.coords(a), F.coords(b))) << q << " " << a << " " << b;
    }
}

TEST(Field, AxiomsAndFrobenius) {
    for (u64 q : kFieldOrders) {
        const Field F = Field::of_order(q);
        for (Elem a = 0; a < q; ++a) {
            ASSERT_EQ(F.add(a, F.neg(a)), 0u);
            if (a) {
                ASSERT_EQ(F.mul(a, F.inv(a)), 1u);
            }
            ASSERT_EQ(F.frobenius(a), F.pow(a, F.p()));
            ASSERT_EQ(F.pow(a, q), a);
            for (Elem b = 0; b < q; b += (q > 32 ? 5 : 1)) {
                ASSERT_EQ(F.add(a, b), F.add(b, a));
                ASSERT_EQ(F.coords(F.add(a, b))[0], (F.coords(a)[0] + F.coords(b)[0]) % F.p());
                const Elem c = static_cast<Elem>((a * 7 + b * 3 + 1) % q);
                ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            }
        }
        // The generator has order exactly q - 1.
        const Elem g = F.primitive_element();
        Elem x = g;
        u64 ord = 1;
        while (x != 1) x = F.mul(x, g), ++ord;
        EXPECT_EQ(ord, q - 1);
    }
}

TEST(Field, DefiningPolynomialIsLexLeast) {
    EXPECT_EQ(Field::of_order(4).defining_poly(), (std::vector<u64>{1, 1, 1}));
    EXPECT_EQ(Field::of_order(8).defining_poly(), (std::vector<u64>{1, 1, 0, 1}));
    EXPECT_EQ(Field::of_order(9).defining_poly(), (std::vector<u64>{1, 0, 1}));
}

TEST(Poly, DivisionIdentity) {
    const Field F = Field::of_order(9);
    for (u64 i = 0; i < 400; ++i) {
        const Poly a = poly::from_index(F, i * 97 + 5);
        const Poly m = poly::from_index(F, i % 50 + 1);
        if (m.is_zero()) continue;
        const auto [quot, rem] = poly::divmod(F, a, m);
        ASSERT_TRUE(rem.is_zero() || rem.degree() < m.degree());
        ASSERT_EQ(poly::add(F, poly::mul(F, quot, m), rem), a);
    }
    EXPECT_THROW(poly::divmod(F, Poly::constant(1), Poly{}), std::domain_error);
}

TEST(Poly, EnumerationOrderAndIndexRoundTrip) {
    const Field F = Field::of_order(3);
    const auto all = enumerate_monic(F, 2);
    ASSERT_EQ(all.size(), 9u);
    EXPECT_EQ(all[0], Poly(std::vector<Elem>{0, 0, 1}));
    EXPECT_EQ(all[1], Poly(std::vector<Elem>{1, 0, 1}));  // constant varies fastest
    EXPECT_EQ(all[3], Poly(std::vector<Elem>{0, 1, 1}));
    MonicRange range(F, 4);
    range.for_each(17, 60, [&](u64 idx, const Poly& f) { ASSERT_EQ(range.at(idx), f); });
    for (u64 i = 0; i < 500; ++i) ASSERT_EQ(poly::index_of(F, poly::from_index(F, i)), i);
}

TEST(Poly, FormatParseRoundTrip) {
    const Field F = Field::of_order(5);
    for (u64 i = 1; i < 700; i += 3) {
        const Poly f = poly::from_index(F, i);
        ASSERT_EQ(parse_poly(F, format_poly(f)), f) << format_poly(f);
    }
    EXPECT_EQ(format_poly(parse_poly(F, "1,0,3,1")), "t^3+3*t^2+1");
    EXPECT_EQ(parse_poly(F, "x^2 + 2x + 4"), Poly(std::vector<Elem>{4, 2, 1}));
    EXPECT_THROW(parse_poly(F, "t^2+7"), std::invalid_argument);
    EXPECT_THROW(parse_poly(F, "t^"), std::invalid_argument);
}

TEST(Irreducible, CountsMatchNecklaceFormulaAndTrialDivision) {
    for (u64 q : {2ULL, 3ULL, 4ULL}) {
        const Field F = Field::of_order(q);
        const std::size_t kmax = q == 2 ? 10 : (q == 3 ? 6 : 5);
        const auto irr = irreducibles_up_to(F, kmax);
        for (std::size_t k = 1; k <= kmax; ++k) EXPECT_EQ(BigInt(irr[k].size()), necklace_count(q, static_cast<unsigned>(k))) << q << " " << k;
        for (std::size_t k = 1; k <= std::min<std::size_t>(kmax, 4); ++k)
            for (const auto& f : enumerate_monic(F, k)) ASSERT_EQ(is_irreducible(F, f), irreducible_by_trial(F, f)) << format_poly(f);
    }
    EXPECT_EQ(necklace_count(2, 13), 630);
}

TEST(Factorize, ExpandsBackAndFactorsAreIrreducible) {
    for (u64 q : {2ULL, 3ULL, 4ULL, 5ULL, 8ULL, 9ULL}) {
        const Field F = Field::of_order(q);
        const std::size_t dmax = q <= 3 ? 7 : 4;
        for (std::size_t d = 1; d <= dmax; ++d) {
            MonicRange range(F, d);
            const u64 step = std::max<u64>(1, range.size() / 400);
            for (u64 i = 0; i < range.size(); i += step) {
                const Poly f = range.at(i);
                const auto fac = factorize(F, f);
                ASSERT_EQ(fac.unit, 1u);
                ASSERT_EQ(expand(F, fac), f) << format_poly(f);
                std::size_t deg = 0;
                for (const auto& fp : fac.factors) {
                    ASSERT_TRUE(fp.factor.is_monic());
                    ASSERT_TRUE(irreducible_by_trial(F, fp.factor)) << format_poly(fp.factor);
                    deg += fp.factor.degree() * fp.multiplicity;
                }
                ASSERT_EQ(deg, d);
            }
        }
    }
}

TEST(Factorize, HighMultiplicityInCharacteristicP) {
    const Field F = Field::of_order(3);
    const Poly a = Poly::linear(1);                  // t + 1
    const Poly b(std::vector<Elem>{1, 0, 1});        // t^2 + 1
    const Poly f = poly::mul(F, poly::pow(F, a, 9), poly::pow(F, b, 4));
    const auto fac = factorize(F, f);
    std::map<std::string, unsigned> got;
    for (const auto& fp : fac.factors) got[format_poly(fp.factor)] = fp.multiplicity;
    EXPECT_EQ(got, (std::map<std::string, unsigned>{{"t+1", 9}, {"t^2+1", 4}}));
    EXPECT_THROW(factorize(F, Poly{}), std::invalid_argument);
}

TEST(Smoothness, AgreesWithMaxFactorDegree) {
    const Field F = Field::of_order(2);
    for (const auto& f : enumerate_monic(F, 8)) {
        const std::size_t m = max_factor_degree(F, f);
        for (std::size_t r = 1; r <= 8; ++r) ASSERT_EQ(is_smooth(F, f, r), m <= r);
    }
}
