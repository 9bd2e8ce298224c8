#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ffchar/characters.hpp"

using namespace ffchar;

namespace {

std::shared_ptr<const UnitGroup> group_of(u64 q, const std::string& Q) {
    auto F = std::make_shared<const Field>(Field::of_order(q));
    return UnitGroup::create(std::make_shared<const Modulus>(F, parse_poly(*F, Q)));
}

// Oracle: evaluate chi on every monic f of degree d one at a time, long double phases.
std::complex<long double> naive_sum(const Character& chi, std::size_t d) {
    std::complex<long double> s = 0;
    const long double M = static_cast<long double>(chi.value_modulus());
    for (const auto& f : enumerate_monic(chi.group().field(), d)) {
        const auto v = chi.eval(f);
        if (v.zero) continue;
        s += std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(v.phase) / M);
    }
    return s;
}

}  // namespace

TEST(Character, NameRoundTrip) {
    const auto g = group_of(3, "t^2+2*t");  // t (t+2): two components
    for (const auto& chi : all_characters(g)) {
        const auto back = parse_character(g, chi.name());
        EXPECT_EQ(back.exponents(), chi.exponents());
        EXPECT_EQ(back.index(), chi.index());
    }
    EXPECT_THROW(parse_character(g, "chi[1]"), std::invalid_argument);
    EXPECT_THROW(parse_character(g, "chi[2,0]"), std::invalid_argument);
}

TEST(Character, Multiplicative) {
    for (auto [q, Q] : std::vector<std::pair<u64, std::string>>{{2, "t^5+t^2+1"}, {3, "t^3+2*t"}, {4, "t^2+t+2"}}) {
        const auto g = group_of(q, Q);
        const Field& F = g->field();
        for (u64 k = 0; k < g->order(); k += 3) {
            const auto chi = character_at(g, k);
            for (u64 i = 1; i < 40; ++i)
                for (u64 j = 1; j < 40; j += 7) {
                    const Poly a = poly::from_index(F, i), b = poly::from_index(F, j);
                    ASSERT_EQ(chi.eval(poly::mul(F, a, b)), chi.eval(a) * chi.eval(b));
                }
        }
    }
}

TEST(Character, Orthogonality) {
    for (auto [q, Q] : std::vector<std::pair<u64, std::string>>{{2, "t^4+t+1"}, {3, "t^3+2*t"}, {5, "t^2+2"}}) {
        const auto g = group_of(q, Q);
        const auto chars = all_characters(g);
        ASSERT_EQ(chars.size(), g->order());
        // Sum over characters at fixed x.
        for (u64 L = 0; L < g->order(); ++L) {
            cplx s = 0;
            for (const auto& chi : chars) s += RootsOfUnity(g->exponent())(chi.phase_of_log(L));
            EXPECT_NEAR(std::abs(s - cplx(L == 0 ? static_cast<double>(g->order()) : 0.0)), 0.0, 1e-9);
        }
        // Sum over units at fixed chi.
        for (const auto& chi : chars) {
            cplx s = 0;
            for (u64 L = 0; L < g->order(); ++L) s += RootsOfUnity(g->exponent())(chi.phase_of_log(L));
            EXPECT_NEAR(std::abs(s - cplx(chi.is_principal() ? static_cast<double>(g->order()) : 0.0)), 0.0, 1e-9);
        }
    }
}

TEST(CharacterSum, MatchesNaiveOracle) {
    for (auto [q, Q] : std::vector<std::pair<u64, std::string>>{{2, "t^6+t+1"}, {3, "t^3+2*t+1"}, {3, "t^3+2*t"}, {4, "t^2+t+2"}}) {
        const auto g = group_of(q, Q);
        for (u64 k = 0; k < g->order(); k += std::max<u64>(1, g->order() / 11)) {
            const auto chi = character_at(g, k);
            for (std::size_t d = 0; d <= 6; ++d) {
                const auto s = character_sum_Ad(chi, d);
                const auto o = naive_sum(chi, d);
                EXPECT_NEAR(s.value.real(), static_cast<double>(o.real()), 1e-9) << Q << " " << k << " " << d;
                EXPECT_NEAR(s.value.imag(), static_cast<double>(o.imag()), 1e-9) << Q << " " << k << " " << d;
                EXPECT_EQ(s.terms, checked_pow(q, static_cast<unsigned>(d)));
            }
        }
    }
}

TEST(CharacterSum, ConstantTermAndVanishing) {
    const auto g = group_of(2, "t^5+t^2+1");
    for (u64 k = 1; k < g->order(); ++k) {
        const auto chi = character_at(g, k);
        EXPECT_EQ(character_sum_Ad(chi, 0).value, cplx(1.0));
        for (std::size_t m = 5; m <= 7; ++m) EXPECT_LE(std::abs(character_sum_Ad(chi, m).value), 1e-9 * std::pow(2.0, m));
    }
    // Principal character counts units.
    const auto chi0 = principal_character(g);
    EXPECT_EQ(character_sum_Ad(chi0, 4).value, cplx(16.0));
    EXPECT_EQ(character_sum_Ad(chi0, 6).value, cplx(62.0));  // 64 minus t Q and (t+1) Q
}

TEST(CharacterSum, IndependentOfWorkerCount) {
    const auto g = standard_unit_group(2, 16);
    const auto p1 = monic_profile(*g, 15, 1);
    const auto p4 = monic_profile(*g, 15, 4);
    EXPECT_EQ(p1.logs, p4.logs);
    EXPECT_EQ(p1.counts, p4.counts);
    const auto chi = character_at(g, 12345);
    const auto a = character_sum(chi, p1), b = character_sum(chi, p4);
    EXPECT_EQ(a.value, b.value);  // bitwise
    EXPECT_GT(a.error_bound, 0.0);
}

TEST(CharacterSum, AllSumsMatchSingleSums) {
    const auto g = group_of(3, "t^3+2*t");
    const auto prof = monic_profile(*g, 4);
    const auto all = all_character_sums(g, prof, 3);
    for (u64 k = 0; k < g->order(); ++k) EXPECT_EQ(all[k].value, character_sum(character_at(g, k), prof).value);
}
