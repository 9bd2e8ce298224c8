// Multiplicative characters mod Q with exact root-of-unity values, and
// character sums over sets of monic polynomials.
#pragma once

#include <cfloat>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "residue.hpp"

namespace ffchar {

using cplx = std::complex<double>;

/// e^{2 pi i a / M}, tabulated for M <= 2^20.
class RootsOfUnity {
public:
    explicit RootsOfUnity(u64 M) : M_(M) {
        if (M == 0) throw std::invalid_argument("RootsOfUnity: order must be positive");
        if (M <= kTableLimit) {
            table_.resize(M);
            for (u64 a = 0; a < M; ++a) table_[a] = compute(a);
        }
    }
    u64 order() const { return M_; }
    cplx operator()(u64 a) const { return table_.empty() ? compute(a % M_) : table_[a % M_]; }

private:
    static constexpr u64 kTableLimit = u64{1} << 20;
    cplx compute(u64 a) const {
        const long double turns = static_cast<long double>(a) / static_cast<long double>(M_);
        const long double ang = 2.0L * std::numbers::pi_v<long double> * turns;
        return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
    }
    u64 M_;
    std::vector<cplx> table_;
};

/// A character value: zero, or the root of unity zeta_M^phase.
struct CharValue {
    bool zero = true;
    u64 phase = 0;
    u64 modulus = 1;

    cplx value() const {
        if (zero) return {0.0, 0.0};
        const long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(phase) / static_cast<long double>(modulus);
        return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
    }
    friend bool operator==(const CharValue&, const CharValue&) = default;
};

inline CharValue operator*(const CharValue& a, const CharValue& b) {
    if (a.zero || b.zero) return {true, 0, a.modulus};
    return {false, (a.phase + b.phase) % a.modulus, a.modulus};
}

/// chi(g_i) = zeta_{o_i}^{k_i} on the generator of each component. Values are
/// phases modulo M = exponent of the unit group.
class Character {
public:
    Character(std::shared_ptr<const UnitGroup> group, std::vector<u64> exponents) : group_(std::move(group)), k_(std::move(exponents)) {
        const auto& comps = group_->components();
        if (k_.size() != comps.size()) throw std::invalid_argument("Character: one exponent per unit-group component required");
        const u64 M = group_->exponent();
        coeff_.resize(k_.size());
        order_ = 1;
        for (std::size_t i = 0; i < k_.size(); ++i) {
            const u64 o = comps[i].order;
            if (k_[i] >= o) throw std::invalid_argument("Character: exponent out of range");
            coeff_[i] = static_cast<u64>(static_cast<u128>(k_[i]) * (M / o) % M);
            order_ = std::lcm(order_, o / std::gcd(k_[i], o));
        }
    }

    const UnitGroup& group() const { return *group_; }
    const std::shared_ptr<const UnitGroup>& group_ptr() const { return group_; }
    const std::vector<u64>& exponents() const { return k_; }
    u64 value_modulus() const { return group_->exponent(); }
    bool is_principal() const { return order_ == 1; }
    /// Order of chi in the dual group.
    u64 order() const { return order_; }

    /// Index in all_characters() order (mixed radix, component 0 fastest).
    u64 index() const {
        u64 idx = 0;
        for (std::size_t i = 0; i < k_.size(); ++i) idx += k_[i] * group_->radices()[i];
        return idx;
    }

    /// "chi[k]" or "chi[k1,k2,...]".
    std::string name() const {
        std::ostringstream os;
        os << "chi[";
        for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? "," : "") << k_[i];
        os << "]";
        return os.str();
    }

    /// Phase of chi at the unit with the given packed log.
    u64 phase_of_log(u64 packed) const {
        const u64 M = value_modulus();
        if (coeff_.size() == 1) return static_cast<u64>(static_cast<u128>(coeff_[0]) * packed % M);
        u128 acc = 0;
        const auto& comps = group_->components();
        const auto& radix = group_->radices();
        for (std::size_t i = 0; i < coeff_.size(); ++i) {
            const u64 l = packed / radix[i] % comps[i].order;
            acc = (acc + static_cast<u128>(coeff_[i]) * l) % M;
        }
        return static_cast<u64>(acc);
    }

    CharValue eval(const Poly& f) const {
        const auto l = group_->dlog(f);
        if (!l) return {true, 0, value_modulus()};
        return {false, phase_of_log(*l), value_modulus()};
    }

    /// chi^m.
    Character pow(u64 m) const {
        std::vector<u64> e(k_.size());
        for (std::size_t i = 0; i < k_.size(); ++i) {
            const u64 o = group_->components()[i].order;
            e[i] = static_cast<u64>(static_cast<u128>(k_[i]) * (m % o) % o);
        }
        return Character(group_, std::move(e));
    }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<u64> k_;
    std::vector<u64> coeff_;
    u64 order_ = 1;
};

inline CharValue chi_eval(const Character& chi, const Poly& f) { return chi.eval(f); }

inline Character character_at(std::shared_ptr<const UnitGroup> g, u64 index) {
    if (index >= g->order()) throw std::out_of_range("character index out of range");
    std::vector<u64> e(g->components().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = index / g->radices()[i] % g->components()[i].order;
    return Character(std::move(g), std::move(e));
}

inline Character principal_character(std::shared_ptr<const UnitGroup> g) { return character_at(std::move(g), 0); }

/// Every character once, in index order; the dual group has |G| elements.
inline std::vector<Character> all_characters(const std::shared_ptr<const UnitGroup>& g) {
    if (g->order() > (u64{1} << 24)) throw std::length_error("all_characters: dual group too large to materialize");
    std::vector<Character> out;
    out.reserve(g->order());
    for (u64 i = 0; i < g->order(); ++i) out.push_back(character_at(g, i));
    return out;
}

/// Parses "chi[k]" / "chi[k1,k2]" (or the bare list "k1,k2").
inline Character parse_character(const std::shared_ptr<const UnitGroup>& g, std::string s) {
    if (s.rfind("chi[", 0) == 0) {
        if (s.back() != ']') throw std::invalid_argument("malformed character name '" + s + "'");
        s = s.substr(4, s.size() - 5);
    }
    std::vector<u64> e;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        e.push_back(std::stoull(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument("malformed character exponent '" + tok + "'");
    }
    return Character(g, std::move(e));
}

/// A multiset of polynomials reduced to their unit logs: sorted distinct
/// packed logs with multiplicities, plus the count of non-units (chi = 0).
/// Sorting makes every character sum independent of generation order.
struct PhaseProfile {
    std::vector<u64> logs;
    std::vector<u64> counts;
    u64 non_units = 0;
    u64 total = 0;

    u64 units() const { return total - non_units; }

    static PhaseProfile from_logs(std::vector<u64> raw, u64 non_units) {
        std::sort(raw.begin(), raw.end());
        PhaseProfile p;
        p.non_units = non_units;
        p.total = raw.size() + non_units;
        for (std::size_t i = 0; i < raw.size();) {
            std::size_t j = i;
            while (j < raw.size() && raw[j] == raw[i]) ++j;
            p.logs.push_back(raw[i]);
            p.counts.push_back(j - i);
            i = j;
        }
        return p;
    }
};

/// Fixed chunk size for partitioned enumeration; partial results are merged
/// in chunk order so output does not depend on the worker count.
inline constexpr u64 kEnumerationChunk = u64{1} << 14;

/// Profile of A_d (all monic polynomials of degree exactly d).
inline PhaseProfile monic_profile(const UnitGroup& g, std::size_t d, unsigned workers = 1) {
    const Field& F = g.field();
    MonicRange range(F, d);
    const u64 chunks = (range.size() + kEnumerationChunk - 1) / kEnumerationChunk;
    std::vector<std::vector<u64>> parts(chunks);
    std::vector<u64> zeros(chunks, 0);
    parallel_for(chunks, workers, [&](std::size_t c) {
        const u64 begin = c * kEnumerationChunk;
        const u64 end = std::min(range.size(), begin + kEnumerationChunk);
        parts[c].reserve(end - begin);
        range.for_each(begin, end, [&](u64, const Poly& f) {
            if (auto l = g.dlog(f))
                parts[c].push_back(*l);
            else
                ++zeros[c];
        });
    });
    std::vector<u64> all;
    all.reserve(range.size());
    u64 nz = 0;
    for (u64 c = 0; c < chunks; ++c) {
        all.insert(all.end(), parts[c].begin(), parts[c].end());
        nz += zeros[c];
    }
    return PhaseProfile::from_logs(std::move(all), nz);
}

/// A rendered character sum with its floating-point error bound.
struct CharSum {
    cplx value;
    double error_bound = 0.0;
    u64 terms = 0;
};

namespace detail {

struct Neumaier {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double result() const { return sum + comp; }
};

}  // namespace detail

/// sum over the profile of chi(f), accumulated with compensated summation.
/// Each term count*zeta is within 2 ulp of exact, so the rendered error is
/// bounded by 4*eps*(number of terms).
inline CharSum character_sum(const Character& chi, const PhaseProfile& profile, const RootsOfUnity& roots) {
    detail::Neumaier re, im;
    for (std::size_t i = 0; i < profile.logs.size(); ++i) {
        const cplx z = roots(chi.phase_of_log(profile.logs[i]));
        const double c = static_cast<double>(profile.counts[i]);
        re.add(c * z.real());
        im.add(c * z.imag());
    }
    const u64 n = profile.units();
    return {{re.result(), im.result()}, 4.0 * DBL_EPSILON * static_cast<double>(n), profile.total};
}

inline CharSum character_sum(const Character& chi, const PhaseProfile& profile) {
    return character_sum(chi, profile, RootsOfUnity(chi.value_modulus()));
}

/// Sums of every character (index order) over one profile.
inline std::vector<CharSum> all_character_sums(const std::shared_ptr<const UnitGroup>& g, const PhaseProfile& profile, unsigned workers = 1) {
    if (g->order() > (u64{1} << 24)) throw std::length_error("all_character_sums: dual group too large");
    const RootsOfUnity roots(g->exponent());
    std::vector<CharSum> out(g->order());
    parallel_for(out.size(), workers, [&](std::size_t k) { out[k] = character_sum(character_at(g, k), profile, roots); });
    return out;
}

/// A(d, chi) = sum_{f in A_d} chi(f).
inline CharSum character_sum_Ad(const Character& chi, std::size_t d, unsigned workers = 1) {
    return character_sum(chi, monic_profile(chi.group(), d, workers));
}

}  // namespace ffchar
