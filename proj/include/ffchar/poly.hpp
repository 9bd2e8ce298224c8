// Dense univariate polynomials over F_q: arithmetic, enumeration, text format.
#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "field.hpp"

namespace ffchar {

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is empty.
struct Poly {
    std::vector<Elem> c;

    Poly() = default;
    explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }

    static Poly constant(Elem a) { return Poly(std::vector<Elem>{a}); }
    static Poly monomial(std::size_t k, Elem a = 1) {
        std::vector<Elem> v(k + 1, 0);
        v[k] = a;
        return Poly(std::move(v));
    }
    /// t + a
    static Poly linear(Elem a) { return Poly(std::vector<Elem>{a, 1}); }

    bool is_zero() const { return c.empty(); }
    /// Degree of a nonzero polynomial. Callers check is_zero() first.
    std::size_t degree() const { return c.size() - 1; }
    Elem lead() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    Elem operator[](std::size_t i) const { return i < c.size() ? c[i] : 0; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    friend bool operator==(const Poly&, const Poly&) = default;
    /// Total order: by degree, then lexicographically from the top coefficient.
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
        if (auto cmp = a.c.size() <=> b.c.size(); cmp != 0) return cmp;
        for (std::size_t i = a.c.size(); i-- > 0;)
            if (auto cmp = a.c[i] <=> b.c[i]; cmp != 0) return cmp;
        return std::strong_ordering::equal;
    }
};

namespace poly {

inline Poly add(const Field& F, const Poly& a, const Poly& b) {
    std::vector<Elem> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a[i], b[i]);
    return Poly(std::move(r));
}

inline Poly sub(const Field& F, const Poly& a, const Poly& b) {
    std::vector<Elem> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a[i], b[i]);
    return Poly(std::move(r));
}

inline Poly scale(const Field& F, const Poly& a, Elem s) {
    std::vector<Elem> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(a.c[i], s);
    return Poly(std::move(r));
}

inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Elem> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
    }
    return Poly(std::move(r));
}

struct DivResult {
    Poly quot;
    Poly rem;
};

inline DivResult divmod(const Field& F, const Poly& a, const Poly& m) {
    if (m.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.c.size() < m.c.size()) return {{}, a};
    std::vector<Elem> r = a.c;
    const std::size_t dm = m.degree();
    std::vector<Elem> q(a.c.size() - dm, 0);
    const Elem inv_lead = F.inv(m.lead());
    for (std::size_t top = r.size(); top-- > dm;) {
        const Elem coef = F.mul(r[top], inv_lead);
        if (coef == 0) continue;
        const std::size_t shift = top - dm;
        q[shift] = coef;
        for (std::size_t i = 0; i <= dm; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(coef, m.c[i]));
    }
    r.resize(dm);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

inline Poly rem(const Field& F, const Poly& a, const Poly& m) {
    if (m.is_zero()) throw std::domain_error("polynomial reduction by zero modulus");
    if (a.c.size() < m.c.size()) return a;
    return divmod(F, a, m).rem;
}

/// a*b mod m.
inline Poly mul_mod(const Field& F, const Poly& a, const Poly& b, const Poly& m) {
    if (m.is_zero()) throw std::domain_error("mul_mod: zero modulus");
    return rem(F, mul(F, a, b), m);
}

inline Poly pow_mod(const Field& F, Poly base, BigInt e, const Poly& m) {
    Poly r = rem(F, Poly::constant(1), m);
    base = rem(F, base, m);
    while (e > 0) {
        if ((e & 1) != 0) r = mul_mod(F, r, base, m);
        e >>= 1;
        if (e > 0) base = mul_mod(F, base, base, m);
    }
    return r;
}

inline Poly pow(const Field& F, const Poly& base, unsigned e) {
    Poly r = Poly::constant(1);
    for (unsigned i = 0; i < e; ++i) r = mul(F, r, base);
    return r;
}

inline Poly make_monic(const Field& F, const Poly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return scale(F, a, F.inv(a.lead()));
}

/// Monic gcd (zero if both inputs are zero).
inline Poly gcd(const Field& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(F, a);
}

inline Poly derivative(const Field& F, const Poly& a) {
    if (a.c.size() <= 1) return {};
    std::vector<Elem> r(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<long long>(i % F.p())), a.c[i]);
    return Poly(std::move(r));
}

/// Exact quotient; throws if m does not divide a.
inline Poly div_exact(const Field& F, const Poly& a, const Poly& m) {
    auto [q, r] = divmod(F, a, m);
    if (!r.is_zero()) throw std::logic_error("div_exact: nonzero remainder");
    return q;
}

/// Integer index of a polynomial of degree < len: sum c_i q^i.
inline u64 index_of(const Field& F, const Poly& a) {
    u64 v = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) v = v * F.q() + a.c[i];
    return v;
}

/// Inverse of index_of.
inline Poly from_index(const Field& F, u64 idx) {
    std::vector<Elem> c;
    while (idx) {
        c.push_back(static_cast<Elem>(idx % F.q()));
        idx /= F.q();
    }
    return Poly(std::move(c));
}

/// The idx-th monic polynomial of degree d in enumeration order.
inline Poly monic_from_index(const Field& F, std::size_t d, u64 idx) {
    std::vector<Elem> c(d + 1, 0);
    for (std::size_t i = 0; i < d; ++i, idx /= F.q()) c[i] = static_cast<Elem>(idx % F.q());
    c[d] = 1;
    return Poly(std::move(c));
}

inline Elem eval(const Field& F, const Poly& a, Elem x) {
    Elem r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
    return r;
}

}  // namespace poly

/// Monic polynomials of degree exactly d in lexicographic order of their
/// coefficient vectors, constant term varying fastest. The range can be
/// restarted from any index in [0, q^d).
class MonicRange {
public:
    MonicRange(const Field& F, std::size_t d) : F_(&F), d_(d), size_(checked_pow(F.q(), static_cast<unsigned>(d))) {}

    u64 size() const { return size_; }
    std::size_t degree() const { return d_; }
    Poly at(u64 idx) const { return poly::monic_from_index(*F_, d_, idx); }

    /// Calls fn(index, poly) for idx in [begin, end), stepping the polynomial
    /// in place like an odometer.
    template <class Fn>
    void for_each(u64 begin, u64 end, Fn&& fn) const {
        if (begin >= end) return;
        Poly f = at(begin);
        const Elem q = static_cast<Elem>(F_->q());
        for (u64 idx = begin;;) {
            fn(idx, static_cast<const Poly&>(f));
            if (++idx == end) break;
            for (std::size_t i = 0; i < d_; ++i) {
                if (++f.c[i] < q) break;
                f.c[i] = 0;
            }
        }
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for_each(0, size_, std::forward<Fn>(fn));
    }

private:
    const Field* F_;
    std::size_t d_;
    u64 size_;
};

/// enumerate_monic as a materialized list; prefer MonicRange for large q^d.
inline std::vector<Poly> enumerate_monic(const Field& F, std::size_t d) {
    std::vector<Poly> out;
    MonicRange range(F, d);
    out.reserve(range.size());
    range.for_each([&](u64, const Poly& f) { out.push_back(f); });
    return out;
}

/// Human form, highest degree first: "t^2+t+1", "2*t^3+t", "0".
inline std::string format_poly(const Poly& a, char var = 't') {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = a.c.size(); i-- > 0;) {
        const Elem c = a.c[i];
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c << '*';
        os << var;
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

/// Accepts "1,1,1" (coefficient indices low-to-high) or the human form
/// "t^2+t+1" (terms may repeat and are summed; "2t", "2*t" and "x" also work).
inline Poly parse_poly(const Field& F, std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    auto parse_coef = [&](const std::string& tok) -> Elem {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coefficient '" + tok + "'");
        }
        if (pos != tok.size() || v >= F.q()) throw std::invalid_argument("bad coefficient '" + tok + "' for q=" + std::to_string(F.q()));
        return static_cast<Elem>(v);
    };
    const bool has_var = s.find_first_of("tx") != std::string::npos;
    if (!has_var && (s.find(',') != std::string::npos || s.find('+') == std::string::npos)) {
        std::vector<Elem> c;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) c.push_back(parse_coef(tok));
        return Poly(std::move(c));
    }
    std::vector<Elem> c;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = s.find('+', i);
        if (j == std::string::npos) j = s.size();
        const std::string term = s.substr(i, j - i);
        if (term.empty()) throw std::invalid_argument("malformed polynomial '" + std::string(text) + "'");
        const std::size_t v = term.find_first_of("tx");
        Elem coef = 1;
        std::size_t deg = 0;
        if (v == std::string::npos) {
            coef = parse_coef(term);
        } else {
            std::string head = term.substr(0, v);
            if (!head.empty() && head.back() == '*') head.pop_back();
            if (!head.empty()) coef = parse_coef(head);
            const std::string tail = term.substr(v + 1);
            if (tail.empty()) {
                deg = 1;
            } else {
                if (tail[0] != '^' || tail.size() < 2) throw std::invalid_argument("malformed term '" + term + "'");
                std::size_t pos = 0;
                try {
                    deg = std::stoul(tail.substr(1), &pos);
                } catch (const std::exception&) {
                    throw std::invalid_argument("malformed exponent in '" + term + "'");
                }
                if (pos + 1 != tail.size()) throw std::invalid_argument("malformed exponent in '" + term + "'");
            }
        }
        if (c.size() <= deg) c.resize(deg + 1, 0);
        c[deg] = F.add(c[deg], coef);
        i = j + 1;
        if (j + 1 == s.size()) throw std::invalid_argument("trailing '+' in polynomial");
    }
    return Poly(std::move(c));
}

}  // namespace ffchar
