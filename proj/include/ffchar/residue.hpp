// The ring F_q[t]/(Q) for squarefree Q: unit group, generators, discrete logs.
#pragma once

#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "factor.hpp"

namespace ffchar {

enum class ModulusKind { irreducible, squarefree_composite };

/// A monic squarefree modulus Q of degree n >= 1 with its irreducible factors.
class Modulus {
public:
    Modulus(std::shared_ptr<const Field> field, Poly q) : field_(std::move(field)), q_(std::move(q)) {
        if (!field_) throw std::invalid_argument("Modulus: null field");
        if (q_.is_zero() || q_.degree() < 1) throw std::invalid_argument("Modulus: Q must have degree >= 1");
        if (!q_.is_monic()) throw std::invalid_argument("Modulus: Q must be monic");
        checked_pow(field_->q(), static_cast<unsigned>(q_.degree()));
        const auto fac = factorize(*field_, q_);
        for (const auto& fp : fac.factors) {
            if (fp.multiplicity != 1)
                throw std::invalid_argument("Modulus: Q = " + format_poly(q_) + " is not squarefree (factor " + format_poly(fp.factor) +
                                            " has multiplicity " + std::to_string(fp.multiplicity) + ")");
            factors_.push_back(fp.factor);
        }
        kind_ = factors_.size() == 1 ? ModulusKind::irreducible : ModulusKind::squarefree_composite;
    }

    const Field& field() const { return *field_; }
    const std::shared_ptr<const Field>& field_ptr() const { return field_; }
    const Poly& poly() const { return q_; }
    std::size_t degree() const { return q_.degree(); }
    ModulusKind kind() const { return kind_; }
    bool irreducible() const { return kind_ == ModulusKind::irreducible; }
    const std::vector<Poly>& irreducible_factors() const { return factors_; }

private:
    std::shared_ptr<const Field> field_;
    Poly q_;
    ModulusKind kind_ = ModulusKind::irreducible;
    std::vector<Poly> factors_;
};

/// Lexicographically least monic irreducible of degree n (constant term fastest).
inline Poly least_irreducible(const Field& F, std::size_t n) {
    MonicRange range(F, n);
    for (u64 i = 0; i < range.size(); ++i) {
        Poly f = range.at(i);
        if (is_irreducible(F, f)) return f;
    }
    throw std::logic_error("no irreducible polynomial of the requested degree");
}

/// One cyclic factor (F_q[t]/P)^x of the unit group.
struct UnitComponent {
    Poly factor;             // monic irreducible P_i
    u64 residue_count = 0;   // q^{deg P_i}
    u64 order = 0;           // q^{deg P_i} - 1
    FactoredInteger order_factors;
    Poly generator;
};

/// The unit group of F_q[t]/(Q) as a product of cyclic components.
struct UnitGroupView {
    std::shared_ptr<const Modulus> modulus;
    std::vector<UnitComponent> components;

    u64 group_order() const {
        u64 r = 1;
        for (const auto& c : components) r *= c.order;
        return r;
    }
    /// lcm of the component orders: every character value is a power of a
    /// primitive root of unity of this order.
    u64 exponent() const {
        u64 r = 1;
        for (const auto& c : components) r = std::lcm(r, c.order);
        return r;
    }
};

namespace detail {

inline bool has_exact_order(const Field& F, const Poly& x, const Poly& P, u64 order, const FactoredInteger& fac) {
    if (x.is_zero()) return false;
    const Poly one = poly::rem(F, Poly::constant(1), P);
    if (poly::pow_mod(F, x, BigInt(order), P) != one) return false;
    for (const auto& pp : fac.factors()) {
        if (poly::pow_mod(F, x, BigInt(order) / pp.prime, P) == one) return false;
    }
    return true;
}

}  // namespace detail

/// First residue in enumeration order whose order is the full component order,
/// for each irreducible factor of Q.
inline UnitGroupView find_generator(std::shared_ptr<const Modulus> m) {
    UnitGroupView view;
    view.modulus = m;
    const Field& F = m->field();
    for (const auto& P : m->irreducible_factors()) {
        UnitComponent comp;
        comp.factor = P;
        comp.residue_count = checked_pow(F.q(), static_cast<unsigned>(P.degree()));
        comp.order = comp.residue_count - 1;
        comp.order_factors = factor_integer(BigInt(comp.order));
        bool found = false;
        for (u64 idx = 1; idx < comp.residue_count; ++idx) {
            Poly x = poly::from_index(F, idx);
            if (detail::has_exact_order(F, x, P, comp.order, comp.order_factors)) {
                comp.generator = std::move(x);
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("find_generator: no generator found");
        view.components.push_back(std::move(comp));
    }
    return view;
}

enum class DlogStrategy { full_table, baby_step_giant_step };

/// Discrete-log lookup for one component.
class ComponentDlog {
public:
    static constexpr u64 kNoLog = ~u64{0};

    ComponentDlog(const Field& F, const UnitComponent& comp, u64 table_threshold) : F_(&F), P_(comp.factor), order_(comp.order) {
        if (comp.order <= table_threshold) {
            strategy_ = DlogStrategy::full_table;
            table_.assign(comp.residue_count, kNoLog);
            Poly x = Poly::constant(1);
            for (u64 k = 0; k < comp.order; ++k) {
                table_[poly::index_of(F, x)] = k;
                x = poly::mul_mod(F, x, comp.generator, P_);
            }
        } else {
            strategy_ = DlogStrategy::baby_step_giant_step;
            step_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<long double>(comp.order))));
            baby_.reserve(step_);
            Poly x = Poly::constant(1);
            for (u64 j = 0; j < step_; ++j) {
                baby_.emplace(poly::index_of(F, x), j);
                x = poly::mul_mod(F, x, comp.generator, P_);
            }
            // x = g^step; giant factor is its inverse g^(order - step).
            giant_ = poly::pow_mod(F, comp.generator, BigInt(comp.order - step_ % comp.order), P_);
        }
    }

    DlogStrategy strategy() const { return strategy_; }

    /// Log of a residue already reduced mod P; nullopt for zero.
    std::optional<u64> log_reduced(const Poly& x) const {
        if (x.is_zero()) return std::nullopt;
        if (strategy_ == DlogStrategy::full_table) return table_[poly::index_of(*F_, x)];
        Poly y = x;
        for (u64 i = 0; i <= step_; ++i) {
            auto it = baby_.find(poly::index_of(*F_, y));
            if (it != baby_.end()) return (i * step_ + it->second) % order_;
            y = poly::mul_mod(*F_, y, giant_, P_);
        }
        throw std::logic_error("baby-step giant-step failed: generator order mismatch");
    }

    /// Table lookup by residue index (full-table strategy only).
    u64 log_index(u64 idx) const { return table_[idx]; }

private:
    const Field* F_;
    Poly P_;
    u64 order_;
    DlogStrategy strategy_ = DlogStrategy::full_table;
    std::vector<u64> table_;
    u64 step_ = 0;
    std::unordered_map<u64, u64> baby_;
    Poly giant_;
};

/// Modulus + generators + dlog tables, built once and shared read-only.
///
/// A unit is identified by its packed log: sum_i L_i * radix_i with L_i the
/// log in component i and radix_i the product of earlier component orders.
/// For irreducible Q the packed log is the plain discrete log.
class UnitGroup {
public:
    static constexpr u64 kDefaultTableThreshold = u64{1} << 22;

    static std::shared_ptr<const UnitGroup> create(std::shared_ptr<const Modulus> m, u64 table_threshold = kDefaultTableThreshold) {
        return std::shared_ptr<const UnitGroup>(new UnitGroup(std::move(m), table_threshold));
    }

    const Modulus& modulus() const { return *view_.modulus; }
    const Field& field() const { return view_.modulus->field(); }
    const UnitGroupView& view() const { return view_; }
    const std::vector<UnitComponent>& components() const { return view_.components; }
    const ComponentDlog& component_dlog(std::size_t i) const { return dlogs_[i]; }
    u64 order() const { return order_; }
    u64 exponent() const { return exponent_; }
    const std::vector<u64>& radices() const { return radix_; }

    /// Packed log of f mod Q; nullopt iff gcd(f, Q) != 1.
    std::optional<u64> dlog(const Poly& f) const {
        u64 packed = 0;
        for (std::size_t i = 0; i < dlogs_.size(); ++i) {
            const auto& P = view_.components[i].factor;
            auto l = dlogs_[i].log_reduced(poly::rem(field(), f, P));
            if (!l) return std::nullopt;
            packed += *l * radix_[i];
        }
        return packed;
    }

    /// Component logs of a packed log.
    std::vector<u64> unpack(u64 packed) const {
        std::vector<u64> out(dlogs_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = packed / radix_[i] % view_.components[i].order;
        return out;
    }

    /// The residue g^L (irreducible Q) or its CRT combination for a packed log.
    Poly exp(u64 packed) const {
        const Field& F = field();
        const auto logs = unpack(packed);
        if (dlogs_.size() == 1) return poly::pow_mod(F, view_.components[0].generator, BigInt(logs[0]), view_.components[0].factor);
        // CRT: x = sum_i r_i * e_i with e_i = 1 mod P_i, 0 mod P_j.
        const Poly& Q = modulus().poly();
        Poly x;
        for (std::size_t i = 0; i < logs.size(); ++i) {
            const auto& c = view_.components[i];
            const Poly ri = poly::pow_mod(F, c.generator, BigInt(logs[i]), c.factor);
            const Poly cofactor = poly::div_exact(F, Q, c.factor);
            const Poly inv = poly::pow_mod(F, poly::rem(F, cofactor, c.factor), BigInt(c.order - 1), c.factor);
            x = poly::add(F, x, poly::mul(F, poly::mul_mod(F, ri, inv, c.factor), cofactor));
        }
        return poly::rem(F, x, Q);
    }

private:
    UnitGroup(std::shared_ptr<const Modulus> m, u64 table_threshold) : view_(find_generator(std::move(m))) {
        u64 radix = 1;
        for (const auto& c : view_.components) {
            radix_.push_back(radix);
            radix *= c.order;
            dlogs_.emplace_back(field(), c, table_threshold);
        }
        order_ = view_.group_order();
        exponent_ = view_.exponent();
    }

    UnitGroupView view_;
    std::vector<ComponentDlog> dlogs_;
    std::vector<u64> radix_;
    u64 order_ = 1;
    u64 exponent_ = 1;
};

/// Power test: x != 0 and x^((N-1)/p) != 1 mod Q for every prime p | N-1.
inline bool is_primitive(const Modulus& m, const Poly& x, const FactoredInteger& n_minus_1) {
    if (!m.irreducible()) throw std::invalid_argument("is_primitive: modulus must be irreducible");
    const Field& F = m.field();
    const Poly r = poly::rem(F, x, m.poly());
    if (r.is_zero()) return false;
    const Poly one = poly::rem(F, Poly::constant(1), m.poly());
    for (const auto& pp : n_minus_1.factors()) {
        if (poly::pow_mod(F, r, n_minus_1.value() / pp.prime, m.poly()) == one) return false;
    }
    return true;
}

/// Log test: x is a unit with gcd(dlog x, N-1) = 1.
inline bool is_primitive_dlog(const UnitGroup& g, const Poly& x) {
    if (!g.modulus().irreducible()) throw std::invalid_argument("is_primitive_dlog: modulus must be irreducible");
    const auto l = g.dlog(x);
    if (!l) return false;
    return std::gcd(*l, g.order()) == 1;
}

/// Builds field, lexicographically least irreducible Q of degree n and its unit group.
inline std::shared_ptr<const UnitGroup> standard_unit_group(u64 q, std::size_t n, u64 table_threshold = UnitGroup::kDefaultTableThreshold) {
    auto F = std::make_shared<const Field>(Field::of_order(q));
    Poly Q = least_irreducible(*F, n);
    return UnitGroup::create(std::make_shared<const Modulus>(F, std::move(Q)), table_threshold);
}

}  // namespace ffchar
