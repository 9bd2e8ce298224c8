// Parameter grids comparing short character sums with smooth character sums,
// the normalized short-sum bound, and the factorization L = M * N.
#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "io.hpp"
#include "lfun.hpp"
#include "primitive.hpp"

namespace ffchar {

enum class CharacterPolicy { all, sample, worst_case };

inline CharacterPolicy parse_policy(const std::string& s) {
    if (s == "all") return CharacterPolicy::all;
    if (s == "sample" || s == "sample-k") return CharacterPolicy::sample;
    if (s == "worst" || s == "worst-case") return CharacterPolicy::worst_case;
    throw std::invalid_argument("unknown character policy '" + s + "' (all, sample-k, worst-case)");
}

struct ExperimentConfig {
    std::vector<u64> qs{2};
    std::vector<std::size_t> ns{13};
    std::size_t d_min = 1, d_max = 8;
    std::size_t r_min = 1, r_max = 8;
    std::optional<std::string> modulus;  // explicit Q; needs a single (q, n)
    CharacterPolicy policy = CharacterPolicy::all;
    std::size_t sample_k = 16;
    bool include_principal = false;
    bool include_out_of_range = false;
    double C2 = 1.0, C3 = 1.0;
    u64 budget = 10'000'000;     // max enumerated polynomials per combo
    unsigned workers = 1;
    u64 seed = 1;
    std::string csv_path;        // records, appended per completed combo
    std::string raw_path;        // raw sums behind every record
    std::string checkpoint_path;
    bool resume = false;
    std::size_t max_combos = 0;  // stop after this many new combos (0: no limit)
};

struct ComparisonRecord {
    u64 q = 0;
    std::size_t n = 0;
    std::string Q, chi;
    std::size_t d = 0, r = 0;
    double lhs = 0.0;              // |A(d, chi) - sum_{P(d, r)} chi|
    double bound_core = 0.0;       // n q^{-r/2} q^d
    double implied_constant = 0.0; // lhs / bound_core
    double short_norm = 0.0;       // |A(d, chi)| / q^d
    double eps = 0.0;
    std::string flags;
    cplx short_sum, smooth_sum;    // raw sums
};

inline const char* kComparisonHeader = "q,n,Q,chi,d,r,lhs,bound_core,implied_constant,short_norm,eps,flags";

inline std::string csv_row(const ComparisonRecord& r) {
    return join({std::to_string(r.q), std::to_string(r.n), r.Q, r.chi, std::to_string(r.d), std::to_string(r.r), format_double(r.lhs),
                 format_double(r.bound_core), format_double(r.implied_constant), format_double(r.short_norm), format_double(r.eps), r.flags},
                ",");
}

inline const char* kRawHeader = "q,n,chi,d,r,short_re,short_im,smooth_re,smooth_im";

inline std::string raw_row(const ComparisonRecord& r) {
    return join({std::to_string(r.q), std::to_string(r.n), r.chi, std::to_string(r.d), std::to_string(r.r), format_double(r.short_sum.real()),
                 format_double(r.short_sum.imag()), format_double(r.smooth_sum.real()), format_double(r.smooth_sum.imag())},
                ",");
}

struct SkippedCombo {
    u64 q = 0;
    std::size_t n = 0, d = 0, r = 0;
    std::string reason;
};

struct GridResult {
    std::vector<ComparisonRecord> records;
    std::vector<SkippedCombo> skipped;
    std::size_t combos_run = 0;
    std::size_t combos_resumed = 0;
    bool interrupted = false;
    double max_implied_constant = 0.0;
};

namespace detail {

inline std::shared_ptr<const UnitGroup> grid_group(const ExperimentConfig& cfg, u64 q, std::size_t n) {
    if (cfg.modulus) {
        auto F = std::make_shared<const Field>(Field::of_order(q));
        Poly Q = parse_poly(*F, *cfg.modulus);
        if (Q.degree() != n) throw std::invalid_argument("explicit Q has degree " + std::to_string(Q.degree()) + ", expected n = " + std::to_string(n));
        return UnitGroup::create(std::make_shared<const Modulus>(F, std::move(Q)));
    }
    return standard_unit_group(q, n);
}

/// Character indices under the selection policy, in increasing order.
inline std::vector<u64> select_characters(const ExperimentConfig& cfg, const UnitGroup& g) {
    const u64 G = g.order();
    const u64 first = cfg.include_principal ? 0 : 1;
    std::vector<u64> all;
    auto everything = [&] {
        for (u64 k = first; k < G; ++k) all.push_back(k);
    };
    auto sampled = [&] {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<u64> pick(1, G - 1);
        std::set<u64> chosen;
        if (cfg.include_principal) chosen.insert(0);
        const u64 want = std::min<u64>(cfg.sample_k, G - 1);
        while (chosen.size() < want + (cfg.include_principal ? 1 : 0)) chosen.insert(pick(rng));
        all.assign(chosen.begin(), chosen.end());
    };
    switch (cfg.policy) {
        case CharacterPolicy::all: everything(); break;
        case CharacterPolicy::sample:
            if (G <= 1) break;
            sampled();
            break;
        case CharacterPolicy::worst_case:
            if (G <= (u64{1} << 16)) {
                everything();
            } else {
                sampled();
                // Quadratic character of a cyclic component: k = order/2.
                if (g.components().size() == 1 && G % 2 == 0) all.push_back(G / 2);
                std::sort(all.begin(), all.end());
                all.erase(std::unique(all.begin(), all.end()), all.end());
            }
            break;
    }
    return all;
}

inline std::string combo_key(const std::string& kind, u64 q, std::size_t n, const std::string& Q, std::size_t d, std::size_t r) {
    return kind + ":q=" + std::to_string(q) + ";n=" + std::to_string(n) + ";Q=" + Q + ";d=" + std::to_string(d) + ";r=" + std::to_string(r);
}

class RecordWriter {
public:
    RecordWriter(const std::string& path, const char* header, bool resume) : path_(path) {
        if (path_.empty()) return;
        std::ifstream probe(path_);
        const bool exists = probe.good() && probe.peek() != std::ifstream::traits_type::eof();
        if (!resume || !exists) {
            std::ofstream out(path_, std::ios::trunc);
            out << header << '\n';
            if (!out) throw std::runtime_error("cannot write " + path_);
        }
    }
    void append(const std::vector<std::string>& rows) {
        if (path_.empty()) return;
        std::ofstream out(path_, std::ios::app);
        for (const auto& r : rows) out << r << '\n';
        if (!out) throw std::runtime_error("cannot write " + path_);
    }

private:
    std::string path_;
};

}  // namespace detail

/// Every (q, n, d, r) combo and selected character: the short sum A(d, chi)
/// against the smooth sum over P(d, r). A combo's records are persisted
/// together with its checkpoint key, so an interrupted run resumes cleanly.
inline GridResult run_main_theorem_grid(const ExperimentConfig& cfg, const std::function<void(const std::string&)>& notice = {}) {
    if (cfg.qs.empty() || cfg.ns.empty()) throw std::invalid_argument("experiment grid: q and n lists must be nonempty");
    if (cfg.d_min > cfg.d_max || cfg.r_min > cfg.r_max || cfg.r_min < 1) throw std::invalid_argument("experiment grid: empty or invalid d/r range");
    if (cfg.modulus && (cfg.qs.size() != 1 || cfg.ns.size() != 1)) throw std::invalid_argument("explicit Q requires a single q and n");
    GridResult out;
    Checkpoint ckpt(cfg.checkpoint_path, cfg.resume);
    detail::RecordWriter csv(cfg.csv_path, kComparisonHeader, cfg.resume);
    detail::RecordWriter raw(cfg.raw_path, kRawHeader, cfg.resume);
    auto say = [&](const std::string& s) {
        if (notice) notice(s);
    };
    for (u64 q : cfg.qs) {
        for (std::size_t n : cfg.ns) {
            const auto g = detail::grid_group(cfg, q, n);
            const std::string Qs = format_poly(g->modulus().poly());
            const auto chars = detail::select_characters(cfg, *g);
            const auto irr = irreducibles_up_to(g->field(), std::max<std::size_t>(std::min(cfg.r_max, cfg.d_max), 1));
            const RootsOfUnity roots(g->exponent());
            const double dn = static_cast<double>(n), dq = static_cast<double>(q);
            for (std::size_t d = cfg.d_min; d <= cfg.d_max; ++d) {
                const BigInt qd = ipow(BigInt(q), static_cast<unsigned>(d));
                std::vector<std::size_t> rs;
                for (std::size_t r = cfg.r_min; r <= std::min(cfg.r_max, d); ++r) {
                    const std::string key = detail::combo_key("main", q, n, Qs, d, r);
                    if (ckpt.done(key)) {
                        ++out.combos_resumed;
                        continue;
                    }
                    const bool in_range = main_theorem_in_range(q, n, d, r);
                    if (!in_range && !cfg.include_out_of_range) {
                        out.skipped.push_back({q, n, d, r, "out_of_range"});
                        say("skipped q=" + std::to_string(q) + " n=" + std::to_string(n) + " d=" + std::to_string(d) + " r=" + std::to_string(r) +
                            ": outside 2 log_q n <= r <= d <= n");
                        continue;
                    }
                    if (qd > cfg.budget || smooth_count(q, d, r) > cfg.budget) {
                        out.skipped.push_back({q, n, d, r, "budget"});
                        say("skipped q=" + std::to_string(q) + " n=" + std::to_string(n) + " d=" + std::to_string(d) + " r=" + std::to_string(r) +
                            ": work budget exceeded");
                        continue;
                    }
                    rs.push_back(r);
                }
                if (rs.empty()) continue;
                const auto short_profile = monic_profile(*g, d, cfg.workers);
                std::vector<cplx> A(chars.size());
                parallel_for(chars.size(), cfg.workers, [&](std::size_t i) { A[i] = character_sum(character_at(g, chars[i]), short_profile, roots).value; });
                const double qdd = qd.convert_to<double>();
                for (std::size_t r : rs) {
                    if (cfg.max_combos && out.combos_run >= cfg.max_combos) {
                        out.interrupted = true;
                        return out;
                    }
                    const auto smooth = smooth_profile(*g, d, r, irr, cfg.workers);
                    std::vector<cplx> S(chars.size());
                    parallel_for(chars.size(), cfg.workers, [&](std::size_t i) { S[i] = character_sum(character_at(g, chars[i]), smooth, roots).value; });
                    const double bound_core = dn * std::pow(dq, -static_cast<double>(r) / 2.0) * qdd;
                    const auto eps = epsilon_bound(q, d, r, n, cfg.C2, cfg.C3);
                    std::vector<ComparisonRecord> recs;
                    for (std::size_t i = 0; i < chars.size(); ++i) {
                        ComparisonRecord rec;
                        rec.q = q, rec.n = n, rec.Q = Qs, rec.chi = character_at(g, chars[i]).name();
                        rec.d = d, rec.r = r;
                        rec.short_sum = A[i], rec.smooth_sum = S[i];
                        rec.lhs = std::abs(A[i] - S[i]);
                        rec.bound_core = bound_core;
                        rec.implied_constant = rec.lhs / bound_core;
                        rec.short_norm = std::abs(A[i]) / qdd;
                        rec.eps = eps.value;
                        std::vector<std::string> flags;
                        if (!eps.in_range) flags.push_back("out_of_range");
                        if (r == d) flags.push_back("diagonal");
                        if (chars[i] == 0) flags.push_back("principal");
                        if (rec.short_norm > eps.value) flags.push_back("exceeds_eps");
                        rec.flags = join(flags, ";");
                        recs.push_back(std::move(rec));
                    }
                    if (cfg.policy == CharacterPolicy::worst_case && !recs.empty()) {
                        auto worst = std::max_element(recs.begin(), recs.end(), [](const auto& a, const auto& b) { return a.lhs < b.lhs; });
                        recs = {*worst};
                    }
                    std::vector<std::string> rows, raws;
                    for (const auto& rec : recs) {
                        rows.push_back(csv_row(rec));
                        raws.push_back(raw_row(rec));
                        out.max_implied_constant = std::max(out.max_implied_constant, rec.implied_constant);
                    }
                    csv.append(rows);
                    raw.append(raws);
                    ckpt.mark(detail::combo_key("main", q, n, Qs, d, r));
                    ++out.combos_run;
                    out.records.insert(out.records.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
                }
            }
        }
    }
    return out;
}

struct CorollaryRecord {
    u64 q = 0;
    std::size_t n = 0;
    std::string Q;
    std::size_t d = 0, r = 0;
    std::string worst_chi;
    double max_short_norm = 0.0;  // max_chi |A(d, chi)| / q^d over the selected characters
    double eps = 0.0;
    std::string flags;
};

inline const char* kCorollaryHeader = "q,n,Q,d,r,worst_chi,max_short_norm,eps,ratio,flags";

inline std::string csv_row(const CorollaryRecord& r) {
    return join({std::to_string(r.q), std::to_string(r.n), r.Q, std::to_string(r.d), std::to_string(r.r), r.worst_chi, format_double(r.max_short_norm),
                 format_double(r.eps), format_double(r.max_short_norm / r.eps), r.flags},
                ",");
}

/// Per combo: max over characters of |A(d, chi)| / q^d against eps(q, d, r, n).
/// Exceeding eps is flagged, not failed: the O-constants are unknown.
inline std::vector<CorollaryRecord> run_corollary_grid(const ExperimentConfig& cfg, const std::function<void(const std::string&)>& notice = {}) {
    if (cfg.qs.empty() || cfg.ns.empty()) throw std::invalid_argument("experiment grid: q and n lists must be nonempty");
    if (cfg.d_min > cfg.d_max || cfg.r_min > cfg.r_max || cfg.r_min < 1) throw std::invalid_argument("experiment grid: empty or invalid d/r range");
    std::vector<CorollaryRecord> out;
    Checkpoint ckpt(cfg.checkpoint_path, cfg.resume);
    detail::RecordWriter csv(cfg.csv_path, kCorollaryHeader, cfg.resume);
    for (u64 q : cfg.qs) {
        for (std::size_t n : cfg.ns) {
            const auto g = detail::grid_group(cfg, q, n);
            const std::string Qs = format_poly(g->modulus().poly());
            const auto chars = detail::select_characters(cfg, *g);
            const RootsOfUnity roots(g->exponent());
            for (std::size_t d = cfg.d_min; d <= cfg.d_max; ++d) {
                const BigInt qd = ipow(BigInt(q), static_cast<unsigned>(d));
                if (qd > cfg.budget) {
                    if (notice) notice("skipped q=" + std::to_string(q) + " n=" + std::to_string(n) + " d=" + std::to_string(d) + ": work budget exceeded");
                    continue;
                }
                std::optional<PhaseProfile> profile;
                std::string worst;
                double mx = -1.0;
                for (std::size_t r = cfg.r_min; r <= std::min(cfg.r_max, std::max<std::size_t>(d, 1)); ++r) {
                    const std::string key = detail::combo_key("corollary", q, n, Qs, d, r);
                    if (ckpt.done(key)) continue;
                    const auto eps = epsilon_bound(q, d, r, n, cfg.C2, cfg.C3);
                    if (!eps.in_range && !cfg.include_out_of_range) continue;
                    if (!profile) {
                        profile = monic_profile(*g, d, cfg.workers);
                        std::vector<double> norms(chars.size());
                        const double qdd = qd.convert_to<double>();
                        parallel_for(chars.size(), cfg.workers, [&](std::size_t i) {
                            norms[i] = std::abs(character_sum(character_at(g, chars[i]), *profile, roots).value) / qdd;
                        });
                        for (std::size_t i = 0; i < chars.size(); ++i)
                            if (norms[i] > mx) mx = norms[i], worst = character_at(g, chars[i]).name();
                    }
                    CorollaryRecord rec{q, n, Qs, d, r, worst, std::max(mx, 0.0), eps.value, ""};
                    std::vector<std::string> flags;
                    if (!eps.in_range) flags.push_back("out_of_range");
                    if (rec.max_short_norm > rec.eps) flags.push_back("exceeds_eps");
                    rec.flags = join(flags, ";");
                    csv.append({csv_row(rec)});
                    ckpt.mark(key);
                    out.push_back(std::move(rec));
                }
            }
        }
    }
    return out;
}

struct LMNReport {
    std::string chi;
    std::size_t r = 0, k_max = 0;
    std::vector<cplx> M;            // smooth sums, M_0 = 1
    std::vector<cplx> M_euler;      // the same from the deg <= r Euler product
    std::vector<cplx> N;            // from the deg > r Euler product
    std::vector<cplx> product;      // (M * N)_k
    std::vector<cplx> A;            // A(k, chi) by enumeration
    double max_error = 0.0;         // max_k |(M * N)_k - A(k, chi)|
    double max_m_error = 0.0;       // max_k |M_k - M_euler_k|
    bool pass(double tol = 1e-6) const { return max_error <= tol && max_m_error <= tol; }
};

/// Coefficients of M(z, chi) (smooth sums) times N(z, chi) (Euler product over
/// deg P > r) against A(k, chi), for k <= k_max.
inline LMNReport verify_l_equals_m_times_n(const Character& chi, std::size_t r, std::size_t k_max, unsigned workers = 1) {
    if (r < 1) throw std::invalid_argument("verify_l_equals_m_times_n: r must be >= 1");
    const auto irr = irreducibles_up_to(chi.group().field(), std::max(k_max, r));
    const RootsOfUnity roots(chi.value_modulus());
    LMNReport rep;
    rep.chi = chi.name();
    rep.r = r;
    rep.k_max = k_max;
    for (std::size_t k = 0; k <= k_max; ++k) {
        rep.M.push_back(k == 0 ? cplx(1.0) : character_sum(chi, smooth_profile(chi.group(), k, r, irr, workers), roots).value);
        rep.A.push_back(character_sum(chi, monic_profile(chi.group(), k, workers), roots).value);
    }
    rep.M_euler = euler_product_series(chi, irr, 1, r, k_max);
    rep.N = euler_product_series(chi, irr, r + 1, k_max, k_max);
    rep.product.assign(k_max + 1, 0.0);
    for (std::size_t k = 0; k <= k_max; ++k)
        for (std::size_t i = 0; i <= k; ++i) rep.product[k] += rep.M[i] * rep.N[k - i];
    for (std::size_t k = 0; k <= k_max; ++k) {
        rep.max_error = std::max(rep.max_error, std::abs(rep.product[k] - rep.A[k]));
        rep.max_m_error = std::max(rep.max_m_error, std::abs(rep.M[k] - rep.M_euler[k]));
    }
    return rep;
}

}  // namespace ffchar
