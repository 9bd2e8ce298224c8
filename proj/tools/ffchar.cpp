// ffchar: command-line front end for the character-sum, smooth-polynomial and
// primitive-density experiments.
//
// Exit codes: 0 all checks pass, 1 a mathematical check exceeded tolerance,
// 2 usage error, 3 work budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ffchar/ffchar.hpp"

using json = nlohmann::ordered_json;
using namespace ffchar;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string q = "2", n = "4", d, r, k, u = "0..30:1";
    std::string Q, chi, format = "human", out, policy = "all";
    std::optional<double> eps, C, c1, c2, tol;
    double C2 = 1.0, C3 = 1.0;
    u64 budget = 10'000'000;
    unsigned workers = default_workers();
    u64 seed = 1;
    std::size_t sample_k = 16;
    bool resume = false, out_of_range = false, principal = false;
};

// "5", "2,3,4", "6..10".
std::vector<u64> parse_int_list(const std::string& text, const char* what) {
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string tok;
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != s.size() || s.empty() || s[0] == '-') throw UsageError(std::string("--") + what + ": '" + s + "' is not a nonnegative integer");
        return static_cast<u64>(v);
    };
    while (std::getline(ss, tok, ',')) {
        const auto dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(num(tok));
        } else {
            const u64 a = num(tok.substr(0, dots)), b = num(tok.substr(dots + 2));
            if (a > b) throw UsageError(std::string("--") + what + ": empty range '" + tok + "'");
            if (b - a > 100000) throw UsageError(std::string("--") + what + ": range too long");
            for (u64 v = a; v <= b; ++v) out.push_back(v);
        }
    }
    if (out.empty()) throw UsageError(std::string("--") + what + " is required");
    return out;
}

// "2.5", "1,2,3", "0..30:0.5".
std::vector<double> parse_real_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != s.size()) throw UsageError(std::string("--") + what + ": '" + s + "' is not a number");
        return v;
    };
    while (std::getline(ss, tok, ',')) {
        const auto dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(num(tok));
            continue;
        }
        const auto colon = tok.find(':', dots);
        const double a = num(tok.substr(0, dots));
        const double b = num(tok.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
        const double h = colon == std::string::npos ? 1.0 : num(tok.substr(colon + 1));
        if (!(h > 0) || a > b || (b - a) / h > 1e6) throw UsageError(std::string("--") + what + ": bad range '" + tok + "'");
        const auto steps = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9));
        for (std::size_t i = 0; i <= steps; ++i) out.push_back(a + static_cast<double>(i) * h);
    }
    if (out.empty()) throw UsageError(std::string("--") + what + " is required");
    return out;
}

u64 single(const std::string& text, const char* what) {
    const auto v = parse_int_list(text, what);
    if (v.size() != 1) throw UsageError(std::string("--") + what + " takes a single value here");
    return v[0];
}

void check_field(u64 q) {
    try {
        (void)Field::of_order(q);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--q: ") + e.what());
    }
}

std::shared_ptr<const UnitGroup> make_group(const Options& o, u64 q, std::size_t n) {
    check_field(q);
    if (n < 1) throw UsageError("--n must be >= 1");
    try {
        checked_pow(q, static_cast<unsigned>(n));
    } catch (const std::exception&) {
        throw UsageError("--q/--n: q^n exceeds 2^63");
    }
    if (!o.Q.empty()) {
        auto F = std::make_shared<const Field>(Field::of_order(q));
        Poly Q;
        try {
            Q = parse_poly(*F, o.Q);
            if (Q.degree() != n) throw std::invalid_argument("degree " + std::to_string(Q.degree()) + " differs from --n " + std::to_string(n));
            return UnitGroup::create(std::make_shared<const Modulus>(F, std::move(Q)));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--Q: ") + e.what());
        }
    }
    return standard_unit_group(q, n);
}

void require_irreducible(const UnitGroup& g) {
    if (!g.modulus().irreducible()) throw UsageError("--Q must be irreducible for this subcommand");
}

void check_budget(const Options& o, const BigInt& work, const std::string& what) {
    if (work > o.budget) throw BudgetError(what + " needs " + work.str() + " enumerated polynomials, budget is " + std::to_string(o.budget));
}

std::vector<Character> characters_for(const Options& o, const std::shared_ptr<const UnitGroup>& g) {
    if (!o.chi.empty()) {
        try {
            return {parse_character(g, o.chi)};
        } catch (const std::exception& e) {
            throw UsageError(std::string("--chi: ") + e.what());
        }
    }
    if (g->order() > (u64{1} << 20)) throw BudgetError("dual group has " + std::to_string(g->order()) + " characters; select one with --chi");
    auto all = all_characters(g);
    all.erase(all.begin());
    return all;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string cell_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_null()) return "";
    if (v.is_array() && v.size() == 2 && v[0].is_number()) return format_double(v[0].get<double>()) + (v[1].get<double>() < 0 ? "" : "+") + format_double(v[1].get<double>()) + "i";
    return v.dump();
}

/// Rows of named cells rendered as JSON, CSV or an aligned human table.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;

    void add(std::vector<json> row) { rows.push_back(std::move(row)); }

    json to_json() const {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
            arr.push_back(std::move(obj));
        }
        return arr;
    }

    std::string to_csv() const {
        std::string s = join(header, ",") + "\n";
        for (const auto& row : rows) {
            std::vector<std::string> cells;
            for (const auto& c : row) cells.push_back(cell_text(c));
            s += join(cells, ",") + "\n";
        }
        return s;
    }

    std::string to_human() const {
        std::vector<std::vector<std::string>> text;
        std::vector<std::size_t> width(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
        for (const auto& row : rows) {
            std::vector<std::string> line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::string t = row[i].is_number_float() ? short_float(row[i].get<double>()) : cell_text(row[i]);
                width[i] = std::max(width[i], t.size());
                line.push_back(std::move(t));
            }
            text.push_back(std::move(line));
        }
        std::ostringstream os;
        auto emit = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
            os << '\n';
        };
        emit(header);
        for (const auto& line : text) emit(line);
        return os.str();
    }

    static std::string short_float(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", x);
        return buf;
    }
};

void emit(const Options& o, const Table& t, const std::optional<json>& nested = std::nullopt) {
    std::string text;
    if (o.format == "json")
        text = (nested ? *nested : t.to_json()).dump(2) + "\n";
    else if (o.format == "csv")
        text = t.to_csv();
    else
        text = t.to_human();
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + o.out);
}

double tol_or(const Options& o, double fallback) { return o.tol.value_or(fallback); }

int cmd_weil(const Options& o) {
    const double tol = tol_or(o, 1e-6);
    bool ok = true;
    Table t{{"q", "n", "Q", "chi", "degree", "root", "re", "im", "modulus", "class", "root_residual", "coeff_error"}, {}};
    json nested = json::array();
    for (u64 q : parse_int_list(o.q, "q")) {
        for (u64 n : parse_int_list(o.n, "n")) {
            auto g = make_group(o, q, n);
            check_budget(o, ipow(BigInt(q), static_cast<unsigned>(n - 1)), "weil");
            const auto chars = characters_for(o, g);
            const auto Ls = build_lpolynomials(chars, o.workers);
            const std::string Qs = format_poly(g->modulus().poly());
            for (const auto& L : Ls) {
                const auto rep = verify_weil(L, tol);
                const double cerr = coefficient_reconstruction_error(L);
                ok = ok && rep.pass && cerr <= tol;
                json rec = {{"q", q}, {"n", n}, {"Q", Qs}, {"chi", L.chi}, {"coeffs", json::array()}, {"roots", json::array()},
                            {"residuals", {{"root", L.root_residual}, {"coefficients", cerr}}}};
                for (const auto& a : L.coeffs) rec["coeffs"].push_back(cplx_json(a));
                for (std::size_t i = 0; i < rep.roots.size(); ++i) {
                    const auto& rc = rep.roots[i];
                    rec["roots"].push_back({{"re", rc.alpha.real()}, {"im", rc.alpha.imag()}, {"modulus", rc.modulus}, {"class", to_string(rc.cls)}});
                    t.add({q, n, Qs, L.chi, L.degree, i, rc.alpha.real(), rc.alpha.imag(), rc.modulus, to_string(rc.cls), L.root_residual, cerr});
                }
                if (rep.roots.empty()) t.add({q, n, Qs, L.chi, L.degree, nullptr, nullptr, nullptr, nullptr, "none", L.root_residual, cerr});
                nested.push_back(std::move(rec));
            }
        }
    }
    emit(o, t, nested);
    return ok ? kOk : kCheckFailed;
}

int cmd_primes_bound(const Options& o) {
    const double tol = tol_or(o, 1e-6);
    const auto ks = parse_int_list(o.k.empty() ? "1..10" : o.k, "k");
    const u64 kmax = *std::max_element(ks.begin(), ks.end());
    if (ks.front() < 1) throw UsageError("--k must be >= 1");
    bool ok = true;
    Table t{{"q", "n", "chi", "k", "observed", "bound", "ratio", "within", "von_mangoldt", "neg_power_sum", "identity_error"}, {}};
    for (u64 q : parse_int_list(o.q, "q")) {
        for (u64 n : parse_int_list(o.n, "n")) {
            auto g = make_group(o, q, n);
            check_budget(o, ipow(BigInt(q), static_cast<unsigned>(std::max<u64>(kmax, n - 1))), "primes-bound");
            const auto irr = irreducibles_up_to(g->field(), kmax);
            const auto chars = characters_for(o, g);
            const auto Ls = build_lpolynomials(chars, o.workers);
            const RootsOfUnity roots(g->exponent());
            for (std::size_t i = 0; i < chars.size(); ++i) {
                for (u64 k : ks) {
                    const auto s = prime_char_sum(chars[i], k, irr, roots);
                    const cplx vm = von_mangoldt_sum(chars[i], k, irr, roots);
                    const cplx ps = negated_power_sum(Ls[i].inverse_roots, k);
                    const double err = std::abs(vm - ps);
                    ok = ok && s.within() && err <= tol;
                    t.add({q, n, chars[i].name(), k, std::abs(s.value), s.bound, std::abs(s.value) / s.bound, s.within(), cplx_json(vm), cplx_json(ps), err});
                }
            }
        }
    }
    emit(o, t);
    return ok ? kOk : kCheckFailed;
}

int cmd_smooth_count(const Options& o) {
    Table t{{"q", "d", "r", "N_exact", "q^d*rho", "ratio", "normalized_exponent", "in_range"}, {}};
    const auto ds = parse_int_list(o.d.empty() ? "1..10" : o.d, "d");
    for (u64 q : parse_int_list(o.q, "q")) {
        check_field(q);
        for (u64 d : ds) {
            if (d > 4096) throw UsageError("--d too large");
            const auto rs = parse_int_list(o.r.empty() ? "1.." + std::to_string(std::max<u64>(d, 1)) : o.r, "r");
            for (u64 r : rs) {
                if (r < 1) throw UsageError("--r must be >= 1");
                if (static_cast<double>(d) / static_cast<double>(r) > default_dickman_table().u_max()) {
                    t.add({q, d, r, smooth_count(q, d, r).str(), nullptr, nullptr, nullptr, false});
                    continue;
                }
                const auto rep = soundararajan_check(q, d, r);
                t.add({q, d, r, rep.exact.str(), rep.prediction, rep.ratio,
                       rep.normalized_exponent ? json(*rep.normalized_exponent) : json(nullptr), rep.in_range});
            }
        }
    }
    emit(o, t);
    return kOk;
}

int cmd_dickman(const Options& o) {
    const double tol = tol_or(o, 1e-6);
    const auto& table = default_dickman_table();
    bool ok = true;
    Table t{{"u", "rho", "residual", "closed_form", "upper_bound", "ok"}, {}};
    for (double u : parse_real_list(o.u, "u")) {
        if (u < 0) throw UsageError("--u must be >= 0");
        if (u > table.u_max()) throw UsageError("--u beyond the tabulated range [0, 30]");
        const double rho = table(u);
        const double res = table.residual(u);
        bool row_ok = res <= tol;
        json closed = nullptr, upper = nullptr;
        if (u <= 1.0) {
            closed = 1.0;
        } else if (u <= 2.0) {
            closed = 1.0 - std::log(u);
        }
        if (closed.is_number()) row_ok = row_ok && std::fabs(rho - closed.get<double>()) <= 1e-9;
        if (u >= 1.0) upper = std::exp(-u * std::log(u));
        ok = ok && row_ok;
        t.add({u, rho, res, closed, upper, row_ok});
    }
    emit(o, t);
    return ok ? kOk : kCheckFailed;
}

ExperimentConfig grid_config(const Options& o) {
    ExperimentConfig cfg;
    cfg.qs.clear();
    cfg.ns.clear();
    for (u64 q : parse_int_list(o.q, "q")) check_field(q), cfg.qs.push_back(q);
    for (u64 n : parse_int_list(o.n, "n")) {
        if (n < 1) throw UsageError("--n must be >= 1");
        cfg.ns.push_back(n);
    }
    const auto ds = parse_int_list(o.d.empty() ? "1..8" : o.d, "d");
    const auto rs = parse_int_list(o.r.empty() ? "1..8" : o.r, "r");
    cfg.d_min = *std::min_element(ds.begin(), ds.end());
    cfg.d_max = *std::max_element(ds.begin(), ds.end());
    cfg.r_min = *std::min_element(rs.begin(), rs.end());
    cfg.r_max = *std::max_element(rs.begin(), rs.end());
    if (cfg.r_min < 1) throw UsageError("--r must be >= 1");
    if (!o.Q.empty()) {
        if (cfg.qs.size() != 1 || cfg.ns.size() != 1) throw UsageError("--Q needs a single --q and --n");
        cfg.modulus = o.Q;
        (void)make_group(o, cfg.qs[0], cfg.ns[0]);
    } else {
        for (u64 q : cfg.qs)
            for (std::size_t n : cfg.ns) try {
                    checked_pow(q, static_cast<unsigned>(n));
                } catch (const std::exception&) {
                    throw UsageError("--q/--n: q^n exceeds 2^63");
                }
    }
    try {
        cfg.policy = parse_policy(o.policy);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    cfg.sample_k = o.sample_k;
    cfg.include_principal = o.principal;
    cfg.include_out_of_range = o.out_of_range;
    cfg.C2 = o.C2, cfg.C3 = o.C3;
    cfg.budget = o.budget;
    cfg.workers = o.workers;
    cfg.seed = o.seed;
    cfg.resume = o.resume;
    if (!o.out.empty()) {
        cfg.csv_path = o.out;
        cfg.raw_path = o.out + ".raw";
        cfg.checkpoint_path = o.out + ".ckpt";
    } else if (o.resume) {
        throw UsageError("--resume needs --out (the checkpoint lives next to it)");
    }
    return cfg;
}

void grid_stdout(const Options& o, const Table& t) {
    // With --out the records already went to the CSV file.
    if (!o.out.empty() && o.format != "json") return;
    Options copy = o;
    copy.out.clear();
    emit(copy, t);
}

int cmd_main_thm(const Options& o) {
    const auto cfg = grid_config(o);
    const auto res = run_main_theorem_grid(cfg, [](const std::string& s) { std::cerr << "notice: " << s << '\n'; });
    Table t{{"q", "n", "Q", "chi", "d", "r", "lhs", "bound_core", "implied_constant", "short_norm", "eps", "flags"}, {}};
    for (const auto& r : res.records)
        t.add({r.q, r.n, r.Q, r.chi, r.d, r.r, r.lhs, r.bound_core, r.implied_constant, r.short_norm, r.eps, r.flags});
    grid_stdout(o, t);
    std::size_t budget_skips = 0;
    for (const auto& s : res.skipped) budget_skips += s.reason == "budget";
    std::cerr << "combos run: " << res.combos_run << ", resumed: " << res.combos_resumed << ", skipped: " << res.skipped.size()
              << ", max implied constant: " << format_double(res.max_implied_constant) << '\n';
    return budget_skips ? kBudget : kOk;
}

int cmd_corollary(const Options& o) {
    const auto cfg = grid_config(o);
    bool budget_hit = false;
    const auto recs = run_corollary_grid(cfg, [&](const std::string& s) {
        budget_hit = true;
        std::cerr << "notice: " << s << '\n';
    });
    Table t{{"q", "n", "Q", "d", "r", "worst_chi", "max_short_norm", "eps", "ratio", "flags"}, {}};
    for (const auto& r : recs) t.add({r.q, r.n, r.Q, r.d, r.r, r.worst_chi, r.max_short_norm, r.eps, r.max_short_norm / r.eps, r.flags});
    grid_stdout(o, t);
    return budget_hit ? kBudget : kOk;
}

std::vector<u64> degrees_or_schedule(const Options& o, u64 q, std::size_t n) {
    if (!o.d.empty()) return parse_int_list(o.d, "d");
    if (o.eps) {
        try {
            return {degree_schedule(q, n, *o.eps, o.C.value_or(1.0))};
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    throw UsageError("--d (or --eps with --C for the degree schedule) is required");
}

int cmd_density(const Options& o) {
    bool ok = true;
    Table t{{"q", "n", "d", "r", "count", "q^d", "density", "density_float", "target", "target_float", "deviation", "deviation_float", "omega", "eps",
             "predicted_bound", "max_char_norm", "exact_bound", "deviation/exact_bound", "holds"},
            {}};
    const std::optional<std::size_t> r = o.r.empty() ? std::nullopt : std::optional<std::size_t>(single(o.r, "r"));
    if (r && *r < 1) throw UsageError("--r must be >= 1");
    for (u64 q : parse_int_list(o.q, "q")) {
        for (u64 n : parse_int_list(o.n, "n")) {
            auto g = make_group(o, q, n);
            require_irreducible(*g);
            for (u64 d : degrees_or_schedule(o, q, n)) {
                check_budget(o, ipow(BigInt(q), static_cast<unsigned>(d)), "density");
                const bool exact = g->order() <= (u64{1} << 20);
                const auto rep = density_experiment(g, d, r, o.C2, o.C3, o.workers, exact);
                if (rep.exact_bound_holds) ok = ok && *rep.exact_bound_holds;
                const double dev = rep.deviation.to_double();
                t.add({q, n, d, rep.r, rep.count, rep.q_to_d.str(), rep.density.str(), rep.density.to_double(), rep.target.str(), rep.target.to_double(),
                       rep.deviation.str(), dev, rep.omega, rep.eps.value, rep.predicted_bound,
                       rep.max_char_norm ? json(*rep.max_char_norm) : json(nullptr), rep.exact_bound ? json(*rep.exact_bound) : json(nullptr),
                       rep.exact_bound && *rep.exact_bound > 0 ? json(dev / *rep.exact_bound) : json(nullptr),
                       rep.exact_bound_holds ? json(*rep.exact_bound_holds) : json(nullptr)});
            }
        }
    }
    emit(o, t);
    return ok ? kOk : kCheckFailed;
}

int cmd_sieve(const Options& o) {
    const double tol = tol_or(o, 1e-6);
    bool ok = true;
    Table t{{"q", "n", "d", "m", "S_m", "A/m", "deviation", "identity", "identity_error", "within_q^d_eps", "T", "primitive_count", "B_observed",
             "lower_bound"},
            {}};
    const std::optional<std::size_t> r = o.r.empty() ? std::nullopt : std::optional<std::size_t>(single(o.r, "r"));
    if (r && *r < 1) throw UsageError("--r must be >= 1");
    if (o.c1.has_value() != o.c2.has_value()) throw UsageError("--c1 and --c2 go together");
    for (u64 q : parse_int_list(o.q, "q")) {
        for (u64 n : parse_int_list(o.n, "n")) {
            auto g = make_group(o, q, n);
            require_irreducible(*g);
            for (u64 d : degrees_or_schedule(o, q, n)) {
                check_budget(o, ipow(BigInt(q), static_cast<unsigned>(d)), "sieve");
                const auto rep = sieve_quantities(g, d, r, o.C2, o.C3, o.c1, o.c2, o.workers);
                const u64 count = count_primitive(*g, d, factor_integer(BigInt(g->order())), o.workers);
                ok = ok && rep.T == count && rep.max_identity_error <= tol;
                for (const auto& term : rep.terms)
                    t.add({q, n, d, term.m.str(), term.S, term.expected.str(), term.deviation, cplx_json(term.identity), term.identity_error, term.within_eps,
                           rep.T, count, rep.B_observed, rep.lower_bound ? json(*rep.lower_bound) : json(nullptr)});
            }
        }
    }
    emit(o, t);
    return ok ? kOk : kCheckFailed;
}

int cmd_mertens(const Options& o) {
    Table t{{"q", "k", "product", "e^gamma*k", "ratio"}, {}};
    for (u64 q : parse_int_list(o.q, "q")) {
        check_field(q);
        for (u64 k : parse_int_list(o.k.empty() ? "1..20" : o.k, "k")) {
            if (k < 1 || k > 64) throw UsageError("--k must lie in [1, 64]");
            const auto m = mertens_product(q, static_cast<unsigned>(k));
            t.add({q, k, m.product, m.product / m.ratio, m.ratio});
        }
    }
    emit(o, t);
    return kOk;
}

int cmd_indicator(const Options& o) {
    const double tol = tol_or(o, 1e-9);
    bool ok = true;
    Table t{{"q", "n", "d", "units", "unit_max_deviation", "direct_count", "reconstructed", "main_term", "main_term_float", "error"}, {}};
    for (u64 q : parse_int_list(o.q, "q")) {
        for (u64 n : parse_int_list(o.n, "n")) {
            auto g = make_group(o, q, n);
            require_irreducible(*g);
            if (g->order() > (u64{1} << 16)) throw BudgetError("indicator check is exhaustive over N-1 <= 2^16 units");
            const auto unit = primitivity_indicator_check(g);
            ok = ok && unit.pass(tol);
            for (u64 d : parse_int_list(o.d.empty() ? "1.." + std::to_string(n) : o.d, "d")) {
                check_budget(o, ipow(BigInt(q), static_cast<unsigned>(d)), "indicator");
                const auto dec = indicator_decomposition(g, d, o.workers);
                ok = ok && dec.error <= 1e-6;
                t.add({q, n, d, unit.units, unit.max_deviation, dec.direct_count, dec.reconstructed.real(), dec.main_term.str(), dec.main_term.to_double(),
                       dec.error});
            }
        }
    }
    emit(o, t);
    return ok ? kOk : kCheckFailed;
}

int cmd_lmn(const Options& o) {
    const double tol = tol_or(o, 1e-6);
    const u64 q = single(o.q, "q"), n = single(o.n, "n");
    auto g = make_group(o, q, n);
    const u64 r = single(o.r.empty() ? "2" : o.r, "r");
    const u64 kmax = single(o.k.empty() ? "8" : o.k, "k");
    if (r < 1) throw UsageError("--r must be >= 1");
    check_budget(o, ipow(BigInt(q), static_cast<unsigned>(kmax)), "lmn");
    const auto chars = characters_for(o, g);
    if (chars.size() > 64 && o.chi.empty()) throw UsageError("select a character with --chi");
    bool ok = true;
    Table t{{"chi", "k", "M_k", "M_k_euler", "N_k", "(M*N)_k", "A(k,chi)", "error"}, {}};
    for (const auto& chi : chars) {
        const auto rep = verify_l_equals_m_times_n(chi, r, kmax, o.workers);
        ok = ok && rep.pass(tol);
        for (std::size_t k = 0; k <= kmax; ++k)
            t.add({rep.chi, k, cplx_json(rep.M[k]), cplx_json(rep.M_euler[k]), cplx_json(rep.N[k]), cplx_json(rep.product[k]), cplx_json(rep.A[k]),
                   std::abs(rep.product[k] - rep.A[k])});
    }
    emit(o, t);
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character sums, L-polynomials, smooth polynomials and primitive-element density over F_q[t]."};
    app.require_subcommand(1);
    Options o;

    auto env = [](CLI::Option* opt, const std::string& name) { return opt->envname("FFCHAR_" + name); };
    auto add_q = [&](CLI::App* s) { env(s->add_option("--q", o.q, "field size q = p^e <= 65536 (list or range allowed)")->capture_default_str(), "Q_SIZE"); };
    auto add_n = [&](CLI::App* s) { env(s->add_option("--n", o.n, "degree of the modulus Q")->capture_default_str(), "N"); };
    auto add_Q = [&](CLI::App* s) { env(s->add_option("--Q", o.Q, "explicit monic modulus, e.g. \"t^4+t+1\" or \"1,1,0,0,1\" (low to high)"), "MODULUS"); };
    auto add_d = [&](CLI::App* s) { env(s->add_option("--d", o.d, "degree(s) d: value, list or range a..b"), "D"); };
    auto add_r = [&](CLI::App* s) { env(s->add_option("--r", o.r, "smoothness bound(s) r"), "R"); };
    auto add_k = [&](CLI::App* s, const char* help) { env(s->add_option("--k", o.k, help), "K"); };
    auto add_chi = [&](CLI::App* s) { env(s->add_option("--chi", o.chi, "character chi[k] or chi[k1,k2]; default: all non-principal"), "CHI"); };
    auto add_tol = [&](CLI::App* s) { env(s->add_option("--tol", o.tol, "tolerance override"), "TOL"); };
    auto add_consts = [&](CLI::App* s) {
        env(s->add_option("--C2", o.C2, "constant in the smooth part of eps")->capture_default_str(), "C2");
        env(s->add_option("--C3", o.C3, "constant in the n q^{-r/2} part of eps")->capture_default_str(), "C3");
    };
    auto add_grid = [&](CLI::App* s) {
        env(s->add_option("--policy", o.policy, "character selection: all, sample-k, worst-case")->capture_default_str(), "POLICY");
        env(s->add_option("--sample-k", o.sample_k, "characters drawn by the sampling policies")->capture_default_str(), "SAMPLE_K");
        env(s->add_option("--seed", o.seed, "seed for the sampling policies")->capture_default_str(), "SEED");
        env(s->add_flag("--resume", o.resume, "skip combos recorded in <out>.ckpt and append to <out>"), "RESUME");
        env(s->add_flag("--allow-out-of-range", o.out_of_range, "also run combos outside 2 log_q n <= r <= d <= n"), "ALLOW_OUT_OF_RANGE");
        env(s->add_flag("--include-principal", o.principal, "include the principal character"), "INCLUDE_PRINCIPAL");
    };
    auto add_common = [&](CLI::App* s) {
        env(s->add_option("--format", o.format, "output format: human, csv, json")->check(CLI::IsMember({"human", "csv", "json"}))->capture_default_str(),
            "FORMAT");
        env(s->add_option("--out", o.out, "output file (grids: the persisted CSV, with .ckpt and .raw beside it)"), "OUT");
        env(s->add_option("--workers", o.workers, "worker threads; 1 is fully sequential")->check(CLI::Range(1u, 1024u))->capture_default_str(), "WORKERS");
        env(s->add_option("--budget", o.budget, "max enumerated polynomials per combo")->capture_default_str(), "BUDGET");
    };

    auto* weil = app.add_subcommand("weil", "Weil's theorem: every inverse root of L(z,chi) has modulus 1 or sqrt(q), for all non-principal chi mod Q");
    add_q(weil), add_n(weil), add_Q(weil), add_chi(weil), add_tol(weil), add_common(weil);

    auto* primes = app.add_subcommand("primes-bound",
                                      "Character sums over irreducibles of degree k stay below (n+1) q^{k/2}/k; von Mangoldt sums equal -sum alpha_i^k");
    add_q(primes), add_n(primes), add_Q(primes), add_chi(primes), add_k(primes, "degree(s) k of the irreducibles (default 1..10)"), add_tol(primes),
        add_common(primes);

    auto* smooth = app.add_subcommand("smooth-count", "Exact N(d,r) against the smooth-count estimate N(d,r) = q^d rho(d/r) q^{O(d log d / r^2)}");
    add_q(smooth), add_d(smooth), add_r(smooth), add_common(smooth);

    auto* dickman = app.add_subcommand("dickman", "The Dickman function: u rho(u) = int_{u-1}^u rho, rho = 1 - log u on [1,2], rho(u) <= exp(-u log u)");
    env(dickman->add_option("--u", o.u, "points u: list or range a..b:step")->capture_default_str(), "U");
    add_tol(dickman), add_common(dickman);

    auto* main_thm = app.add_subcommand("main-thm", "Short sums vs smooth sums: A(d,chi) - sum over P(d,r) of chi is O(n q^{-r/2} q^d); reports the implied constant");
    add_q(main_thm), add_n(main_thm), add_Q(main_thm), add_d(main_thm), add_r(main_thm), add_consts(main_thm), add_grid(main_thm), add_common(main_thm);

    auto* corollary = app.add_subcommand("corollary", "Normalized short sums: |A(d,chi)|/q^d against eps = rho(d/r) q^{C2 d log d/r^2} + C3 n q^{-r/2}");
    add_q(corollary), add_n(corollary), add_Q(corollary), add_d(corollary), add_r(corollary), add_consts(corollary), add_grid(corollary),
        add_common(corollary);

    auto* density = app.add_subcommand("density", "Density of primitive elements among monic degree-d polynomials: deviation from phi(N-1)/(N-1) is 2^omega(N-1) O(eps)");
    add_q(density), add_n(density), add_Q(density), add_d(density), add_r(density), add_consts(density);
    env(density->add_option("--eps", o.eps, "target eps: picks d from the degree schedule when --d is absent"), "EPS");
    env(density->add_option("--C", o.C, "constant C of the degree schedule (default 1)"), "C");
    add_common(density);

    auto* sieve = app.add_subcommand("sieve", "Shifted-sieve quantities S_m and T with U = discrete log; optional lower bound with user constants c1, c2");
    add_q(sieve), add_n(sieve), add_Q(sieve), add_d(sieve), add_r(sieve), add_consts(sieve), add_tol(sieve);
    env(sieve->add_option("--eps", o.eps, "target eps: picks d from the degree schedule when --d is absent"), "EPS");
    env(sieve->add_option("--C", o.C, "constant C of the degree schedule (default 1)"), "C");
    env(sieve->add_option("--c1", o.c1, "sieve constant c1 (no default is asserted)"), "C1");
    env(sieve->add_option("--c2", o.c2, "sieve constant c2 (no default is asserted)"), "C2_SIEVE");
    add_common(sieve);

    auto* mertens = app.add_subcommand("mertens", "Mertens estimate: prod over deg P <= k of (1 - q^{-deg P})^{-1} = e^gamma k (1 + o(1))");
    add_q(mertens), add_k(mertens, "k value(s) (default 1..20)"), add_common(mertens);

    auto* indicator = app.add_subcommand("indicator", "Primitivity indicator as sum over m | N-1 of mu(m)/m times the characters with chi^m principal");
    add_q(indicator), add_n(indicator), add_Q(indicator), add_d(indicator), add_tol(indicator), add_common(indicator);

    auto* lmn = app.add_subcommand("lmn", "Coefficientwise check of L(z,chi) = M(z,chi) N(z,chi), the split of the Euler product at degree r");
    add_q(lmn), add_n(lmn), add_Q(lmn), add_chi(lmn), add_r(lmn), add_k(lmn, "highest coefficient checked (default 8)"), add_tol(lmn), add_common(lmn);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "weil") return cmd_weil(o);
        if (name == "primes-bound") return cmd_primes_bound(o);
        if (name == "smooth-count") return cmd_smooth_count(o);
        if (name == "dickman") return cmd_dickman(o);
        if (name == "main-thm") return cmd_main_thm(o);
        if (name == "corollary") return cmd_corollary(o);
        if (name == "density") return cmd_density(o);
        if (name == "sieve") return cmd_sieve(o);
        if (name == "mertens") return cmd_mertens(o);
        if (name == "indicator") return cmd_indicator(o);
        if (name == "lmn") return cmd_lmn(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
