#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ffchar/experiments.hpp"

using namespace ffchar;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

class ScratchDir : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("ffchar_") + info->test_suite_name() + "_" + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

ExperimentConfig small_grid() {
    ExperimentConfig cfg;
    cfg.qs = {2};
    cfg.ns = {8};
    cfg.d_min = 1;
    cfg.d_max = 8;
    cfg.r_min = 1;
    cfg.r_max = 8;
    cfg.include_out_of_range = true;
    return cfg;
}

}  // namespace

TEST(Grid, DiagonalRowsVanish) {
    const auto res = run_main_theorem_grid(small_grid());
    ASSERT_FALSE(res.records.empty());
    for (const auto& rec : res.records) {
        if (rec.r == rec.d) {
            EXPECT_EQ(rec.lhs, 0.0) << rec.chi << " d=" << rec.d;
            EXPECT_NE(rec.flags.find("diagonal"), std::string::npos);
        }
        EXPECT_LE(rec.r, rec.d);
        EXPECT_NEAR(rec.bound_core, 8.0 * std::pow(2.0, rec.d - rec.r / 2.0), 1e-9 * rec.bound_core);
    }
}

TEST(Grid, PrincipalRowCountsNonSmooth) {
    auto cfg = small_grid();
    cfg.include_principal = true;
    const auto res = run_main_theorem_grid(cfg);
    std::size_t seen = 0;
    for (const auto& rec : res.records) {
        if (rec.flags.find("principal") == std::string::npos || rec.d >= 8) continue;
        ++seen;
        // Every monic of degree < n is a unit, so both sums are plain counts.
        const double want = (ipow(BigInt(2), static_cast<unsigned>(rec.d)) - smooth_count(2, rec.d, rec.r)).convert_to<double>();
        EXPECT_EQ(rec.lhs, want) << rec.d << " " << rec.r;
    }
    EXPECT_GT(seen, 0u);
}

TEST(Grid, RangeFilterSkips) {
    auto cfg = small_grid();
    cfg.include_out_of_range = false;
    const auto res = run_main_theorem_grid(cfg);
    for (const auto& rec : res.records) EXPECT_TRUE(main_theorem_in_range(2, 8, rec.d, rec.r));
    for (const auto& s : res.skipped) EXPECT_EQ(s.reason, "out_of_range");
    EXPECT_FALSE(res.skipped.empty());
}

TEST(Grid, BudgetSkips) {
    auto cfg = small_grid();
    cfg.budget = 64;
    const auto res = run_main_theorem_grid(cfg);
    for (const auto& rec : res.records) EXPECT_LE(rec.d, 6u);
    bool any = false;
    for (const auto& s : res.skipped) any = any || s.reason == "budget";
    EXPECT_TRUE(any);
}

TEST(Grid, WorstCaseKeepsMaximum) {
    auto all = small_grid();
    auto worst = small_grid();
    worst.policy = CharacterPolicy::worst_case;
    const auto a = run_main_theorem_grid(all), w = run_main_theorem_grid(worst);
    EXPECT_EQ(w.records.size(), w.combos_run);
    for (const auto& rec : w.records) {
        double mx = 0.0;
        for (const auto& x : a.records)
            if (x.d == rec.d && x.r == rec.r) mx = std::max(mx, x.lhs);
        EXPECT_EQ(rec.lhs, mx);
    }
}

TEST(Grid, SampleIsSeeded) {
    auto cfg = small_grid();
    cfg.qs = {3};
    cfg.ns = {6};
    cfg.d_max = 3;
    cfg.r_max = 3;
    cfg.policy = CharacterPolicy::sample;
    cfg.sample_k = 5;
    const auto a = run_main_theorem_grid(cfg), b = run_main_theorem_grid(cfg);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(csv_row(a.records[i]), csv_row(b.records[i]));
    EXPECT_EQ(a.records.size(), 5u * a.combos_run);
    EXPECT_THROW(parse_policy("most"), std::invalid_argument);
}

TEST_F(ScratchDir, CsvHeaderAndWorkerIndependence) {
    auto one = small_grid(), three = small_grid();
    one.csv_path = (dir_ / "w1.csv").string();
    three.csv_path = (dir_ / "w3.csv").string();
    three.workers = 3;
    run_main_theorem_grid(one);
    run_main_theorem_grid(three);
    const std::string a = slurp(one.csv_path), b = slurp(three.csv_path);
    EXPECT_EQ(a.substr(0, a.find('\n')), "q,n,Q,chi,d,r,lhs,bound_core,implied_constant,short_norm,eps,flags");
    EXPECT_EQ(a, b);
}

TEST_F(ScratchDir, ResumeReproducesUninterruptedRun) {
    auto full = small_grid();
    full.csv_path = (dir_ / "full.csv").string();
    run_main_theorem_grid(full);

    auto part = small_grid();
    part.csv_path = (dir_ / "part.csv").string();
    part.checkpoint_path = (dir_ / "part.ckpt").string();
    part.max_combos = 7;
    const auto first = run_main_theorem_grid(part);
    EXPECT_TRUE(first.interrupted);
    EXPECT_EQ(first.combos_run, 7u);
    part.resume = true;
    part.max_combos = 0;
    const auto second = run_main_theorem_grid(part);
    EXPECT_FALSE(second.interrupted);
    EXPECT_EQ(second.combos_resumed, 7u);
    EXPECT_EQ(slurp(full.csv_path), slurp(part.csv_path));
}

TEST_F(ScratchDir, RawSumsReproduceLhs) {
    auto cfg = small_grid();
    cfg.csv_path = (dir_ / "g.csv").string();
    cfg.raw_path = (dir_ / "g.raw").string();
    run_main_theorem_grid(cfg);
    const auto rows = split(slurp(cfg.csv_path), '\n');
    const auto raws = split(slurp(cfg.raw_path), '\n');
    ASSERT_EQ(rows.size(), raws.size());
    EXPECT_EQ(raws[0], "q,n,chi,d,r,short_re,short_im,smooth_re,smooth_im");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].empty()) continue;
        const auto r = split(raws[i], ',');
        const auto c = split(rows[i], ',');
        ASSERT_EQ(r.size(), 9u);
        const cplx s(std::stod(r[5]), std::stod(r[6])), m(std::stod(r[7]), std::stod(r[8]));
        EXPECT_EQ(std::abs(s - m), std::stod(c[6])) << rows[i];
    }
}

TEST(Corollary, DegenerateDegrees) {
    ExperimentConfig cfg;
    cfg.qs = {2};
    cfg.ns = {6};
    cfg.d_min = 0;
    cfg.d_max = 8;
    cfg.r_min = 1;
    cfg.r_max = 8;
    cfg.include_out_of_range = true;
    const auto recs = run_corollary_grid(cfg);
    ASSERT_FALSE(recs.empty());
    for (const auto& rec : recs) {
        if (rec.d == 0) {
            EXPECT_EQ(rec.max_short_norm, 1.0);
        }
        if (rec.d >= 6) {
            EXPECT_LE(rec.max_short_norm, 1e-12) << rec.d;
        }
        if (rec.d >= 1 && rec.d < 6) {
            EXPECT_GT(rec.max_short_norm, 0.0);
            EXPECT_LE(rec.max_short_norm, 1.0);
        }
    }
    std::ostringstream hdr;
    hdr << kCorollaryHeader;
    EXPECT_EQ(hdr.str(), "q,n,Q,d,r,worst_chi,max_short_norm,eps,ratio,flags");
}

TEST(LMN, FactorizationHolds) {
    const auto g = standard_unit_group(2, 6);
    for (u64 k : {1ULL, 5ULL, 21ULL, 62ULL}) {
        const auto chi = character_at(g, k);
        for (std::size_t r = 1; r <= 5; ++r) {
            const auto rep = verify_l_equals_m_times_n(chi, r, 9);
            EXPECT_TRUE(rep.pass()) << chi.name() << " r=" << r << " " << rep.max_error << " " << rep.max_m_error;
            // N has no terms in degrees 1..r.
            for (std::size_t i = 1; i <= r; ++i) EXPECT_EQ(rep.N[i], cplx(0.0));
            // At k = r + 1 the only correction is the prime sum of degree r + 1.
            EXPECT_NEAR(std::abs(rep.A[r + 1] - rep.M[r + 1] - rep.N[r + 1]), 0.0, 1e-9);
        }
    }
}

TEST(LMN, PrincipalCharacter) {
    const auto g = standard_unit_group(3, 3);
    const auto rep = verify_l_equals_m_times_n(principal_character(g), 2, 6);
    EXPECT_TRUE(rep.pass());
    EXPECT_NEAR(rep.A[2].real(), 9.0, 1e-12);
    EXPECT_THROW(verify_l_equals_m_times_n(principal_character(g), 0, 3), std::invalid_argument);
}
