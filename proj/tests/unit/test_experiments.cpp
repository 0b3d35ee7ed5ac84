#include <doctest.h>

#include "nbrcx/errors.hpp"
#include "nbrcx/experiments.hpp"
#include "nbrcx/records.hpp"

using namespace nbrcx;

namespace {

ExperimentConfig census_cfg(std::size_t trials, std::size_t threads)
{
    ExperimentConfig c;
    c.kind = ExperimentKind::SupportCensus;
    c.n = {60, 80};
    c.m = {2, 4};
    c.p = {0.3};
    c.trials = trials;
    c.seed = 99;
    c.threads = threads;
    return c;
}

const FSet kExample1 = {{0, 1, 2}, {1, 2, 3}, {2, 4, 5}};

}  // namespace

TEST_CASE("run_indexed returns results in index order at any width")
{
    for (std::size_t w : {1, 2, 8}) {
        const auto r = run_indexed(100, w, [](std::size_t i) { return i * i; });
        for (std::size_t i = 0; i < 100; ++i) CHECK(r[i] == i * i);
    }
    CHECK_THROWS_AS(run_indexed(10, 4,
                                [](std::size_t i) -> int {
                                    if (i >= 3) throw ConfigError("boom");
                                    return 0;
                                }),
                    ConfigError);
}

TEST_CASE("grid expansion order")
{
    const auto g = expand_grid(census_cfg(1, 1));
    REQUIRE(g.size() == 4);
    CHECK(g[0].n == 60);
    CHECK(g[1].m == 4);
    CHECK(g[2].n == 80);
    CHECK(g[3].index == 3);

    ExperimentConfig c;
    c.kind = ExperimentKind::CopyCount;
    c.n = {50};
    c.m = {2};
    c.beta = {1.5, 2.0};
    const auto b = expand_grid(c);
    CHECK(b[1].p == doctest::Approx(std::pow(50.0, -0.5)));

    ExperimentConfig f;
    f.n = {100, 200};
    f.family = parse_family("const:0.5", "ceil_div:4");
    const auto fg = expand_grid(f);
    CHECK(fg[1].m == 50);
}

TEST_CASE("support census is identical across thread widths")
{
    const auto a = run_support_census(census_cfg(3, 1));
    const auto b = run_support_census(census_cfg(3, 8));
    CHECK(support_csv(a.records) == support_csv(b.records));
    REQUIRE(a.records.size() == 12);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].grid_index == i / 3);
        CHECK(a.records[i].trial == i % 3);
    }
}

TEST_CASE("support census face frequency is near q at n=150, p=0.2, m=4")
{
    ExperimentConfig c;
    c.n = {150};
    c.m = {4};
    c.p = {0.2};
    c.trials = 100;
    c.seed = 4;
    const auto r = run_support_census(c);
    REQUIRE(r.summary.size() == 1);
    const auto& s = r.summary[0];
    CHECK(s.t == 2);
    CHECK(s.ratio_below.mean == 1.0);
    REQUIRE(s.z_face);
    CHECK(std::abs(*s.z_face) <= 5.0);
}

TEST_CASE("copy sweep: a single vertex counts the vertices")
{
    ExperimentConfig c;
    c.kind = ExperimentKind::CopyCount;
    c.n = {40};
    c.m = {2};
    c.beta = {1.5, 2.5};
    c.x_facets = {{0}};
    c.trials = 4;
    c.seed = 8;
    const auto r = run_copy_count_sweep(c);
    for (const auto& rec : r.records) CHECK(rec.copies == rec.vertices);

    c.x_facets = {{0, 1, 2, 3, 4, 5, 6, 7, 8}};
    CHECK_THROWS_AS(run_copy_count_sweep(c), ConfigError);
}

TEST_CASE("copy sweep over beta is deterministic and rises with beta")
{
    ExperimentConfig c;
    c.kind = ExperimentKind::CopyCount;
    c.n = {50};
    c.m = {2};
    c.beta = {1.45, 1.8};
    c.x_facets = kExample1;
    c.trials = 4;
    c.seed = 12;
    const auto a = run_copy_count_sweep(c);
    c.threads = 4;
    const auto b = run_copy_count_sweep(c);
    CHECK(copy_csv(a.records) == copy_csv(b.records));
    CHECK(a.summary[1].copies.mean >= a.summary[0].copies.mean);
}

TEST_CASE("threshold probe predictions")
{
    ExperimentConfig c;
    c.kind = ExperimentKind::ThresholdProbe;
    c.property = ProbeProperty::SomeKFace;
    c.k = 2;
    CHECK(*predicted_threshold(c, 2) == make_rational(1));
    c.property = ProbeProperty::AllKFaces;
    c.k = 1;
    CHECK(*predicted_threshold(c, 3) == make_rational(1));
    c.property = ProbeProperty::ContainsX;
    for (std::int64_t k = 1; k <= 3; ++k) {
        std::vector<std::int64_t> facet(static_cast<std::size_t>(k));
        std::iota(facet.begin(), facet.end(), 0);
        c.x_facets = {facet};
        for (long long m = 1; m <= 3; ++m) CHECK(*predicted_threshold(c, m) == make_rational(k * m, k + m));
    }
}

TEST_CASE("threshold probe runs and is deterministic")
{
    ExperimentConfig c;
    c.kind = ExperimentKind::ThresholdProbe;
    c.property = ProbeProperty::SomeKFace;
    c.k = 2;
    c.n = {60};
    c.m = {2};
    c.beta = {0.6, 2.0};
    c.trials = 10;
    c.seed = 5;
    const auto a = run_threshold_probe(c);
    c.threads = 3;
    CHECK(probe_csv(run_threshold_probe(c).records) == probe_csv(a.records));
    CHECK(a.summary[1].fraction.mean >= a.summary[0].fraction.mean);
    REQUIRE(a.predicted.size() == 1);
}

TEST_CASE("Theorem-3 hypotheses and the analytic Y expectation")
{
    CHECK(expected_copies_y(10, 3, 1, 1, 1, 1.0 / (1 - std::log(0.5) / std::log(10.0))) ==
          doctest::Approx(360.0).epsilon(1e-9));

    const FSet two_edges = {{0, 1}, {2, 3}};
    const auto h = theorem3_hypotheses(two_edges, 17, 1.9);
    CHECK(h.pure);
    CHECK(h.k == 2);
    CHECK(h.x0 == 4);
    CHECK(h.phi == 2);
    CHECK(h.m_large);
    CHECK(h.beta_lower == make_rational(34, 19));
    CHECK(h.beta_in_range);
    CHECK(h.all());
    CHECK_FALSE(theorem3_hypotheses(two_edges, 16, 1.9).m_large);
    CHECK_FALSE(theorem3_hypotheses(two_edges, 17, 1.7).beta_in_range);
}

TEST_CASE("Theorem-3 probe runs and flags violated hypotheses")
{
    ExperimentConfig c;
    c.kind = ExperimentKind::Theorem3Ratio;
    c.n = {30, 60};
    c.m = {2};
    c.beta = {1.5};
    c.x_facets = {{0, 1}};
    c.trials = 3;
    c.seed = 1;
    const auto r = theorem3_ratio_probe(c);
    CHECK(r.rows.size() == 2);
    CHECK_FALSE(r.hypotheses.all());
    CHECK(r.trend.find("hypotheses violated") != std::string::npos);
}
