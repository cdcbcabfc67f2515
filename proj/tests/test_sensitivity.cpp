#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "infoflow/errors.hpp"
#include "infoflow/sensitivity.hpp"

using namespace infoflow;
using K = AbsorbingKind;

namespace {

const CountVector kD({"S", "US", "DI"}, {15, 10, 5});

}  // namespace

TEST_CASE("reallocate examples") {
    const auto zero = reallocate(kD, 0);
    CHECK(zero.counts() == std::vector<double>{18, 12, 0});
    CHECK(reallocate(kD, 5) == kD);
    const auto full = reallocate(kD, 30);
    CHECK(full.counts() == std::vector<double>{0, 0, 30});
    CHECK(full.total() == 30);
}

TEST_CASE("reallocate errors and DI insertion") {
    CHECK_THROWS_AS(reallocate(kD, 31), ExceedsTotalError);
    CHECK_THROWS_AS(reallocate(kD, -1), ExceedsTotalError);
    CHECK_THROWS_AS(reallocate(CountVector({"DI"}, {4}), 2), NoNonDiTargetsError);

    const auto inserted = reallocate(CountVector({"B", "S", "US"}, {4, 4, 2}), 5);
    CHECK(inserted.labels() == std::vector<std::string>{"B", "DI", "S", "US"});
    CHECK(inserted.counts() == std::vector<double>{2, 5, 2, 1});
}

TEST_CASE("property: reallocate keeps the total and the non-DI ratios") {
    RandomStream rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        const double s = std::floor(1 + 40 * rng.uniform());
        const double u = std::floor(40 * rng.uniform());
        const double di = std::floor(40 * rng.uniform());
        const double total = s + u + di;
        const double target = std::floor((total + 1) * rng.uniform());
        const auto out = reallocate(CountVector({"S", "US", "DI"}, {s, u, di}), target);
        CHECK(out[2] == target);
        CHECK(std::abs(out.total() - total) <= 1e-12 * total);
        // s' * u == u' * s up to rounding of the two products
        CHECK(std::abs(out[0] * u - out[1] * s) <= 1e-12 * total * total);
    }
}

TEST_CASE("impact_ratio arithmetic") {
    CHECK(impact_ratio(0.507, 0.345, 30, 0) == doctest::Approx(0.0054).epsilon(1e-12));
    CHECK(std::abs(impact_ratio(0.554, 0.154, 55, 0) - 0.00727) < 5e-6);
    CHECK(impact_ratio(0.5, 0.5, 10, 0) == 0.0);
    CHECK_THROWS_AS(impact_ratio(0.5, 0.4, 3, 3), DegenerateRangeError);
}

TEST_CASE("plug-in sweeps are monotone for every stakeholder") {
    const auto spec = reference_network();
    for (const char* id : {"B", "C", "D", "E"}) {
        const auto sweep = sweep_ineffective(spec, id, 1, 0, SweepMode::PlugIn);
        CHECK(sweep.points.size() == static_cast<std::size_t>(sweep.n_max) + 1);
        for (std::size_t k = 1; k < sweep.points.size(); ++k) {
            CHECK(sweep.points[k].mean_p_di >= sweep.points[k - 1].mean_p_di);
            CHECK(sweep.points[k].mean_p_s <= sweep.points[k - 1].mean_p_s);
        }
        for (const auto& p : sweep.points) CHECK(std::abs(p.mean_p_di + p.mean_p_s + p.mean_p_us - 1.0) < 1e-9);
        CHECK(sweep.impact_ratio > 0.0);
    }
}

TEST_CASE("plug-in D sweep matches the closed-form path analysis") {
    // D receives 0.3 of A's flow and E 0.55; E sends 35/55 to S.
    // P_S = 0.3 * s_D / 30 + 0.55 * 35 / 55 = 0.01 * (s_D + 35).
    const auto sweep = sweep_ineffective(reference_network(), "D", 1, 0, SweepMode::PlugIn);
    CHECK(sweep.n_max == 30);
    for (const auto& p : sweep.points) {
        const double s_d = 15.0 * (30.0 - p.n_di) / 25.0;
        CHECK(p.mean_p_s == doctest::Approx(0.01 * (s_d + 35)).epsilon(1e-12));
    }
    CHECK(sweep.p_s_at_min_di == doctest::Approx(0.53));
    CHECK(sweep.p_s_at_max_di == doctest::Approx(0.35));
}

TEST_CASE("stakeholder without a DI edge gets one; P_DI is linear") {
    NetworkSpec s;
    s.start = "A";
    s.stakeholders = {{"A", Level::Federal}, {"X", Level::Local}};
    s.flows = {{"A", "X", 3}, {"X", K::S, 10}};
    const auto sweep = sweep_ineffective(s, "X", 1, 0, SweepMode::PlugIn);
    REQUIRE(sweep.points.size() == 11);
    for (const auto& p : sweep.points) CHECK(p.mean_p_di == doctest::Approx(p.n_di / 10.0).epsilon(1e-12));
    CHECK(sweep.points.back().mean_p_di == doctest::Approx(1.0));
    CHECK(sweep.impact_ratio == doctest::Approx(0.1));
}

TEST_CASE("non-integer totals and coarse increments end at the total") {
    NetworkSpec s;
    s.start = "A";
    s.stakeholders = {{"A", Level::Federal}, {"X", Level::Local}};
    s.flows = {{"A", "X", 3}, {"X", K::S, 7.5}, {"X", K::DI, 2}};
    const auto sweep = sweep_ineffective(s, "X", 1, 0, SweepMode::PlugIn, {4.0, 1});
    std::vector<double> grid;
    for (const auto& p : sweep.points) grid.push_back(p.n_di);
    CHECK(grid == std::vector<double>{0, 4, 8, 9.5});
}

TEST_CASE("Monte Carlo sweep is deterministic and conserves probability") {
    const auto spec = reference_network();
    const auto a = sweep_ineffective(spec, "D", 200, 3, SweepMode::MonteCarlo, {5.0, 1});
    const auto b = sweep_ineffective(spec, "D", 200, 3, SweepMode::MonteCarlo, {5.0, 4});
    CHECK(a == b);
    for (const auto& p : a.points) CHECK(std::abs(p.mean_p_di + p.mean_p_s + p.mean_p_us - 1.0) < 1e-9);
    CHECK_THROWS_AS(sweep_ineffective(spec, "Z", 10, 0, SweepMode::PlugIn), UnknownStakeholderError);
}

TEST_CASE("rank_stakeholders ordering rules") {
    NetworkSpec single;
    single.start = "A";
    single.stakeholders = {{"A", Level::Federal}, {"X", Level::Local}};
    single.flows = {{"A", "X", 3}, {"X", K::S, 10}};
    const auto one = rank_stakeholders(single, 1, 0, SweepMode::PlugIn);
    REQUIRE(one.size() == 1);
    CHECK(one[0].stakeholder == "X");

    NetworkSpec twin;
    twin.start = "A";
    twin.stakeholders = {{"A", Level::Federal}, {"C", Level::Local}, {"B", Level::Local}};
    twin.flows = {{"A", "C", 10}, {"A", "B", 10}, {"B", K::S, 5}, {"B", K::DI, 5}, {"C", K::S, 5}, {"C", K::DI, 5}};
    const auto tied = rank_stakeholders(twin, 1, 0, SweepMode::PlugIn);
    REQUIRE(tied.size() == 2);
    CHECK(tied[0].impact_ratio == tied[1].impact_ratio);
    CHECK(tied[0].stakeholder == "B");
    CHECK(tied[1].stakeholder == "C");

    const auto ref = rank_stakeholders(reference_network(), 1, 0, SweepMode::PlugIn);
    REQUIRE(ref.size() == 4);
    CHECK(ref[0].stakeholder == "E");
    for (std::size_t k = 1; k < ref.size(); ++k) CHECK(ref[k - 1].impact_ratio >= ref[k].impact_ratio);
}
