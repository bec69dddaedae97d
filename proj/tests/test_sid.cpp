#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "treelab/experiments.hpp"
#include "treelab/sid.hpp"

using namespace treelab;

TEST_CASE("linear cells all measure the 3/4 coefficient") {
    const auto f = built_in_signal("linear");
    const auto dist = built_in_distribution("linear");
    for (const auto& [lo, hi] :
         {std::pair{0.0, 1.0}, {0.05, 0.4}, {0.3, 0.9}, {0.48, 0.52}}) {
        const auto ratio = cell_sid_ratio(f, dist, Rectangle::box({lo}, {hi}), 512);
        REQUIRE(ratio.has_value());
        CHECK(*ratio == doctest::Approx(0.75).epsilon(2e-6));
    }
}

TEST_CASE("XOR root ratio is numerically zero") {
    const auto f = built_in_signal("xor");
    const auto dist = built_in_distribution("xor");
    const auto ratio = cell_sid_ratio(f, dist, Rectangle::unit(2), 512);
    REQUIRE(ratio.has_value());
    CHECK(*ratio <= 1e-6);
}

TEST_CASE("constant signals are skipped as vacuous") {
    const auto f = SignalFunction::additive({UnivariateComponent::linear(0.0, 3.0)});
    const auto dist = ProductDistribution::uniform(1);
    CHECK(!cell_sid_ratio(f, dist, Rectangle::unit(1), 64).has_value());
}

TEST_CASE("interval-grid estimate reproduces the linear coefficient") {
    const auto f = built_in_signal("linear");
    const auto dist = built_in_distribution("linear");
    const SidReport report =
        estimate_sid_coefficient(f, dist, CellFamily::interval_grid(20), 512);
    CHECK(report.cells_searched == 210);
    CHECK(report.lambda_hat == doctest::Approx(0.75).epsilon(0.01 / 0.75));
    for (const auto& rec : report.records) {
        REQUIRE(!rec.skipped);
        CHECK(std::fabs(rec.ratio - 0.75) <= 1e-4);
    }
}

TEST_CASE("dyadic family flags the XOR root as the worst cell") {
    const auto f = built_in_signal("xor");
    const auto dist = built_in_distribution("xor");
    const SidReport report =
        estimate_sid_coefficient(f, dist, CellFamily::dyadic(1), 256);
    CHECK(report.lambda_hat <= 1e-6);
    CHECK(report.worst_cell.lower == std::vector<double>{0.0, 0.0});
    CHECK(report.worst_cell.upper == std::vector<double>{1.0, 1.0});
    // Quadrant cells are constant, hence skipped as vacuous.
    CHECK(report.cells_skipped > 0);
}

TEST_CASE("quadratic estimate agrees with a finer-grid oracle") {
    const auto f = built_in_signal("quadratic");
    const auto dist = built_in_distribution("quadratic");
    const SidReport coarse =
        estimate_sid_coefficient(f, dist, CellFamily::interval_grid(20), 512);
    const SidReport fine =
        estimate_sid_coefficient(f, dist, CellFamily::interval_grid(200), 200);
    CHECK(std::fabs(coarse.lambda_hat - fine.lambda_hat) <= 1e-3);
}

TEST_CASE("certificates below the measurement are accepted") {
    const auto f = built_in_signal("linear");
    const auto dist = built_in_distribution("linear");
    const SidReport report =
        estimate_sid_coefficient(f, dist, CellFamily::interval_grid(10), 256);
    CHECK(check_certified_lambda(report, 1.0 / 3.0));   // certified 1/3 vs 0.75
    CHECK(!check_certified_lambda(report, 0.9));        // overshoots
}

TEST_CASE("enlarging the family never raises the estimate") {
    const auto f = built_in_signal("quadratic");
    const auto dist = built_in_distribution("quadratic");
    const double coarse =
        estimate_sid_coefficient(f, dist, CellFamily::interval_grid(10), 128)
            .lambda_hat;
    const double fine =
        estimate_sid_coefficient(f, dist, CellFamily::interval_grid(20), 128)
            .lambda_hat;
    CHECK(fine <= coarse + 1e-12);
}

TEST_CASE("ratios are clamped into [0, 1] and scale-invariant") {
    const auto dist = ProductDistribution::uniform(1);
    const auto base = built_in_signal("quadratic");
    // c*f + w reuses the same ratios.
    const auto moved = SignalFunction::additive(
        {UnivariateComponent::polynomial({0.4, 0.0, -2.5})});
    const SidReport a =
        estimate_sid_coefficient(base, dist, CellFamily::interval_grid(8), 128);
    const SidReport b =
        estimate_sid_coefficient(moved, dist, CellFamily::interval_grid(8), 128);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].ratio >= 0.0);
        CHECK(a.records[i].ratio <= 1.0 + 1e-9);
        CHECK(std::fabs(a.records[i].ratio - b.records[i].ratio) <= 1e-9);
    }
}

TEST_CASE("random cell families are deterministic in the seed") {
    const auto cells_a = CellFamily::random_cells(25, 11).generate(3);
    const auto cells_b = CellFamily::random_cells(25, 11).generate(3);
    REQUIRE(cells_a.size() == 25);
    for (std::size_t i = 0; i < cells_a.size(); ++i) {
        CHECK(cells_a[i].lower == cells_b[i].lower);
        CHECK(cells_a[i].upper == cells_b[i].upper);
        for (int j = 0; j < 3; ++j) {
            CHECK(cells_a[i].width(j) >= 0.05 - 1e-12);
        }
    }
}

TEST_CASE("interval grids beyond two dimensions are rejected") {
    CHECK_THROWS_AS(CellFamily::interval_grid(5).generate(3), std::invalid_argument);
    CHECK_THROWS_AS(CellFamily::interval_grid(0), std::invalid_argument);
}

TEST_CASE("report serialization carries the headline numbers") {
    const auto f = built_in_signal("linear");
    const auto dist = built_in_distribution("linear");
    const SidReport report =
        estimate_sid_coefficient(f, dist, CellFamily::interval_grid(4), 64);
    const nlohmann::json j = report.to_json();
    CHECK(j.at("lambda_hat").get<double>() == doctest::Approx(0.75).epsilon(1e-3));
    CHECK(j.at("cells_searched").get<std::size_t>() == report.cells_searched);

    std::stringstream csv;
    write_sid_csv(report, csv);
    std::string line;
    std::getline(csv, line);
    CHECK(line == "lower1,upper1,skipped,ratio,best_feature,best_threshold,best_delta");
    std::size_t rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == report.records.size());
}
