#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "treelab/component.hpp"
#include "treelab/dataset.hpp"
#include "treelab/distribution.hpp"
#include "treelab/errors.hpp"
#include "treelab/prng.hpp"
#include "treelab/quadrature.hpp"
#include "treelab/signal.hpp"

using namespace treelab;

TEST_CASE("adaptive quadrature matches closed forms") {
    CHECK(integrate([](double t) { return t * t; }, 0.0, 1.0).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double t) { return std::exp(t); }, 0.0, 2.0).value ==
          doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-10));
    // Endpoint square-root behavior, as in the weighted variation integrals.
    CHECK(integrate([](double t) { return std::sqrt(t * (1.0 - t)); }, 0.0, 1.0)
              .value == doctest::Approx(3.14159265358979 / 8.0).epsilon(1e-8));
}

TEST_CASE("sign-change scan brackets derivative roots") {
    const auto roots = find_sign_changes(
        [](double t) { return std::cos(8.0 * t); }, 0.0, 1.0);
    REQUIRE(roots.size() == 3);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const double expected = (2.0 * k + 1.0) * 3.14159265358979323846 / 16.0;
        CHECK(roots[k] == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("components evaluate and differentiate") {
    const auto lin = UnivariateComponent::linear(2.0, -0.5);
    CHECK(lin.value(0.25) == doctest::Approx(0.0));
    CHECK(lin.derivative(0.9) == doctest::Approx(2.0));

    const auto quad = UnivariateComponent::polynomial({0.0, 0.0, 1.0});
    CHECK(quad.value(0.5) == doctest::Approx(0.25));  // t^2 at 0.5
    CHECK(quad.derivative(0.5) == doctest::Approx(1.0));

    const auto tab = UnivariateComponent::tabulated({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
    CHECK(tab.value(0.25) == doctest::Approx(0.5));
    CHECK(tab.derivative(0.25) == doctest::Approx(2.0));
    CHECK(tab.derivative(0.75) == doctest::Approx(-2.0));
}

TEST_CASE("piecewise components expose jumps") {
    const auto low = UnivariateComponent::linear(1.0, 0.0);
    const auto high = UnivariateComponent::linear(1.0, 0.5);
    const auto pw = UnivariateComponent::piecewise({0.0, 0.5, 1.0}, {low, high},
                                                   1.0, 2.0 * std::sqrt(3.0));
    CHECK(pw.value(0.25) == doctest::Approx(0.25));
    CHECK(pw.value(0.5) == doctest::Approx(1.0));       // right-continuous
    CHECK(pw.left_value(0.5) == doctest::Approx(0.5));  // left limit
    const auto jumps = pw.jumps_in(0.0, 1.0);
    REQUIRE(jumps.size() == 1);
    CHECK(jumps[0].first == doctest::Approx(0.5));
    CHECK(jumps[0].second == doctest::Approx(0.5));
    // Gap below alpha/r is rejected.
    CHECK_THROWS_AS(UnivariateComponent::piecewise({0.0, 0.1, 1.0}, {low, high},
                                                   1.0, 2.0),
                    ConfigError);
}

TEST_CASE("class-constant wrappers validate their hypotheses") {
    // g' = 1 + t stays inside [1, 2].
    const auto ramp = UnivariateComponent::polynomial({0.0, 1.0, 0.5});
    CHECK_NOTHROW(UnivariateComponent::strongly_increasing(1.0, 2.0, ramp));
    CHECK_THROWS_AS(UnivariateComponent::strongly_increasing(1.5, 2.0, ramp),
                    ConfigError);
    const auto convex = UnivariateComponent::polynomial({0.0, 0.0, 0.5});
    CHECK_NOTHROW(UnivariateComponent::smooth_strongly_convex(1.0, 1.0, convex));
    CHECK_THROWS_AS(UnivariateComponent::smooth_strongly_convex(0.5, 0.25, convex),
                    ConfigError);
}

TEST_CASE("affine composition expands polynomials") {
    const auto g = UnivariateComponent::polynomial({0.0, -1.0, 1.0});  // t^2 - t
    const auto h = compose_affine(g, 3.0, 4.0);                        // g(3 + 4s)
    for (double s : {0.0, 0.17, 0.5, 0.99}) {
        CHECK(h.value(s) == doctest::Approx(g.value(3.0 + 4.0 * s)).epsilon(1e-13));
    }
}

TEST_CASE("marginal densities normalize and invert") {
    const auto m = MarginalDensity::piecewise_constant({0.0, 0.5, 1.0}, {1.0, 3.0});
    CHECK(m.mass(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m.density(0.25) == doctest::Approx(0.5));
    CHECK(m.density(0.75) == doctest::Approx(1.5));
    CHECK(m.min_density() == doctest::Approx(0.5));
    CHECK(m.max_density() == doctest::Approx(1.5));
    for (double u : {0.01, 0.2, 0.25, 0.7, 0.99}) {
        CHECK(m.cdf(m.inverse_cdf(u)) == doctest::Approx(u).epsilon(1e-12));
    }
    const ProductDistribution dist({m, MarginalDensity::uniform()});
    CHECK(dist.theta_lower() == doctest::Approx(0.5));
    CHECK(dist.theta_upper() == doctest::Approx(1.5));
    CHECK(dist.theta_lower() <= 1.0);
    CHECK(dist.theta_upper() >= 1.0);
}

TEST_CASE("uniform draws pass the sup-norm CDF sanity check") {
    const ProductDistribution dist = ProductDistribution::uniform(1);
    SplitMix64 rng(2024);
    const int n = 100000;
    std::vector<double> draws(n);
    std::vector<double> point;
    for (int i = 0; i < n; ++i) {
        dist.sample(rng, point);
        draws[static_cast<std::size_t>(i)] = point[0];
    }
    std::sort(draws.begin(), draws.end());
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ecdf_hi = static_cast<double>(i + 1) / n;
        const double ecdf_lo = static_cast<double>(i) / n;
        sup = std::max({sup, std::fabs(ecdf_hi - draws[static_cast<std::size_t>(i)]),
                        std::fabs(draws[static_cast<std::size_t>(i)] - ecdf_lo)});
    }
    CHECK(sup < 0.01);
}

TEST_CASE("signals evaluate per their definitions") {
    const auto add = SignalFunction::additive({UnivariateComponent::linear(1.0, 0.0),
                                               UnivariateComponent::linear(1.0, 0.0)});
    CHECK(add.value({0.3, 0.4}) == doctest::Approx(0.7));

    const auto gate = SignalFunction::xor2d();
    CHECK(gate.value({0.25, 0.25}) == doctest::Approx(1.0));
    CHECK(gate.value({0.25, 0.75}) == doctest::Approx(0.0));
    CHECK(gate.value({0.75, 0.25}) == doctest::Approx(0.0));
    CHECK(gate.value({0.75, 0.75}) == doctest::Approx(1.0));
    CHECK(gate.value({0.5, 0.5}) == doctest::Approx(1.0));  // [1/2,1)^2 corner

    CHECK_THROWS_AS(add.value({1.2, 0.5}), std::domain_error);
}

TEST_CASE("signal bound dominates sampled values") {
    const auto f = SignalFunction::additive(
        {UnivariateComponent::polynomial({0.3, -1.2, 0.8}),
         UnivariateComponent::linear(-0.7, 0.2)});
    SplitMix64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::vector<double> u{rng.next_double(), rng.next_double()};
        CHECK(std::fabs(f.value(u)) <= f.bound() + 1e-12);
    }
}

TEST_CASE("zero-noise linear data reproduces features exactly") {
    const auto f = SignalFunction::additive({UnivariateComponent::linear(1.0, 0.0)});
    const auto dist = ProductDistribution::uniform(1);
    const Dataset data = generate_dataset(f, dist, NoiseSpec::zero(), 3, 7);
    for (int i = 0; i < data.n; ++i) {
        CHECK(data.y(i) == data.x(i, 0));  // bitwise: y = f(x) = x
    }
}

TEST_CASE("bounded-uniform noise is centered at Monte Carlo scale") {
    const auto f = SignalFunction::additive({UnivariateComponent::linear(1.0, 0.0)});
    const auto dist = ProductDistribution::uniform(1);
    const Dataset data =
        generate_dataset(f, dist, NoiseSpec::bounded_uniform(0.1), 10000, 1);
    double acc = 0.0;
    for (int i = 0; i < data.n; ++i) acc += data.y(i) - data.x(i, 0);
    const double mean = acc / data.n;
    // CLT band 3 (m/sqrt(3)) / sqrt(n) ~ 0.0017, well inside +-0.004.
    CHECK(mean > -0.004);
    CHECK(mean < 0.004);
}

TEST_CASE("datasets are deterministic in the seed and bounded") {
    const auto f = SignalFunction::additive(
        {UnivariateComponent::polynomial({0.1, 0.4, 0.5}),
         UnivariateComponent::linear(0.3, -0.1)});
    const auto dist = ProductDistribution(
        {MarginalDensity::piecewise_constant({0.0, 0.3, 1.0}, {2.0, 1.0}),
         MarginalDensity::uniform()});
    const auto noise = NoiseSpec::signed_bernoulli(0.25);
    const Dataset a = generate_dataset(f, dist, noise, 500, 99);
    const Dataset b = generate_dataset(f, dist, noise, 500, 99);
    CHECK(a.features == b.features);
    CHECK(a.responses == b.responses);
    const Dataset c = generate_dataset(f, dist, noise, 500, 100);
    CHECK(a.responses != c.responses);
    const double u = a.response_bound();
    for (int i = 0; i < a.n; ++i) {
        CHECK(std::fabs(a.y(i)) <= u);
        for (int j = 0; j < a.p; ++j) {
            CHECK(a.x(i, j) >= 0.0);
            CHECK(a.x(i, j) <= 1.0);
        }
    }
}

TEST_CASE("signed-bernoulli noise takes only the two values") {
    SplitMix64 rng(5);
    const auto noise = NoiseSpec::signed_bernoulli(0.25);
    int plus = 0;
    for (int i = 0; i < 4000; ++i) {
        const double e = noise.draw(rng);
        CHECK((e == 0.25 || e == -0.25));
        plus += e > 0 ? 1 : 0;
    }
    CHECK(plus > 1800);
    CHECK(plus < 2200);
}

TEST_CASE("dataset generation rejects bad arguments") {
    const auto f = SignalFunction::xor2d();
    CHECK_THROWS_AS(
        generate_dataset(f, ProductDistribution::uniform(1), NoiseSpec::zero(), 5, 1),
        ConfigError);
    CHECK_THROWS_AS(
        generate_dataset(f, ProductDistribution::uniform(2), NoiseSpec::zero(), 0, 1),
        std::invalid_argument);
}

TEST_CASE("dataset CSV round-trips bit-exactly") {
    const auto f = SignalFunction::additive({UnivariateComponent::linear(1.0, 0.0),
                                             UnivariateComponent::linear(-1.0, 1.0)});
    const auto dist = ProductDistribution::uniform(2);
    const Dataset data =
        generate_dataset(f, dist, NoiseSpec::bounded_uniform(0.3), 64, 1234);
    std::stringstream ss;
    write_dataset_csv(data, ss);
    const Dataset back = read_dataset_csv(ss);
    REQUIRE(back.n == data.n);
    REQUIRE(back.p == data.p);
    CHECK(back.features == data.features);
    CHECK(back.responses == data.responses);
}

TEST_CASE("malformed CSV reports the offending line") {
    {
        std::stringstream ss("x1,y\n0.5,0.5\nnot-a-number,1\n");
        try {
            read_dataset_csv(ss);
            FAIL("expected a parse error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    {
        std::stringstream ss("a,b\n1,2\n");
        CHECK_THROWS_AS(read_dataset_csv(ss), ConfigError);
    }
    {
        std::stringstream ss("");
        CHECK_THROWS_AS(read_dataset_csv(ss), ConfigError);
    }
}

TEST_CASE("manifest carries the generation spec") {
    const auto f = SignalFunction::additive({UnivariateComponent::linear(1.0, 0.0)});
    const auto dist = ProductDistribution::uniform(1);
    const auto noise = NoiseSpec::bounded_uniform(0.25);
    const Dataset data = generate_dataset(f, dist, noise, 10, 42);
    const nlohmann::json j = dataset_manifest(data, f, dist, noise);
    CHECK(j.at("seed").get<std::uint64_t>() == 42);
    CHECK(j.at("n").get<int>() == 10);
    CHECK(j.at("p").get<int>() == 1);
    CHECK(j.at("noise").at("m").get<double>() == doctest::Approx(0.25));
    const SignalFunction back = SignalFunction::from_json(j.at("signal"));
    CHECK(back.value({0.4}) == doctest::Approx(0.4));
}

TEST_CASE("component and signal JSON round-trip") {
    const auto pw = UnivariateComponent::piecewise(
        {0.0, 0.5, 1.0},
        {UnivariateComponent::linear(1.0, 0.0), UnivariateComponent::linear(1.0, 0.5)},
        1.0, 2.0 * std::sqrt(3.0));
    const auto back = UnivariateComponent::from_json(pw.to_json());
    for (double t : {0.1, 0.49, 0.5, 0.51, 0.99}) {
        CHECK(back.value(t) == pw.value(t));
    }
    const auto gate = SignalFunction::xor2d();
    const auto gate_back = SignalFunction::from_json(gate.to_json());
    CHECK(gate_back.value({0.25, 0.25}) == 1.0);
}
