#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treelab/cart.hpp"
#include "treelab/dataset.hpp"
#include "treelab/sid.hpp"

namespace treelab {

// Built-in test signals: "linear", "quadratic", "two-piece" (univariate,
// uniform design) and "xor" (two-dimensional, uniform design).
SignalFunction built_in_signal(const std::string& name);
ProductDistribution built_in_distribution(const std::string& name);

struct DepthRule {
    bool scheduled = true;  // d = ceil(log2 n / (1 - log2(1 - lambda)))
    double lambda = 0.75;
    int fixed_depth = 2;
};

struct RateConfig {
    RateConfig(SignalFunction signal, ProductDistribution dist)
        : signal(std::move(signal)), dist(std::move(dist)) {}

    std::string id = "rate";
    SignalFunction signal;
    ProductDistribution dist;
    NoiseSpec noise = NoiseSpec::bounded_uniform(0.25);
    std::vector<int> n_grid;
    int replicates = 20;
    std::uint64_t base_seed = 20230817;
    DepthRule depth;
    bool exact_error = true;  // otherwise Monte Carlo with mc_samples draws
    int mc_samples = 200000;
    int threads = 0;  // 0 = hardware parallelism
};

struct RateResult {
    struct Run {
        int n = 0;
        int replicate = 0;
        std::uint64_t seed = 0;
        int depth = 0;
        double error = 0.0;
    };
    struct Summary {
        int n = 0;
        double mean_error = 0.0;
        double std_error = 0.0;
    };
    std::vector<Run> runs;  // deterministic (n, replicate) order
    std::vector<Summary> summary;
    std::optional<double> slope;  // OLS on (log2 n, log2 mean error)
    std::optional<double> intercept;
    double reference_slope = 0.0;  // -phi(lambda) under the schedule
};

RateResult run_rate_experiment(const RateConfig& config);

void write_rate_csv(const RateResult& result, std::ostream& out);
void write_rate_summary_csv(const RateResult& result, std::ostream& out);
void write_rate_fit_json(const RateResult& result, std::ostream& out);

struct XorConfig {
    std::vector<int> n_grid{100, 1000, 10000};
    int replicates = 20;
    std::uint64_t base_seed = 31415926;
    NoiseSpec noise = NoiseSpec::bounded_uniform(0.1);
    double boundary_margin = 0.1;
    int fit_depth = 2;
    int threads = 0;
};

struct XorResult {
    struct Run {
        int n = 0;
        int replicate = 0;
        std::uint64_t seed = 0;
        int root_feature = 0;        // 1-based
        double root_threshold = 0.0;
        double boundary_distance = 0.0;  // min(b, 1-b)
    };
    struct Summary {
        int n = 0;
        double near_boundary_fraction = 0.0;
    };
    std::vector<Run> runs;
    std::vector<Summary> summary;
    double root_best_delta = 0.0;     // population sup Delta at the root
    double root_variance = 0.0;       // population Var(f* | root)
    double root_sid_ratio = 0.0;
    double boundary_margin = 0.1;
};

XorResult run_xor_demo(const XorConfig& config);

void write_xor_csv(const XorResult& result, std::ostream& out);
void write_xor_report_json(const XorResult& result, std::ostream& out);

struct VerifyTolerances {
    double empirical_identity = 1e-10;
    double population_identity = 1e-9;
    double closed_form = 1e-8;
    double lemma7 = 1e-8;
    double lrp = 1e-6;
    double certificate = 1e-6;
    double jump = 1e-9;
    double sid_floor = 1e-4;  // below this SID is reported "not satisfied"
};

struct VerifyConfig {
    std::vector<std::string> signals{"linear", "quadratic", "two-piece", "xor"};
    int empirical_cases = 200;   // per signal
    int population_cases = 200;  // per signal
    int closed_form_cases = 100;
    int lemma7_cells = 25;
    int weighted_cases = 100;
    int jump_cases = 100;
    std::uint64_t base_seed = 424242;
    VerifyTolerances tol;
};

struct VerifyCheck {
    std::string name;
    std::string signal;  // empty for signal-independent checks
    int cases = 0;
    double worst = 0.0;  // worst residual (or worst slack, sign-flipped)
    double tolerance = 0.0;
    bool pass = false;
    bool expected_failure = false;
    std::string note;
};

struct VerifyResult {
    std::vector<VerifyCheck> checks;
    bool pass = false;  // every check passes or is an expected failure
};

VerifyResult run_verification_suite(const VerifyConfig& config);

void write_verify_json(const VerifyResult& result, std::ostream& out);

// Independent identity residuals used by the suite; both recompute the two
// identity sides through plain summation / the variance route.
double empirical_identity_residual(const Dataset& data, const Rectangle& cell,
                                   int j, double b);
double population_identity_residual(const SignalFunction& f,
                                    const ProductDistribution& dist,
                                    const Rectangle& cell, int j, double b);

}  // namespace treelab
