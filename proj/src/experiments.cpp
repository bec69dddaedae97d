#include "treelab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "treelab/bounds.hpp"
#include "treelab/errors.hpp"
#include "treelab/lrp.hpp"
#include "treelab/numeric.hpp"
#include "treelab/prng.hpp"

namespace treelab {

SignalFunction built_in_signal(const std::string& name) {
    if (name == "linear") {
        return SignalFunction::additive({UnivariateComponent::linear(1.0, 0.0)});
    }
    if (name == "quadratic") {
        return SignalFunction::additive(
            {UnivariateComponent::polynomial({0.0, 0.0, 1.0})});
    }
    if (name == "two-piece") {
        const double beta = 2.0 * std::sqrt(3.0);
        auto piece_low = UnivariateComponent::linear(1.0, 0.0);
        auto piece_high = UnivariateComponent::linear(1.0, 0.5);
        return SignalFunction::additive({UnivariateComponent::piecewise(
            {0.0, 0.5, 1.0}, {piece_low, piece_high}, 1.0, beta)});
    }
    if (name == "xor") return SignalFunction::xor2d();
    throw ConfigError("unknown built-in signal: " + name);
}

ProductDistribution built_in_distribution(const std::string& name) {
    return ProductDistribution::uniform(built_in_signal(name).dimension());
}

namespace {

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
    int workers = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string first_error;
    auto body = [&]() {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) first_error = e.what();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error(first_error);
}

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
};

OlsFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    CompensatedSum sx, sy, sxx, sxy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx.add(xs[i]);
        sy.add(ys[i]);
        sxx.add(xs[i] * xs[i]);
        sxy.add(xs[i] * ys[i]);
    }
    const double mx = sx.value() / n;
    const double my = sy.value() / n;
    OlsFit fit;
    fit.slope = (sxy.value() - n * mx * my) / (sxx.value() - n * mx * mx);
    fit.intercept = my - fit.slope * mx;
    return fit;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

RateResult run_rate_experiment(const RateConfig& config) {
    if (config.n_grid.empty()) throw ConfigError("n grid must be nonempty");
    for (std::size_t i = 1; i < config.n_grid.size(); ++i) {
        if (config.n_grid[i] <= config.n_grid[i - 1]) {
            throw ConfigError("n grid must strictly increase");
        }
    }
    if (config.replicates < 1) throw ConfigError("replicates must be >= 1");
    if (config.depth.scheduled &&
        !(config.depth.lambda > 0.0 && config.depth.lambda <= 1.0)) {
        throw ConfigError("scheduled depth needs lambda in (0, 1]");
    }

    RateResult result;
    const std::size_t reps = static_cast<std::size_t>(config.replicates);
    const std::size_t total = config.n_grid.size() * reps;
    result.runs.resize(total);

    parallel_for(total, config.threads, [&](std::size_t i) {
        const int n = config.n_grid[i / reps];
        const int rep = static_cast<int>(i % reps);
        const std::uint64_t seed = derive_seed(
            config.base_seed, static_cast<std::uint64_t>(n),
            static_cast<std::uint64_t>(rep));
        try {
            const Dataset data =
                generate_dataset(config.signal, config.dist, config.noise, n, seed);
            const int depth = config.depth.scheduled
                                  ? depth_schedule(config.depth.lambda, n)
                                  : config.depth.fixed_depth;
            const RegressionTree tree = fit_cart(data, depth);
            double error;
            if (config.exact_error) {
                error = l2_error_exact(tree, config.signal, config.dist);
            } else {
                error = l2_error_monte_carlo(
                    tree, config.signal, config.dist, config.mc_samples,
                    derive_seed(config.base_seed ^ 0x5DEECE66DULL,
                                static_cast<std::uint64_t>(n),
                                static_cast<std::uint64_t>(rep)));
            }
            result.runs[i] = {n, rep, seed, depth, error};
        } catch (const std::exception& e) {
            throw std::runtime_error("replicate failed (n=" + std::to_string(n) +
                                     ", replicate=" + std::to_string(rep) +
                                     ", seed=" + std::to_string(seed) +
                                     "): " + e.what());
        }
    });

    for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
        CompensatedSum sum;
        for (std::size_t r = 0; r < reps; ++r) sum.add(result.runs[g * reps + r].error);
        const double mean = sum.value() / static_cast<double>(reps);
        CompensatedSum sq;
        for (std::size_t r = 0; r < reps; ++r) {
            const double d = result.runs[g * reps + r].error - mean;
            sq.add(d * d);
        }
        const double se =
            reps > 1 ? std::sqrt(sq.value() / static_cast<double>(reps - 1)) /
                           std::sqrt(static_cast<double>(reps))
                     : 0.0;
        result.summary.push_back({config.n_grid[g], mean, se});
    }

    // Numerically-zero errors (perfect fits) make a log-log fit meaningless.
    bool fit_defined = result.summary.size() >= 3;
    for (const auto& s : result.summary) {
        if (!(s.mean_error > 1e-20)) fit_defined = false;
    }
    if (fit_defined) {
        std::vector<double> xs, ys;
        for (const auto& s : result.summary) {
            xs.push_back(std::log2(static_cast<double>(s.n)));
            ys.push_back(std::log2(s.mean_error));
        }
        const OlsFit fit = ols(xs, ys);
        result.slope = fit.slope;
        result.intercept = fit.intercept;
    }
    result.reference_slope =
        config.depth.scheduled ? -phi(config.depth.lambda) : 0.0;
    return result;
}

void write_rate_csv(const RateResult& result, std::ostream& out) {
    out << "n,replicate,seed,depth,error\n";
    for (const auto& r : result.runs) {
        out << r.n << "," << r.replicate << "," << r.seed << "," << r.depth << ","
            << format_full(r.error) << "\n";
    }
}

void write_rate_summary_csv(const RateResult& result, std::ostream& out) {
    out << "n,mean_error,std_error\n";
    for (const auto& s : result.summary) {
        out << s.n << "," << format_full(s.mean_error) << ","
            << format_full(s.std_error) << "\n";
    }
}

void write_rate_fit_json(const RateResult& result, std::ostream& out) {
    out << "{\n";
    out << "  \"slope\": "
        << (result.slope ? format_full(*result.slope) : std::string("null"))
        << ",\n";
    out << "  \"intercept\": "
        << (result.intercept ? format_full(*result.intercept) : std::string("null"))
        << ",\n";
    out << "  \"reference_slope\": " << format_full(result.reference_slope)
        << ",\n";
    out << "  \"n_points\": " << result.summary.size() << "\n";
    out << "}\n";
}

XorResult run_xor_demo(const XorConfig& config) {
    if (config.n_grid.empty()) throw ConfigError("n grid must be nonempty");
    if (config.replicates < 1) throw ConfigError("replicates must be >= 1");

    const SignalFunction f = SignalFunction::xor2d();
    const ProductDistribution dist = ProductDistribution::uniform(2);

    XorResult result;
    result.boundary_margin = config.boundary_margin;

    const Rectangle root = Rectangle::unit(2);
    const CellMoments m = cell_moments(f, dist, root);
    const SplitStatistics best = best_population_split(f, dist, root, 512, true);
    result.root_best_delta = best.delta;
    result.root_variance = m.variance;
    result.root_sid_ratio = best.delta / (m.mass * m.variance);

    const std::size_t reps = static_cast<std::size_t>(config.replicates);
    const std::size_t total = config.n_grid.size() * reps;
    result.runs.resize(total);
    parallel_for(total, config.threads, [&](std::size_t i) {
        const int n = config.n_grid[i / reps];
        const int rep = static_cast<int>(i % reps);
        const std::uint64_t seed =
            derive_seed(config.base_seed, static_cast<std::uint64_t>(n),
                        static_cast<std::uint64_t>(rep));
        const Dataset data = generate_dataset(f, dist, config.noise, n, seed);
        const RegressionTree tree = fit_cart(data, config.fit_depth);
        const TreeNode& root_node = tree.nodes().front();
        XorResult::Run run;
        run.n = n;
        run.replicate = rep;
        run.seed = seed;
        if (root_node.is_leaf()) {
            run.root_feature = 0;
            run.root_threshold = std::numeric_limits<double>::quiet_NaN();
            run.boundary_distance = std::numeric_limits<double>::quiet_NaN();
        } else {
            run.root_feature = root_node.feature + 1;
            run.root_threshold = root_node.threshold;
            run.boundary_distance =
                std::min(root_node.threshold, 1.0 - root_node.threshold);
        }
        result.runs[i] = run;
    });

    for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
        int near = 0, counted = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            const auto& run = result.runs[g * reps + r];
            if (std::isnan(run.boundary_distance)) continue;
            ++counted;
            if (run.boundary_distance <= config.boundary_margin) ++near;
        }
        result.summary.push_back(
            {config.n_grid[g],
             counted > 0 ? static_cast<double>(near) / counted : 0.0});
    }
    return result;
}

void write_xor_csv(const XorResult& result, std::ostream& out) {
    out << "n,replicate,seed,root_feature,root_threshold,boundary_distance,"
           "near_boundary\n";
    for (const auto& r : result.runs) {
        out << r.n << "," << r.replicate << "," << r.seed << "," << r.root_feature
            << "," << format_full(r.root_threshold) << ","
            << format_full(r.boundary_distance) << ","
            << (r.boundary_distance <= result.boundary_margin ? 1 : 0) << "\n";
    }
}

void write_xor_report_json(const XorResult& result, std::ostream& out) {
    out << "{\n";
    out << "  \"root_best_delta\": " << format_full(result.root_best_delta)
        << ",\n";
    out << "  \"root_variance\": " << format_full(result.root_variance) << ",\n";
    out << "  \"root_sid_ratio\": " << format_full(result.root_sid_ratio)
        << ",\n";
    out << "  \"boundary_margin\": " << format_full(result.boundary_margin)
        << ",\n";
    out << "  \"near_boundary_fraction\": {";
    for (std::size_t i = 0; i < result.summary.size(); ++i) {
        if (i) out << ", ";
        out << "\"" << result.summary[i].n
            << "\": " << format_full(result.summary[i].near_boundary_fraction);
    }
    out << "}\n}\n";
}

double empirical_identity_residual(const Dataset& data, const Rectangle& cell,
                                   int j, double b) {
    std::vector<int> idx, left, right;
    for (int i = 0; i < data.n; ++i) {
        if (!cell.contains(&data.features[static_cast<std::size_t>(i) * data.p])) {
            continue;
        }
        idx.push_back(i);
        (data.x(i, j) <= b ? left : right).push_back(i);
    }
    if (idx.empty()) throw EmptyCellError("cell holds no samples");
    if (left.empty() || right.empty()) {
        throw SplitInfeasibleError("split leaves an empty child");
    }
    auto mean = [&](const std::vector<int>& ids) {
        double s = 0.0;
        for (int i : ids) s += data.y(i);
        return s / static_cast<double>(ids.size());
    };
    auto sse = [&](const std::vector<int>& ids, double c) {
        double s = 0.0;
        for (int i : ids) s += (data.y(i) - c) * (data.y(i) - c);
        return s;
    };
    const double mean_a = mean(idx), mean_l = mean(left), mean_r = mean(right);
    const double eq3 =
        (sse(idx, mean_a) - sse(left, mean_l) - sse(right, mean_r)) / data.n;
    const double dl = mean_l - mean_a;
    const double dr = mean_r - mean_a;
    const double sum_form = (static_cast<double>(left.size()) * dl * dl +
                             static_cast<double>(right.size()) * dr * dr) /
                            data.n;
    return std::fabs(eq3 - sum_form) /
           std::max({1.0, std::fabs(eq3), std::fabs(sum_form)});
}

double population_identity_residual(const SignalFunction& f,
                                    const ProductDistribution& dist,
                                    const Rectangle& cell, int j, double b) {
    const double mean_route = population_impurity_decrease(f, dist, cell, j, b).delta;
    const double var_route = population_delta_variance_route(f, dist, cell, j, b);
    return std::fabs(mean_route - var_route) /
           std::max({1.0, std::fabs(mean_route), std::fabs(var_route)});
}

namespace {

Rectangle random_cell(SplitMix64& rng, int p, double min_width) {
    std::vector<double> lo(static_cast<std::size_t>(p));
    std::vector<double> hi(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        const double a = rng.next_double() * (1.0 - min_width);
        const double w = min_width + rng.next_double() * (1.0 - min_width - a);
        lo[static_cast<std::size_t>(j)] = a;
        hi[static_cast<std::size_t>(j)] = std::min(1.0, a + w);
    }
    return Rectangle::box(std::move(lo), std::move(hi));
}

struct SuiteContext {
    const VerifyConfig& config;
    std::vector<VerifyCheck>& checks;

    void add(VerifyCheck check) { checks.push_back(std::move(check)); }
};

void run_empirical_identity(SuiteContext& ctx, const std::string& name,
                            const SignalFunction& f,
                            const ProductDistribution& dist, std::uint64_t salt) {
    VerifyCheck check;
    check.name = "empirical-impurity-identity";
    check.signal = name;
    check.cases = ctx.config.empirical_cases;
    check.tolerance = ctx.config.tol.empirical_identity;
    check.note = "relative gap between the SSE form and the mean-gap form";
    double worst = 0.0;
    for (int c = 0; c < ctx.config.empirical_cases; ++c) {
        SplitMix64 rng(derive_seed(ctx.config.base_seed, salt,
                                   static_cast<std::uint64_t>(c)));
        const int n = 24 + static_cast<int>(rng.next_u64() % 150);
        const Dataset data = generate_dataset(
            f, dist, NoiseSpec::bounded_uniform(0.25), n, rng.next_u64());
        // Random cell, then a midpoint split between two distinct values.
        Rectangle cell = Rectangle::unit(data.p);
        if (rng.next_bool()) {
            Rectangle candidate = random_cell(rng, data.p, 0.5);
            int inside = 0;
            for (int i = 0; i < data.n; ++i) {
                if (candidate.contains(
                        &data.features[static_cast<std::size_t>(i) * data.p])) {
                    ++inside;
                }
            }
            if (inside >= 4) cell = candidate;
        }
        const int j = static_cast<int>(rng.next_u64() % data.p);
        std::vector<double> values;
        for (int i = 0; i < data.n; ++i) {
            if (cell.contains(&data.features[static_cast<std::size_t>(i) * data.p])) {
                values.push_back(data.x(i, j));
            }
        }
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.size() < 2) continue;
        const std::size_t gap =
            rng.next_u64() % (values.size() - 1);
        const double b = 0.5 * (values[gap] + values[gap + 1]);
        worst = std::max(worst, empirical_identity_residual(data, cell, j, b));
    }
    check.worst = worst;
    check.pass = worst <= check.tolerance;
    ctx.add(std::move(check));
}

void run_population_identity(SuiteContext& ctx, const std::string& name,
                             const SignalFunction& f,
                             const ProductDistribution& dist, std::uint64_t salt) {
    VerifyCheck check;
    check.name = "population-impurity-identity";
    check.signal = name;
    check.cases = ctx.config.population_cases;
    check.tolerance = ctx.config.tol.population_identity;
    check.note = "gap between the variance decomposition and mean-gap routes";
    double worst = 0.0;
    for (int c = 0; c < ctx.config.population_cases; ++c) {
        SplitMix64 rng(derive_seed(ctx.config.base_seed, salt + 1,
                                   static_cast<std::uint64_t>(c)));
        const Rectangle cell = random_cell(rng, f.dimension(), 0.2);
        const int j = static_cast<int>(rng.next_u64() % f.dimension());
        const double lo = cell.lower[j], hi = cell.upper[j];
        const double b = lo + (0.15 + 0.7 * rng.next_double()) * (hi - lo);
        worst = std::max(worst, population_identity_residual(f, dist, cell, j, b));
    }
    check.worst = worst;
    check.pass = worst <= check.tolerance;
    ctx.add(std::move(check));
}

void run_closed_form(SuiteContext& ctx, const std::string& name,
                     const SignalFunction& f, const ProductDistribution& dist,
                     std::uint64_t salt) {
    VerifyCheck check;
    check.name = "delta-closed-form";
    check.signal = name;
    check.cases = ctx.config.closed_form_cases;
    check.tolerance = ctx.config.tol.closed_form;
    check.note = "residual of the uncentered-expectation rewrite of Delta";
    double worst = 0.0;
    for (int c = 0; c < ctx.config.closed_form_cases; ++c) {
        SplitMix64 rng(derive_seed(ctx.config.base_seed, salt + 2,
                                   static_cast<std::uint64_t>(c)));
        const Rectangle cell = random_cell(rng, f.dimension(), 0.2);
        const int j = static_cast<int>(rng.next_u64() % f.dimension());
        const double lo = cell.lower[j], hi = cell.upper[j];
        const double b = lo + (0.15 + 0.7 * rng.next_double()) * (hi - lo);
        worst = std::max(worst, verify_delta_closed_form(f, dist, cell, j, b));
    }
    check.worst = worst;
    check.pass = worst <= check.tolerance;
    ctx.add(std::move(check));
}

void run_lemma7(SuiteContext& ctx, const std::string& name,
                const SignalFunction& f, const ProductDistribution& dist,
                std::uint64_t salt) {
    VerifyCheck check;
    check.name = "split-lower-bound";
    check.signal = name;
    check.cases = ctx.config.lemma7_cells;
    check.tolerance = ctx.config.tol.lemma7;
    check.note = "negated worst slack of sqrt(sup Delta) vs the weighted TV bound";
    double worst = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < ctx.config.lemma7_cells; ++c) {
        SplitMix64 rng(derive_seed(ctx.config.base_seed, salt + 3,
                                   static_cast<std::uint64_t>(c)));
        const Rectangle cell = random_cell(rng, f.dimension(), 0.3);
        const double slack = verify_split_lower_bound(f, dist, cell, 256);
        worst = std::max(worst, -slack);
    }
    check.worst = worst;
    check.pass = worst <= check.tolerance;
    ctx.add(std::move(check));
}

void run_sid_positive(SuiteContext& ctx, const std::string& name,
                      const SignalFunction& f, const ProductDistribution& dist) {
    VerifyCheck check;
    check.name = "sid-coefficient-positive";
    check.signal = name;
    check.tolerance = ctx.config.tol.sid_floor;
    const CellFamily family = f.dimension() == 1 ? CellFamily::interval_grid(10)
                                                 : CellFamily::dyadic(2);
    const SidReport report = estimate_sid_coefficient(f, dist, family, 128);
    check.cases = static_cast<int>(report.cells_searched);
    check.worst = report.lambda_hat;
    check.pass = report.lambda_hat > check.tolerance;
    if (name == "xor") {
        check.expected_failure = true;
        check.note = "SID is not satisfied at the XOR root; recorded as expected";
    } else {
        check.note = "measured SID coefficient stays clear of zero";
    }
    ctx.add(std::move(check));
}

void run_certificate(SuiteContext& ctx, const std::string& name,
                     const SignalFunction& f, const ProductDistribution& dist) {
    if (!f.is_additive()) return;
    VerifyCheck check;
    check.name = "certificate-consistency";
    check.signal = name;
    check.tolerance = ctx.config.tol.certificate;
    check.note = "certified lambda must not exceed the measured coefficient";

    const auto& g = f.components().front();
    double certified;
    if (g.kind() == UnivariateComponent::Kind::Piecewise) {
        certified = sid_from_piecewise_lrp(
            static_cast<int>(g.piece_count()), g.piece_alpha(), g.piece_beta(), 1,
            dist.theta_lower(), dist.theta_upper());
    } else {
        const LrpCertificate cert =
            certify_lrp(g, 0.0, 1.0, IntervalFamily::default_family());
        const double tau = cert.tau_closed_form.value_or(cert.tau_measured);
        certified = sid_from_additive_lrp({tau}, 1, dist.theta_lower(),
                                          dist.theta_upper());
    }
    const SidReport report =
        estimate_sid_coefficient(f, dist, CellFamily::interval_grid(10), 128);
    check.cases = static_cast<int>(report.cells_searched);
    check.worst = certified - report.lambda_hat;  // violation if positive
    check.pass = check_certified_lambda(report, certified);
    ctx.add(std::move(check));
}

void run_lrp_fixed_checks(SuiteContext& ctx) {
    {
        VerifyCheck check;
        check.name = "lrp-linear-equality";
        check.signal = "linear";
        check.tolerance = 1e-4;
        const LrpCertificate cert =
            certify_lrp(UnivariateComponent::linear(1.0, 0.0), 0.0, 1.0,
                        IntervalFamily::default_family());
        check.cases = 1;
        check.worst = std::fabs(cert.tau_measured - 2.0 * std::sqrt(3.0));
        check.pass = check.worst <= check.tolerance && cert.valid;
        check.note = "linear components meet the 2*sqrt(3) bound with equality";
        ctx.add(std::move(check));
    }
    {
        VerifyCheck check;
        check.name = "lrp-smooth-convex-bound";
        check.signal = "";
        check.tolerance = ctx.config.tol.lrp;
        const auto g = UnivariateComponent::smooth_strongly_convex(
            1.0, 1.0, UnivariateComponent::polynomial({0.0, 0.0, 0.5}));
        const LrpCertificate cert =
            certify_lrp(g, 0.0, 1.0, IntervalFamily::default_family());
        check.cases = 1;
        check.worst = cert.tau_measured - 110.0;  // violation if positive
        check.pass = cert.valid && check.worst <= check.tolerance;
        check.note = "t^2/2 stays below the 110 L/sigma constant";
        ctx.add(std::move(check));
    }
    {
        VerifyCheck check;
        check.name = "lrp-polynomial-affine-invariance";
        check.signal = "quadratic";
        check.tolerance = ctx.config.tol.lrp;
        const auto g = UnivariateComponent::polynomial({0.0, -1.0, 1.0});
        const auto h = compose_affine(g, 3.0, 4.0);  // g on [3,7] reparameterized
        const IntervalFamily family = IntervalFamily::grid(50);
        double worst = 0.0;
        for (const auto& [a, b] : family.generate(0.0, 1.0)) {
            const double r1 = interval_lrp_ratio(g, a, b).ratio;
            const double r2 =
                interval_lrp_ratio(h, (a - 3.0) / 4.0, (b - 3.0) / 4.0).ratio;
            worst = std::max(worst, std::fabs(r1 - r2));
        }
        check.cases = static_cast<int>(family.generate(0.0, 1.0).size());
        check.worst = worst;
        check.pass = worst <= check.tolerance;
        check.note = "interval ratios are invariant under affine substitution";
        ctx.add(std::move(check));
    }
}

void run_weighted_prop4(SuiteContext& ctx) {
    VerifyCheck check;
    check.name = "weighted-lrp-piecewise";
    check.signal = "two-piece";
    check.cases = ctx.config.weighted_cases;
    check.tolerance = ctx.config.tol.lemma7;
    check.note = "piecewise tau^2 formula satisfies the weighted inequality";
    const SignalFunction f = built_in_signal("two-piece");
    const auto& g = f.components().front();
    const double r = static_cast<double>(g.piece_count());
    const double beta = g.piece_beta();
    const double tau_sq = std::max(2.0 * r, r * r / (2.0 * g.piece_alpha())) *
                          std::max(9.0 * beta * beta, 32.0 + beta * beta);
    double worst = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < ctx.config.weighted_cases; ++c) {
        SplitMix64 rng(derive_seed(ctx.config.base_seed, 77,
                                   static_cast<std::uint64_t>(c)));
        double a = rng.next_double() * 0.8;
        double b = a + 0.1 + rng.next_double() * (1.0 - a - 0.1);
        b = std::min(b, 1.0);
        auto q = [a, b](double t) { return (t - a) / (b - a); };
        const double slack = weighted_lrp_slack(g, a, b, q, tau_sq);
        worst = std::max(worst, -slack);
    }
    check.worst = worst;
    check.pass = worst <= check.tolerance;
    ctx.add(std::move(check));
}

void run_jump_lemma(SuiteContext& ctx) {
    VerifyCheck check;
    check.name = "jump-lemma";
    check.signal = "";
    check.cases = ctx.config.jump_cases;
    check.tolerance = ctx.config.tol.jump;
    check.note = "negated worst slack of inf_w against the jump lower bound";
    double worst = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < ctx.config.jump_cases; ++c) {
        SplitMix64 rng(derive_seed(ctx.config.base_seed, 99,
                                   static_cast<std::uint64_t>(c)));
        const double cpt = 0.15 + 0.7 * rng.next_double();
        const double s1 = -0.2 + 0.4 * rng.next_double();
        const double s2 = -0.2 + 0.4 * rng.next_double();
        const double jump =
            (rng.next_bool() ? 1.0 : -1.0) * (0.9 + 0.6 * rng.next_double());
        auto low = UnivariateComponent::linear(s1, 0.0);
        auto high = UnivariateComponent::linear(s2, s1 * cpt + jump - s2 * cpt);
        const auto h = UnivariateComponent::piecewise(
            {0.0, cpt, 1.0}, {low, high}, 0.2, 2.0 * std::sqrt(3.0));
        const double slack = jump_lemma_check(h, 0.0, cpt, 1.0);
        worst = std::max(worst, -slack);
    }
    check.worst = worst;
    check.pass = worst <= check.tolerance;
    ctx.add(std::move(check));
}

}  // namespace

VerifyResult run_verification_suite(const VerifyConfig& config) {
    VerifyResult result;
    SuiteContext ctx{config, result.checks};

    std::uint64_t salt = 1000;
    for (const std::string& name : config.signals) {
        const SignalFunction f = built_in_signal(name);
        const ProductDistribution dist = built_in_distribution(name);
        run_empirical_identity(ctx, name, f, dist, salt);
        run_population_identity(ctx, name, f, dist, salt);
        run_closed_form(ctx, name, f, dist, salt);
        if (f.is_additive()) {
            run_lemma7(ctx, name, f, dist, salt);
            run_certificate(ctx, name, f, dist);
        }
        run_sid_positive(ctx, name, f, dist);
        salt += 10;
    }
    run_lrp_fixed_checks(ctx);
    run_weighted_prop4(ctx);
    run_jump_lemma(ctx);

    result.pass = true;
    for (const auto& c : result.checks) {
        if (!c.pass && !c.expected_failure) result.pass = false;
    }
    return result;
}

void write_verify_json(const VerifyResult& result, std::ostream& out) {
    out << "{\n  \"pass\": " << (result.pass ? "true" : "false")
        << ",\n  \"checks\": [\n";
    for (std::size_t i = 0; i < result.checks.size(); ++i) {
        const auto& c = result.checks[i];
        out << "    {\"name\": \"" << json_escape(c.name) << "\", \"signal\": \""
            << json_escape(c.signal) << "\", \"cases\": " << c.cases
            << ", \"worst\": " << format_full(c.worst)
            << ", \"tolerance\": " << format_full(c.tolerance)
            << ", \"pass\": " << (c.pass ? "true" : "false")
            << ", \"expected_failure\": " << (c.expected_failure ? "true" : "false")
            << ", \"note\": \"" << json_escape(c.note) << "\"}";
        out << (i + 1 < result.checks.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
}

}  // namespace treelab
