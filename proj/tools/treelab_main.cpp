// treelab: fit CART trees, verify SID/LRP conditions, run rate experiments.
//
// Exit codes: 0 success, 1 check failed, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treelab/bounds.hpp"
#include "treelab/cart.hpp"
#include "treelab/errors.hpp"
#include "treelab/experiments.hpp"
#include "treelab/lrp.hpp"
#include "treelab/numeric.hpp"
#include "treelab/sid.hpp"

namespace fs = std::filesystem;
using namespace treelab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Simple `key = value` config files: one pair per line, `#` comments.
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config: " + path);
        KeyValueConfig cfg;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected key = value");
            }
            cfg.values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get(const std::string& key, const std::string& fallback) {
        touch(key);
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    long long get_int(const std::string& key, long long fallback) {
        touch(key);
        auto it = values_.find(key);
        return it == values_.end() ? fallback : std::stoll(it->second);
    }

    double get_double(const std::string& key, double fallback) {
        touch(key);
        auto it = values_.find(key);
        return it == values_.end() ? fallback : std::stod(it->second);
    }

    std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) {
        touch(key);
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::vector<int> out;
        std::stringstream ss(it->second);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(std::stoi(cell));
        return out;
    }

    std::vector<std::string> get_string_list(const std::string& key,
                                             std::vector<std::string> fallback) {
        touch(key);
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::vector<std::string> out;
        std::stringstream ss(it->second);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            if (b != std::string::npos) out.push_back(cell.substr(b, e - b + 1));
        }
        return out;
    }

    void reject_unknown_keys() const {
        for (const auto& [key, value] : values_) {
            (void)value;
            if (!touched_.count(key)) {
                throw ConfigError("unknown config key: " + key);
            }
        }
    }

private:
    void touch(const std::string& key) { touched_.insert(key); }
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> touched_;
};

fs::path resolve_out_dir(const std::string& flag_value,
                         const std::string& config_value) {
    std::string dir = "treelab_out";
    if (!config_value.empty()) dir = config_value;
    if (const char* env = std::getenv("TREELAB_OUT"); env && *env) dir = env;
    if (!flag_value.empty()) dir = flag_value;
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

void write_manifest(const fs::path& path,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ofstream out(path);
    out << "{\n";
    for (std::size_t i = 0; i < kv.size(); ++i) {
        std::string escaped;
        for (char c : kv[i].second) {
            if (c == '"' || c == '\\') escaped.push_back('\\');
            escaped.push_back(c);
        }
        out << "  \"" << kv[i].first << "\": \"" << escaped << "\""
            << (i + 1 < kv.size() ? ",\n" : "\n");
    }
    out << "}\n";
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

bool is_builtin_name(const std::string& s) {
    return s == "linear" || s == "quadratic" || s == "two-piece" || s == "xor";
}

SignalFunction load_signal_spec(const std::string& spec,
                                ProductDistribution* dist_out) {
    if (is_builtin_name(spec)) {
        if (dist_out) *dist_out = built_in_distribution(spec);
        return built_in_signal(spec);
    }
    const nlohmann::json j = load_json(spec);
    SignalFunction f = SignalFunction::from_json(
        j.contains("signal") ? j.at("signal") : j);
    if (dist_out) {
        *dist_out = j.contains("distribution")
                        ? ProductDistribution::from_json(j.at("distribution"))
                        : ProductDistribution::uniform(f.dimension());
    }
    return f;
}

NoiseSpec noise_from_config(KeyValueConfig& cfg) {
    const std::string kind = cfg.get("noise_kind", "bounded_uniform");
    const double m = cfg.get_double("noise_m", 0.25);
    if (kind == "zero") return NoiseSpec::zero();
    if (kind == "bounded_uniform") return NoiseSpec::bounded_uniform(m);
    if (kind == "signed_bernoulli") return NoiseSpec::signed_bernoulli(m);
    throw ConfigError("unknown noise_kind: " + kind);
}

int cmd_fit(const std::string& data_path, int depth, const std::string& out_path,
            const std::string& summary_path) {
    const Dataset data = read_dataset_csv_file(data_path);
    const RegressionTree tree = fit_cart(data, depth);
    {
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot open for writing: " + out_path);
        out << tree.to_json().dump(2) << "\n";
    }
    nlohmann::json summary;
    summary["n"] = data.n;
    summary["p"] = data.p;
    summary["depth"] = depth;
    summary["training_sse"] = tree.training_sse(data);
    summary["leaf_count"] = tree.leaf_count();
    if (!summary_path.empty()) {
        std::ofstream out(summary_path);
        out << summary.dump(2) << "\n";
    }
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_predict(const std::string& tree_path, const std::string& points_path,
                const std::string& out_path) {
    const RegressionTree tree = RegressionTree::from_json(load_json(tree_path));
    std::ifstream in(points_path);
    if (!in) throw ConfigError("cannot open: " + points_path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("points CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    bool has_y = !header.empty() && header.back() == "y";
    const int p = static_cast<int>(header.size()) - (has_y ? 1 : 0);
    if (p != tree.dimension()) {
        throw ConfigError("points dimension does not match the tree");
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open for writing: " + out_path);
    out << "prediction\n";
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> u;
        while (std::getline(ss, cell, ',')) u.push_back(std::stod(cell));
        if (static_cast<int>(u.size()) != p + (has_y ? 1 : 0)) {
            throw ConfigError("points CSV line " + std::to_string(line_no) +
                              ": wrong column count");
        }
        u.resize(static_cast<std::size_t>(p));
        out << format_full(tree.predict(u)) << "\n";
    }
    return kExitOk;
}

int cmd_sid_check(const std::string& spec, const std::string& family_name, int k,
                  int count, int depth, std::uint64_t seed, int grid,
                  const std::string& out_dir_flag) {
    ProductDistribution dist = ProductDistribution::uniform(1);
    const SignalFunction f = load_signal_spec(spec, &dist);

    CellFamily family = CellFamily::interval_grid(k);
    if (family_name == "interval-grid") {
        family = CellFamily::interval_grid(k);
    } else if (family_name == "random") {
        family = CellFamily::random_cells(count, seed);
    } else if (family_name == "dyadic") {
        family = CellFamily::dyadic(depth);
    } else {
        throw ConfigError("unknown family: " + family_name);
    }

    const SidReport report = estimate_sid_coefficient(f, dist, family, grid);
    const fs::path out_dir = resolve_out_dir(out_dir_flag, "");
    {
        std::ofstream out(out_dir / "sid_report.json");
        out << report.to_json().dump(2) << "\n";
    }
    {
        std::ofstream out(out_dir / "sid_cells.csv");
        write_sid_csv(report, out);
    }
    write_manifest(out_dir / "sid_manifest.json",
                   {{"command", "sid-check"},
                    {"signal", spec},
                    {"family", report.family_desc},
                    {"grid", std::to_string(grid)},
                    {"lambda_hat", format_full(report.lambda_hat)}});
    std::cout << "lambda_hat = " << format_full(report.lambda_hat) << " ("
              << report.family_desc << ", upper estimate)\n";
    return kExitOk;  // the coefficient is a finding, not an error
}

int cmd_lrp_check(const std::string& component_path, int k, int random_count,
                  std::uint64_t seed, const std::string& out_path) {
    const nlohmann::json j = load_json(component_path);
    const UnivariateComponent g = UnivariateComponent::from_json(
        j.contains("component") ? j.at("component") : j);
    IntervalFamily family;
    family.k = k;
    family.random_count = random_count;
    family.seed = seed;
    const double lo = std::max(0.0, g.domain_lo());
    const double hi = std::min(1.0, g.domain_hi());
    const LrpCertificate cert = certify_lrp(g, lo, hi, family);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << cert.to_json(g).dump(2) << "\n";
    }
    std::cout << "tau_measured = " << format_full(cert.tau_measured);
    if (cert.tau_closed_form) {
        std::cout << ", tau_closed_form = " << format_full(*cert.tau_closed_form);
    }
    std::cout << (cert.valid ? " [valid]" : " [FAILED]") << "\n";
    return cert.valid ? kExitOk : kExitCheckFailed;
}

int cmd_rate(const std::string& config_path, const std::string& out_dir_flag,
             int threads_flag, long long seed_flag, int replicates_flag) {
    KeyValueConfig cfg = config_path.empty() ? KeyValueConfig()
                                             : KeyValueConfig::parse_file(config_path);
    const std::string signal_spec = cfg.get("signal", "linear");
    ProductDistribution dist = ProductDistribution::uniform(1);
    SignalFunction f = load_signal_spec(signal_spec, &dist);

    RateConfig rc(std::move(f), std::move(dist));
    rc.noise = noise_from_config(cfg);
    const int n_min_log2 = static_cast<int>(cfg.get_int("n_min_log2", 8));
    const int n_max_log2 = static_cast<int>(cfg.get_int("n_max_log2", 14));
    std::vector<int> default_grid;
    for (int k = n_min_log2; k <= n_max_log2; ++k) default_grid.push_back(1 << k);
    rc.n_grid = cfg.get_int_list("n_grid", default_grid);
    rc.replicates = static_cast<int>(cfg.get_int("replicates", 20));
    rc.base_seed = static_cast<std::uint64_t>(cfg.get_int("base_seed", 20230817));
    rc.depth.scheduled = cfg.get("depth_rule", "scheduled") == "scheduled";
    rc.depth.lambda = cfg.get_double("lambda", 0.75);
    rc.depth.fixed_depth = static_cast<int>(cfg.get_int("fixed_depth", 2));
    rc.exact_error = cfg.get("error_mode", "exact") == "exact";
    rc.mc_samples = static_cast<int>(cfg.get_int("mc_samples", 200000));
    rc.threads = static_cast<int>(cfg.get_int("threads", 0));
    const std::string cfg_out_dir = cfg.get("out_dir", "");
    cfg.reject_unknown_keys();
    if (threads_flag > 0) rc.threads = threads_flag;
    if (seed_flag >= 0) rc.base_seed = static_cast<std::uint64_t>(seed_flag);
    if (replicates_flag > 0) rc.replicates = replicates_flag;

    const RateResult result = run_rate_experiment(rc);
    const fs::path out_dir = resolve_out_dir(out_dir_flag, cfg_out_dir);
    {
        std::ofstream out(out_dir / "rate.csv");
        write_rate_csv(result, out);
    }
    {
        std::ofstream out(out_dir / "rate_summary.csv");
        write_rate_summary_csv(result, out);
    }
    {
        std::ofstream out(out_dir / "rate_fit.json");
        write_rate_fit_json(result, out);
    }
    std::vector<std::pair<std::string, std::string>> manifest = {
        {"command", "rate"},
        {"signal", signal_spec},
        {"noise", rc.noise.to_json().dump()},
        {"replicates", std::to_string(rc.replicates)},
        {"base_seed", std::to_string(rc.base_seed)},
        {"depth_rule", rc.depth.scheduled ? "scheduled" : "fixed"},
        {"lambda", format_full(rc.depth.lambda)},
        {"error_mode", rc.exact_error ? "exact" : "monte-carlo"},
        {"threads", std::to_string(rc.threads)},
    };
    std::string grid_str;
    for (std::size_t i = 0; i < rc.n_grid.size(); ++i) {
        grid_str += (i ? "," : "") + std::to_string(rc.n_grid[i]);
    }
    manifest.emplace_back("n_grid", grid_str);
    write_manifest(out_dir / "rate_manifest.json", manifest);

    std::cout << "slope = "
              << (result.slope ? format_full(*result.slope) : std::string("undefined"))
              << " (reference " << format_full(result.reference_slope) << ")\n";
    return kExitOk;
}

int cmd_xor(const std::string& config_path, const std::string& out_dir_flag,
            int threads_flag, long long seed_flag) {
    KeyValueConfig cfg = config_path.empty() ? KeyValueConfig()
                                             : KeyValueConfig::parse_file(config_path);
    XorConfig xc;
    xc.n_grid = cfg.get_int_list("n_grid", xc.n_grid);
    xc.replicates = static_cast<int>(cfg.get_int("replicates", xc.replicates));
    xc.base_seed = static_cast<std::uint64_t>(
        cfg.get_int("base_seed", static_cast<long long>(xc.base_seed)));
    xc.noise = NoiseSpec::bounded_uniform(cfg.get_double("noise_m", 0.1));
    if (cfg.get("noise_kind", "bounded_uniform") == "zero") xc.noise = NoiseSpec::zero();
    xc.boundary_margin = cfg.get_double("margin", xc.boundary_margin);
    xc.fit_depth = static_cast<int>(cfg.get_int("depth", xc.fit_depth));
    xc.threads = static_cast<int>(cfg.get_int("threads", 0));
    const std::string cfg_out_dir = cfg.get("out_dir", "");
    cfg.reject_unknown_keys();
    if (threads_flag > 0) xc.threads = threads_flag;
    if (seed_flag >= 0) xc.base_seed = static_cast<std::uint64_t>(seed_flag);

    const XorResult result = run_xor_demo(xc);
    const fs::path out_dir = resolve_out_dir(out_dir_flag, cfg_out_dir);
    {
        std::ofstream out(out_dir / "xor.csv");
        write_xor_csv(result, out);
    }
    {
        std::ofstream out(out_dir / "xor_report.json");
        write_xor_report_json(result, out);
    }
    write_manifest(out_dir / "xor_manifest.json",
                   {{"command", "xor"},
                    {"replicates", std::to_string(xc.replicates)},
                    {"base_seed", std::to_string(xc.base_seed)},
                    {"noise", xc.noise.to_json().dump()},
                    {"margin", format_full(xc.boundary_margin)},
                    {"depth", std::to_string(xc.fit_depth)}});
    std::cout << "root sup Delta = " << format_full(result.root_best_delta)
              << ", root variance = " << format_full(result.root_variance) << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& config_path, const std::string& out_dir_flag,
               long long seed_flag) {
    KeyValueConfig cfg = config_path.empty() ? KeyValueConfig()
                                             : KeyValueConfig::parse_file(config_path);
    VerifyConfig vc;
    vc.signals = cfg.get_string_list("signals", vc.signals);
    vc.empirical_cases =
        static_cast<int>(cfg.get_int("empirical_cases", vc.empirical_cases));
    vc.population_cases =
        static_cast<int>(cfg.get_int("population_cases", vc.population_cases));
    vc.closed_form_cases =
        static_cast<int>(cfg.get_int("closed_form_cases", vc.closed_form_cases));
    vc.lemma7_cells = static_cast<int>(cfg.get_int("lemma7_cells", vc.lemma7_cells));
    vc.weighted_cases =
        static_cast<int>(cfg.get_int("weighted_cases", vc.weighted_cases));
    vc.jump_cases = static_cast<int>(cfg.get_int("jump_cases", vc.jump_cases));
    vc.base_seed = static_cast<std::uint64_t>(
        cfg.get_int("base_seed", static_cast<long long>(vc.base_seed)));
    vc.tol.empirical_identity =
        cfg.get_double("tol_empirical", vc.tol.empirical_identity);
    vc.tol.population_identity =
        cfg.get_double("tol_population", vc.tol.population_identity);
    vc.tol.closed_form = cfg.get_double("tol_closed_form", vc.tol.closed_form);
    vc.tol.lemma7 = cfg.get_double("tol_lemma7", vc.tol.lemma7);
    vc.tol.lrp = cfg.get_double("tol_lrp", vc.tol.lrp);
    vc.tol.certificate = cfg.get_double("tol_certificate", vc.tol.certificate);
    vc.tol.jump = cfg.get_double("tol_jump", vc.tol.jump);
    const std::string cfg_out_dir = cfg.get("out_dir", "");
    cfg.reject_unknown_keys();
    if (seed_flag >= 0) vc.base_seed = static_cast<std::uint64_t>(seed_flag);

    const VerifyResult result = run_verification_suite(vc);
    const fs::path out_dir = resolve_out_dir(out_dir_flag, cfg_out_dir);
    {
        std::ofstream out(out_dir / "verify.json");
        write_verify_json(result, out);
    }
    std::string signal_list;
    for (std::size_t i = 0; i < vc.signals.size(); ++i) {
        signal_list += (i ? "," : "") + vc.signals[i];
    }
    write_manifest(out_dir / "verify_manifest.json",
                   {{"command", "verify"},
                    {"signals", signal_list},
                    {"base_seed", std::to_string(vc.base_seed)}});
    for (const auto& c : result.checks) {
        std::cout << (c.pass ? "[pass] " : (c.expected_failure ? "[expected-fail] "
                                                               : "[FAIL] "))
                  << c.name << (c.signal.empty() ? "" : " (" + c.signal + ")")
                  << ": worst " << format_full(c.worst) << " vs tolerance "
                  << format_full(c.tolerance) << "\n";
    }
    std::cout << (result.pass ? "verification suite passed\n"
                              : "verification suite FAILED\n");
    return result.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treelab: CART fitting and convergence-condition verification"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (0 = machine)");

    // fit
    auto* fit = app.add_subcommand("fit", "fit a CART tree to a CSV dataset");
    std::string fit_data, fit_out = "tree.json", fit_summary;
    int fit_depth = 0;
    fit->add_option("--data", fit_data, "CSV with header x1,...,xp,y")->required();
    fit->add_option("--depth", fit_depth, "maximum depth")->required();
    fit->add_option("--out", fit_out, "output tree JSON path");
    fit->add_option("--summary", fit_summary, "optional summary JSON path");

    // predict
    auto* predict = app.add_subcommand("predict", "predict with a fitted tree");
    std::string pred_tree, pred_points, pred_out = "predictions.csv";
    predict->add_option("--tree", pred_tree, "tree JSON")->required();
    predict->add_option("--points", pred_points, "CSV with header x1,...,xp")
        ->required();
    predict->add_option("--out", pred_out, "output CSV path");

    // sid-check
    auto* sid = app.add_subcommand("sid-check", "estimate the SID coefficient");
    std::string sid_signal, sid_family = "interval-grid", sid_out_dir;
    int sid_k = 20, sid_count = 200, sid_depth = 2, sid_grid = 512;
    std::uint64_t sid_seed = 12345;
    sid->add_option("--signal", sid_signal,
                    "signal spec JSON path or built-in name")
        ->required();
    sid->add_option("--family", sid_family, "interval-grid | random | dyadic");
    sid->add_option("--k", sid_k, "grid points per axis (interval-grid)");
    sid->add_option("--count", sid_count, "cell count (random family)");
    sid->add_option("--depth", sid_depth, "dyadic depth");
    sid->add_option("--seed", sid_seed, "random family seed");
    sid->add_option("--grid", sid_grid, "thresholds per feature");
    sid->add_option("--out-dir", sid_out_dir, "output directory");

    // lrp-check
    auto* lrp = app.add_subcommand("lrp-check", "certify the LRP inequality");
    std::string lrp_component, lrp_out = "lrp_certificate.json";
    int lrp_k = 50, lrp_random = 200;
    std::uint64_t lrp_seed = 9157;
    lrp->add_option("--component", lrp_component, "component spec JSON path")
        ->required();
    lrp->add_option("--k", lrp_k, "grid points for the interval family");
    lrp->add_option("--random", lrp_random, "random intervals to add");
    lrp->add_option("--seed", lrp_seed, "random interval seed");
    lrp->add_option("--out", lrp_out, "certificate JSON path");

    // rate / xor / verify
    auto* rate = app.add_subcommand("rate", "rate experiment (error vs n)");
    auto* xorc = app.add_subcommand("xor", "XOR root-split demonstration");
    auto* verify = app.add_subcommand("verify", "identity/inequality suite");
    std::string rate_config, xor_config, verify_config;
    std::string rate_out_dir, xor_out_dir, verify_out_dir;
    long long seed_flag = -1;
    int replicates_flag = 0;
    rate->add_option("--config", rate_config, "key = value config file");
    rate->add_option("--out-dir", rate_out_dir, "output directory");
    rate->add_option("--seed", seed_flag, "override base seed");
    rate->add_option("--replicates", replicates_flag, "override replicates");
    xorc->add_option("--config", xor_config, "key = value config file");
    xorc->add_option("--out-dir", xor_out_dir, "output directory");
    xorc->add_option("--seed", seed_flag, "override base seed");
    verify->add_option("--config", verify_config, "key = value config file");
    verify->add_option("--out-dir", verify_out_dir, "output directory");
    verify->add_option("--seed", seed_flag, "override base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return kExitUsage;
    }

    try {
        if (fit->parsed()) {
            if (fit_depth < 0) {
                std::cerr << "depth must be >= 0\n";
                return kExitUsage;
            }
            return cmd_fit(fit_data, fit_depth, fit_out, fit_summary);
        }
        if (predict->parsed()) return cmd_predict(pred_tree, pred_points, pred_out);
        if (sid->parsed()) {
            return cmd_sid_check(sid_signal, sid_family, sid_k, sid_count,
                                 sid_depth, sid_seed, sid_grid, sid_out_dir);
        }
        if (lrp->parsed()) {
            return cmd_lrp_check(lrp_component, lrp_k, lrp_random, lrp_seed, lrp_out);
        }
        if (rate->parsed()) {
            return cmd_rate(rate_config, rate_out_dir, threads, seed_flag,
                            replicates_flag);
        }
        if (xorc->parsed()) return cmd_xor(xor_config, xor_out_dir, threads, seed_flag);
        if (verify->parsed()) {
            return cmd_verify(verify_config, verify_out_dir, seed_flag);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
