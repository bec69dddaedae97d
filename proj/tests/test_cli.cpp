#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return TREELAB_CLI_PATH; }

int run(const std::string& args) {
    const std::string cmd =
        std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "treelab_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

const std::string kFourPointCsv =
    "x1,y\n0.1,0\n0.2,0\n0.8,1\n0.9,1\n";

}  // namespace

TEST_CASE("fit writes the expected split and summary") {
    const fs::path dir = scratch_dir() / "fit";
    fs::create_directories(dir);
    write_file(dir / "data.csv", kFourPointCsv);
    const fs::path tree_path = dir / "tree.json";
    const fs::path summary_path = dir / "summary.json";
    CHECK(run("fit --data " + (dir / "data.csv").string() + " --depth 1 --out " +
              tree_path.string() + " --summary " + summary_path.string()) == 0);
    const nlohmann::json tree = read_json(tree_path);
    const auto& root = tree.at("nodes").at(0);
    CHECK(root.at("feature").get<int>() == 1);
    CHECK(root.at("threshold").get<double>() == doctest::Approx(0.5));
    const nlohmann::json summary = read_json(summary_path);
    CHECK(summary.at("n").get<int>() == 4);
    CHECK(summary.at("leaf_count").get<int>() == 2);
    CHECK(summary.at("training_sse").get<double>() == doctest::Approx(0.0));
}

TEST_CASE("fit at depth zero emits a single mean leaf") {
    const fs::path dir = scratch_dir() / "fit0";
    fs::create_directories(dir);
    write_file(dir / "data.csv", kFourPointCsv);
    const fs::path tree_path = dir / "tree.json";
    CHECK(run("fit --data " + (dir / "data.csv").string() + " --depth 0 --out " +
              tree_path.string()) == 0);
    const nlohmann::json tree = read_json(tree_path);
    REQUIRE(tree.at("nodes").size() == 1);
    CHECK(tree.at("nodes").at(0).at("prediction").get<double>() ==
          doctest::Approx(0.5));
}

TEST_CASE("fit rejects malformed input with exit 2") {
    const fs::path dir = scratch_dir() / "fitbad";
    fs::create_directories(dir);
    write_file(dir / "empty.csv", "");
    CHECK(run("fit --data " + (dir / "empty.csv").string() +
              " --depth 1 --out " + (dir / "t.json").string()) == 2);
    write_file(dir / "data.csv", kFourPointCsv);
    CHECK(run("fit --data " + (dir / "data.csv").string() +
              " --depth -1 --out " + (dir / "t.json").string()) == 2);
    CHECK(run("fit --data " + (dir / "missing.csv").string() +
              " --depth 1 --out " + (dir / "t.json").string()) == 2);
}

TEST_CASE("predict routes points through a fitted tree") {
    const fs::path dir = scratch_dir() / "predict";
    fs::create_directories(dir);
    write_file(dir / "data.csv", kFourPointCsv);
    const fs::path tree_path = dir / "tree.json";
    REQUIRE(run("fit --data " + (dir / "data.csv").string() +
                " --depth 1 --out " + tree_path.string()) == 0);
    write_file(dir / "points.csv", "x1\n0.15\n0.5\n0.95\n");
    const fs::path out = dir / "preds.csv";
    CHECK(run("predict --tree " + tree_path.string() + " --points " +
              (dir / "points.csv").string() + " --out " + out.string()) == 0);
    std::ifstream in(out);
    std::string header, v1, v2, v3;
    std::getline(in, header);
    std::getline(in, v1);
    std::getline(in, v2);
    std::getline(in, v3);
    CHECK(header == "prediction");
    CHECK(std::stod(v1) == doctest::Approx(0.0));
    CHECK(std::stod(v2) == doctest::Approx(0.0));  // boundary routes left
    CHECK(std::stod(v3) == doctest::Approx(1.0));
}

TEST_CASE("sid-check reports the linear coefficient") {
    const fs::path dir = scratch_dir() / "sid";
    CHECK(run("sid-check --signal linear --family interval-grid --k 8 --grid 128"
              " --out-dir " +
              dir.string()) == 0);
    const nlohmann::json report = read_json(dir / "sid_report.json");
    CHECK(report.at("lambda_hat").get<double>() ==
          doctest::Approx(0.75).epsilon(1e-3));
    CHECK(fs::exists(dir / "sid_cells.csv"));
    CHECK(fs::exists(dir / "sid_manifest.json"));
}

TEST_CASE("sid-check accepts JSON specs and flags the XOR gate") {
    const fs::path dir = scratch_dir() / "sidxor";
    fs::create_directories(dir);
    write_file(dir / "spec.json", R"({"signal": {"kind": "xor2d"}})");
    CHECK(run("sid-check --signal " + (dir / "spec.json").string() +
              " --family dyadic --depth 1 --grid 128 --out-dir " +
              dir.string()) == 0);
    const nlohmann::json report = read_json(dir / "sid_report.json");
    CHECK(report.at("lambda_hat").get<double>() <= 1e-6);
}

TEST_CASE("sid-check on a missing spec exits 2") {
    CHECK(run("sid-check --signal /nonexistent/spec.json") == 2);
}

TEST_CASE("lrp-check certifies linear components") {
    const fs::path dir = scratch_dir() / "lrp";
    fs::create_directories(dir);
    write_file(dir / "linear.json", R"({"kind": "linear", "slope": 1.0})");
    const fs::path cert_path = dir / "cert.json";
    CHECK(run("lrp-check --component " + (dir / "linear.json").string() +
              " --out " + cert_path.string()) == 0);
    const nlohmann::json cert = read_json(cert_path);
    CHECK(cert.at("tau_measured").get<double>() ==
          doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-4));
    CHECK(cert.at("valid").get<bool>());
}

TEST_CASE("lrp-check fails oscillating components with exit 1") {
    const fs::path dir = scratch_dir() / "lrpbad";
    fs::create_directories(dir);
    nlohmann::json spec;
    spec["kind"] = "tabulated";
    std::vector<double> ts, vs;
    for (int i = 0; i <= 200; ++i) {
        ts.push_back(static_cast<double>(i) / 200);
        vs.push_back(i % 2 == 0 ? 0.0 : 1e-8);
    }
    spec["ts"] = ts;
    spec["values"] = vs;
    write_file(dir / "saw.json", spec.dump());
    CHECK(run("lrp-check --component " + (dir / "saw.json").string()) == 1);
}

TEST_CASE("lrp-check reports the scaled smooth-convex constant") {
    const fs::path dir = scratch_dir() / "lrpconvex";
    fs::create_directories(dir);
    write_file(dir / "convex.json",
               R"({"kind": "smooth_strongly_convex", "L": 2.0, "sigma": 1.0,
                   "inner": {"kind": "polynomial", "coefficients": [0, 0, 0.75]}})");
    const fs::path cert_path = dir / "cert.json";
    CHECK(run("lrp-check --component " + (dir / "convex.json").string() +
              " --out " + cert_path.string()) == 0);
    const nlohmann::json cert = read_json(cert_path);
    CHECK(cert.at("tau_closed_form").get<double>() == doctest::Approx(220.0));
}

TEST_CASE("rate runs end-to-end from a config file") {
    const fs::path dir = scratch_dir() / "rate";
    fs::create_directories(dir);
    write_file(dir / "rate.cfg",
               "signal = linear\n"
               "noise_m = 0.25\n"
               "n_min_log2 = 6\n"
               "n_max_log2 = 8\n"
               "replicates = 2\n"
               "base_seed = 777\n"
               "lambda = 0.75\n");
    CHECK(run("rate --config " + (dir / "rate.cfg").string() + " --out-dir " +
              dir.string()) == 0);
    CHECK(fs::exists(dir / "rate.csv"));
    CHECK(fs::exists(dir / "rate_summary.csv"));
    CHECK(fs::exists(dir / "rate_fit.json"));
    CHECK(fs::exists(dir / "rate_manifest.json"));
    const nlohmann::json fit = read_json(dir / "rate_fit.json");
    CHECK(fit.at("n_points").get<int>() == 3);
}

TEST_CASE("unknown config keys exit 2") {
    const fs::path dir = scratch_dir() / "ratebad";
    fs::create_directories(dir);
    write_file(dir / "rate.cfg", "signal = linear\nnot_a_key = 5\n");
    CHECK(run("rate --config " + (dir / "rate.cfg").string() + " --out-dir " +
              dir.string()) == 2);
}

TEST_CASE("xor demo writes its tables") {
    const fs::path dir = scratch_dir() / "xor";
    fs::create_directories(dir);
    write_file(dir / "xor.cfg",
               "n_grid = 64,256\n"
               "replicates = 3\n"
               "base_seed = 5\n");
    CHECK(run("xor --config " + (dir / "xor.cfg").string() + " --out-dir " +
              dir.string()) == 0);
    CHECK(fs::exists(dir / "xor.csv"));
    const nlohmann::json report = read_json(dir / "xor_report.json");
    CHECK(report.at("root_variance").get<double>() == doctest::Approx(0.25));
    CHECK(report.at("root_best_delta").get<double>() <= 1e-6);
}

TEST_CASE("verify passes normally and fails at zero tolerance") {
    const fs::path dir = scratch_dir() / "verify";
    fs::create_directories(dir);
    write_file(dir / "ok.cfg",
               "signals = linear,xor\n"
               "empirical_cases = 25\n"
               "population_cases = 20\n"
               "closed_form_cases = 10\n"
               "lemma7_cells = 4\n"
               "weighted_cases = 5\n"
               "jump_cases = 10\n");
    CHECK(run("verify --config " + (dir / "ok.cfg").string() + " --out-dir " +
              dir.string()) == 0);
    const nlohmann::json report = read_json(dir / "verify.json");
    CHECK(report.at("pass").get<bool>());

    write_file(dir / "zero.cfg",
               "signals = linear\n"
               "empirical_cases = 25\n"
               "population_cases = 10\n"
               "closed_form_cases = 5\n"
               "lemma7_cells = 2\n"
               "weighted_cases = 2\n"
               "jump_cases = 2\n"
               "tol_empirical = 0\n"
               "tol_population = 0\n"
               "tol_closed_form = 0\n");
    CHECK(run("verify --config " + (dir / "zero.cfg").string() + " --out-dir " +
              dir.string()) == 1);
}

TEST_CASE("the output directory honors the environment override") {
    const fs::path dir = scratch_dir() / "envdir";
    const std::string cmd = std::string("TREELAB_OUT=") + dir.string() + " " +
                            cli_path() +
                            " sid-check --signal linear --family interval-grid"
                            " --k 4 --grid 64 >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(dir / "sid_report.json"));
}

TEST_CASE("unknown subcommands exit 2") {
    CHECK(run("frobnicate") == 2);
    CHECK(run("") == 2);
}
