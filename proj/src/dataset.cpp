#include "treelab/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "treelab/errors.hpp"
#include "treelab/numeric.hpp"

namespace treelab {

NoiseSpec NoiseSpec::bounded_uniform(double m) {
    if (!(m >= 0.0)) throw ConfigError("noise bound must be >= 0");
    return {Kind::BoundedUniform, m};
}

NoiseSpec NoiseSpec::signed_bernoulli(double m) {
    if (!(m >= 0.0)) throw ConfigError("noise bound must be >= 0");
    return {Kind::SignedBernoulli, m};
}

double NoiseSpec::draw(SplitMix64& rng) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::BoundedUniform:
            return bound * (2.0 * rng.next_double() - 1.0);
        case Kind::SignedBernoulli:
            return rng.next_bool() ? bound : -bound;
    }
    return 0.0;
}

nlohmann::json NoiseSpec::to_json() const {
    switch (kind) {
        case Kind::Zero: return {{"kind", "zero"}};
        case Kind::BoundedUniform:
            return {{"kind", "bounded_uniform"}, {"m", bound}};
        case Kind::SignedBernoulli:
            return {{"kind", "signed_bernoulli"}, {"m", bound}};
    }
    return {};
}

NoiseSpec NoiseSpec::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return zero();
    if (kind == "bounded_uniform") return bounded_uniform(j.at("m").get<double>());
    if (kind == "signed_bernoulli") return signed_bernoulli(j.at("m").get<double>());
    throw ConfigError("unknown noise kind: " + kind);
}

Dataset generate_dataset(const SignalFunction& f, const ProductDistribution& dist,
                         const NoiseSpec& noise, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    if (f.dimension() != dist.dimension()) {
        throw ConfigError("signal and distribution dimensions differ");
    }
    Dataset data;
    data.n = n;
    data.p = dist.dimension();
    data.seed = seed;
    data.signal_bound = f.bound();
    data.noise_bound = noise.bound;
    data.features.resize(static_cast<std::size_t>(n) * data.p);
    data.responses.resize(static_cast<std::size_t>(n));

    SplitMix64 rng(seed);
    std::vector<double> point;
    for (int i = 0; i < n; ++i) {
        dist.sample(rng, point);
        for (int j = 0; j < data.p; ++j) {
            data.features[static_cast<std::size_t>(i) * data.p + j] = point[j];
        }
        data.responses[static_cast<std::size_t>(i)] = f.value(point) + noise.draw(rng);
    }
    return data;
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
    for (int j = 0; j < data.p; ++j) out << "x" << (j + 1) << ",";
    out << "y\n";
    for (int i = 0; i < data.n; ++i) {
        for (int j = 0; j < data.p; ++j) out << format_full(data.x(i, j)) << ",";
        out << format_full(data.y(i)) << "\n";
    }
}

void write_dataset_csv_file(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    write_dataset_csv(data, out);
}

namespace {
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}
}  // namespace

Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ConfigError("CSV line 1: empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header.back() != "y") {
        throw ConfigError("CSV line 1: expected header x1,...,xp,y");
    }
    for (std::size_t j = 0; j + 1 < header.size(); ++j) {
        if (header[j] != "x" + std::to_string(j + 1)) {
            throw ConfigError("CSV line 1: expected header x1,...,xp,y");
        }
    }
    Dataset data;
    data.p = static_cast<int>(header.size()) - 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw ConfigError("CSV line " + std::to_string(line_no) +
                              ": wrong column count");
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(cells[c], &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != cells[c].size() || !std::isfinite(v)) {
                throw ConfigError("CSV line " + std::to_string(line_no) +
                                  ": bad number '" + cells[c] + "'");
            }
            if (c + 1 < cells.size()) {
                data.features.push_back(v);
            } else {
                data.responses.push_back(v);
            }
        }
        ++data.n;
    }
    if (data.n == 0) throw ConfigError("CSV line 1: no data rows");
    double u = 0.0;
    for (double y : data.responses) u = std::max(u, std::fabs(y));
    data.signal_bound = u;
    data.noise_bound = 0.0;
    return data;
}

Dataset read_dataset_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open: " + path);
    return read_dataset_csv(in);
}

nlohmann::json dataset_manifest(const Dataset& data, const SignalFunction& f,
                                const ProductDistribution& dist,
                                const NoiseSpec& noise) {
    nlohmann::json j;
    j["seed"] = data.seed;
    j["n"] = data.n;
    j["p"] = data.p;
    j["signal_bound"] = data.signal_bound;
    j["noise_bound"] = data.noise_bound;
    j["signal"] = f.to_json();
    j["distribution"] = dist.to_json();
    j["noise"] = noise.to_json();
    return j;
}

}  // namespace treelab
