#include "treelab/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "treelab/errors.hpp"

namespace treelab {

MarginalDensity MarginalDensity::uniform() {
    MarginalDensity m;
    m.edges_ = {0.0, 1.0};
    m.values_ = {1.0};
    m.cumulative_ = {0.0, 1.0};
    m.min_density_ = m.max_density_ = 1.0;
    return m;
}

MarginalDensity MarginalDensity::piecewise_constant(std::vector<double> edges,
                                                    std::vector<double> weights) {
    if (edges.size() < 2 || weights.size() != edges.size() - 1) {
        throw ConfigError("piecewise density needs m+1 edges and m weights");
    }
    if (edges.front() != 0.0 || edges.back() != 1.0) {
        throw ConfigError("density edges must span [0,1]");
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] > edges[i])) throw ConfigError("density edges must increase");
        if (!(weights[i] > 0.0)) throw ConfigError("density weights must be positive");
        total += weights[i] * (edges[i + 1] - edges[i]);
    }
    MarginalDensity m;
    m.edges_ = std::move(edges);
    m.values_.resize(weights.size());
    m.cumulative_.assign(m.edges_.size(), 0.0);
    m.min_density_ = std::numeric_limits<double>::infinity();
    m.max_density_ = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        m.values_[i] = weights[i] / total;
        m.min_density_ = std::min(m.min_density_, m.values_[i]);
        m.max_density_ = std::max(m.max_density_, m.values_[i]);
        m.cumulative_[i + 1] =
            m.cumulative_[i] + m.values_[i] * (m.edges_[i + 1] - m.edges_[i]);
    }
    m.cumulative_.back() = 1.0;
    return m;
}

double MarginalDensity::density(double t) const {
    if (t < 0.0 || t > 1.0) return 0.0;
    auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - edges_.begin());
    if (i == 0) i = 1;
    if (i >= edges_.size()) i = edges_.size() - 1;
    return values_[i - 1];
}

double MarginalDensity::cdf(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - edges_.begin()) - 1;
    return cumulative_[i] + values_[i] * (t - edges_[i]);
}

double MarginalDensity::mass(double a, double b) const {
    if (!(b > a)) return 0.0;
    return cdf(b) - cdf(a);
}

double MarginalDensity::inverse_cdf(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    if (i == 0) i = 1;
    if (i >= cumulative_.size()) i = cumulative_.size() - 1;
    const std::size_t piece = i - 1;
    return edges_[piece] + (u - cumulative_[piece]) / values_[piece];
}

bool MarginalDensity::is_uniform() const {
    return values_.size() == 1;
}

nlohmann::json MarginalDensity::to_json() const {
    if (is_uniform()) return {{"kind", "uniform"}};
    nlohmann::json j;
    j["kind"] = "piecewise_constant";
    j["edges"] = edges_;
    j["weights"] = values_;
    return j;
}

MarginalDensity MarginalDensity::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") return uniform();
    if (kind == "piecewise_constant") {
        return piecewise_constant(j.at("edges").get<std::vector<double>>(),
                                  j.at("weights").get<std::vector<double>>());
    }
    throw ConfigError("unknown marginal kind: " + kind);
}

ProductDistribution ProductDistribution::uniform(int dimension) {
    if (dimension < 1) throw ConfigError("dimension must be >= 1");
    std::vector<MarginalDensity> ms;
    ms.reserve(static_cast<std::size_t>(dimension));
    for (int j = 0; j < dimension; ++j) ms.push_back(MarginalDensity::uniform());
    return ProductDistribution(std::move(ms));
}

ProductDistribution::ProductDistribution(std::vector<MarginalDensity> marginals)
    : marginals_(std::move(marginals)) {
    if (marginals_.empty()) throw ConfigError("distribution needs >= 1 marginal");
}

double ProductDistribution::theta_lower() const {
    double t = 1.0;
    for (const auto& m : marginals_) t *= m.min_density();
    return t;
}

double ProductDistribution::theta_upper() const {
    double t = 1.0;
    for (const auto& m : marginals_) t *= m.max_density();
    return t;
}

void ProductDistribution::sample(SplitMix64& rng, std::vector<double>& out) const {
    out.resize(marginals_.size());
    for (std::size_t j = 0; j < marginals_.size(); ++j) {
        out[j] = marginals_[j].inverse_cdf(rng.next_double());
    }
}

nlohmann::json ProductDistribution::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : marginals_) arr.push_back(m.to_json());
    return {{"marginals", arr}};
}

ProductDistribution ProductDistribution::from_json(const nlohmann::json& j) {
    std::vector<MarginalDensity> ms;
    for (const auto& m : j.at("marginals")) ms.push_back(MarginalDensity::from_json(m));
    return ProductDistribution(std::move(ms));
}

}  // namespace treelab
