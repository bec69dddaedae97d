#pragma once

#include <vector>

#include <json.hpp>

#include "treelab/prng.hpp"

namespace treelab {

// One coordinate's density on [0,1]: piecewise constant and strictly
// positive, normalized to integrate to 1 at construction.
class MarginalDensity {
public:
    static MarginalDensity uniform();
    // edges 0 = e_0 < ... < e_m = 1; weights are relative densities per piece.
    static MarginalDensity piecewise_constant(std::vector<double> edges,
                                              std::vector<double> weights);

    double density(double t) const;
    double mass(double a, double b) const;
    double cdf(double t) const;
    double inverse_cdf(double u) const;

    double min_density() const { return min_density_; }
    double max_density() const { return max_density_; }
    const std::vector<double>& edges() const { return edges_; }
    bool is_uniform() const;

    nlohmann::json to_json() const;
    static MarginalDensity from_json(const nlohmann::json& j);

private:
    MarginalDensity() = default;
    std::vector<double> edges_;
    std::vector<double> values_;      // normalized density per piece
    std::vector<double> cumulative_;  // cdf at edges
    double min_density_ = 1.0;
    double max_density_ = 1.0;
};

// Product law mu on [0,1]^p with density bounds theta_lower <= p_X <= theta_upper.
class ProductDistribution {
public:
    static ProductDistribution uniform(int dimension);
    explicit ProductDistribution(std::vector<MarginalDensity> marginals);

    int dimension() const { return static_cast<int>(marginals_.size()); }
    const MarginalDensity& marginal(int j) const { return marginals_[j]; }

    double theta_lower() const;
    double theta_upper() const;

    // One draw; consumes exactly `dimension()` uniforms from the stream.
    void sample(SplitMix64& rng, std::vector<double>& out) const;

    nlohmann::json to_json() const;
    static ProductDistribution from_json(const nlohmann::json& j);

private:
    std::vector<MarginalDensity> marginals_;
};

}  // namespace treelab
