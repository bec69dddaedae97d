#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "treelab/distribution.hpp"
#include "treelab/signal.hpp"

namespace treelab {

// Bounded zero-mean noise families: |eps| <= m always.
struct NoiseSpec {
    enum class Kind { Zero, BoundedUniform, SignedBernoulli };

    static NoiseSpec zero() { return {Kind::Zero, 0.0}; }
    static NoiseSpec bounded_uniform(double m);
    static NoiseSpec signed_bernoulli(double m);

    double draw(SplitMix64& rng) const;

    nlohmann::json to_json() const;
    static NoiseSpec from_json(const nlohmann::json& j);

    Kind kind = Kind::Zero;
    double bound = 0.0;  // m
};

struct Dataset {
    int n = 0;
    int p = 0;
    std::vector<double> features;  // row-major n x p, entries in [0,1]
    std::vector<double> responses;
    std::uint64_t seed = 0;
    double signal_bound = 0.0;  // M
    double noise_bound = 0.0;   // m

    double x(int i, int j) const { return features[static_cast<std::size_t>(i) * p + j]; }
    double y(int i) const { return responses[static_cast<std::size_t>(i)]; }
    // U = M + m bounds |y| for every sample.
    double response_bound() const { return signal_bound + noise_bound; }
};

// n i.i.d. draws x_i ~ mu with y_i = f*(x_i) + eps_i; bit-identical in seed.
Dataset generate_dataset(const SignalFunction& f, const ProductDistribution& dist,
                         const NoiseSpec& noise, int n, std::uint64_t seed);

// CSV with header x1,...,xp,y at full precision.
void write_dataset_csv(const Dataset& data, std::ostream& out);
void write_dataset_csv_file(const Dataset& data, const std::string& path);
// Throws ConfigError with the offending line number on malformed input.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv_file(const std::string& path);

nlohmann::json dataset_manifest(const Dataset& data, const SignalFunction& f,
                                const ProductDistribution& dist,
                                const NoiseSpec& noise);

}  // namespace treelab
