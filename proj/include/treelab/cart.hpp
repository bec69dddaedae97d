#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "treelab/dataset.hpp"
#include "treelab/rectangle.hpp"
#include "treelab/split_stats.hpp"

namespace treelab {

struct TreeNode {
    Rectangle cell;
    int left = -1;
    int right = -1;
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    double delta = 0.0;
    double prediction = 0.0;  // mean response of the samples routed here
    int n_samples = 0;
    int depth = 0;

    bool is_leaf() const { return feature < 0; }
};

class RegressionTree {
public:
    RegressionTree(int p, int depth, std::vector<TreeNode> nodes);

    int dimension() const { return p_; }
    int depth() const { return depth_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::size_t leaf_count() const;

    // Routes by "left iff u_j <= b"; throws std::domain_error off the cube.
    double predict(const std::vector<double>& u) const;
    int leaf_index(const double* u) const;

    double training_sse(const Dataset& data) const;

    nlohmann::json to_json() const;
    static RegressionTree from_json(const nlohmann::json& j);

private:
    int p_;
    int depth_;
    std::vector<TreeNode> nodes_;
};

// Empirical impurity decrease of the split (j, b) on `cell`, normalized by
// the full sample size. Throws EmptyCellError / SplitInfeasibleError.
SplitStatistics empirical_impurity_decrease(const Dataset& data,
                                            const Rectangle& cell, int j, double b);

// Exact maximizer over all features and all midpoints between consecutive
// distinct sorted feature values; ties break on smallest feature then
// smallest threshold. Absent when the cell admits no feasible split.
std::optional<SplitStatistics> best_empirical_split(const Dataset& data,
                                                    const Rectangle& cell);

// Level-by-level greedy growth to maximum depth d. Nodes with at most one
// sample or no feasible split freeze; leaf predictions are sample means.
RegressionTree fit_cart(const Dataset& data, int depth);

// Integrated squared error against f* under the population law; exact mode
// requires an additive signal and is evaluated leaf by leaf.
double l2_error_exact(const RegressionTree& tree, const SignalFunction& f,
                      const ProductDistribution& dist);
double l2_error_monte_carlo(const RegressionTree& tree, const SignalFunction& f,
                            const ProductDistribution& dist, int samples,
                            std::uint64_t seed);

}  // namespace treelab
