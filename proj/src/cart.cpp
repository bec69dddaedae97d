#include "treelab/cart.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "treelab/errors.hpp"
#include "treelab/numeric.hpp"
#include "treelab/population.hpp"

namespace treelab {

namespace {

constexpr double kZeroClamp = 1e-12;

std::vector<int> indices_in_cell(const Dataset& data, const Rectangle& cell) {
    if (cell.dimension() != data.p) {
        throw ConfigError("cell dimension does not match the dataset");
    }
    std::vector<int> idx;
    for (int i = 0; i < data.n; ++i) {
        if (cell.contains(&data.features[static_cast<std::size_t>(i) * data.p])) {
            idx.push_back(i);
        }
    }
    return idx;
}

double mean_of(const Dataset& data, const std::vector<int>& idx, int begin, int end) {
    CompensatedSum s;
    for (int k = begin; k < end; ++k) s.add(data.y(idx[k]));
    return s.value() / (end - begin);
}

double sse_about(const Dataset& data, const std::vector<int>& idx, int begin, int end,
                 double center) {
    CompensatedSum s;
    for (int k = begin; k < end; ++k) {
        const double d = data.y(idx[k]) - center;
        s.add(d * d);
    }
    return s.value();
}

// Sweep state for one node: indices sorted per feature with compensated
// response prefix sums. Candidate thresholds are midpoints between
// consecutive distinct sorted values.
struct BestSplitResult {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double delta = 0.0;
    int left_count = 0;
};

BestSplitResult sweep_best_split(const Dataset& data, std::vector<int>& idx,
                                 int begin, int end) {
    BestSplitResult best;
    const int count = end - begin;
    if (count < 2) return best;

    const double total_mean = mean_of(data, idx, begin, end);
    const double node_sse = sse_about(data, idx, begin, end, total_mean);
    const double clamp_scale = std::max(1.0, node_sse / data.n);

    std::vector<std::pair<double, double>> xy(static_cast<std::size_t>(count));
    std::vector<double> prefix(static_cast<std::size_t>(count));
    for (int j = 0; j < data.p; ++j) {
        for (int k = 0; k < count; ++k) {
            const int i = idx[begin + k];
            xy[static_cast<std::size_t>(k)] = {data.x(i, j), data.y(i)};
        }
        std::sort(xy.begin(), xy.end());
        if (xy.front().first == xy.back().first) continue;  // no distinct values

        CompensatedSum run;
        for (int k = 0; k < count; ++k) {
            run.add(xy[static_cast<std::size_t>(k)].second);
            prefix[static_cast<std::size_t>(k)] = run.value();
        }
        const double total = prefix[static_cast<std::size_t>(count - 1)];

        for (int k = 0; k < count - 1; ++k) {
            const double xl = xy[static_cast<std::size_t>(k)].first;
            const double xr = xy[static_cast<std::size_t>(k + 1)].first;
            if (!(xr > xl)) continue;
            const double b = xl + 0.5 * (xr - xl);
            const int nl = k + 1;
            const int nr = count - nl;
            const double mean_l = prefix[static_cast<std::size_t>(k)] / nl;
            const double mean_r = (total - prefix[static_cast<std::size_t>(k)]) / nr;
            const double dl = mean_l - total_mean;
            const double dr = mean_r - total_mean;
            double delta = (nl * dl * dl + nr * dr * dr) / data.n;
            if (delta <= kZeroClamp * clamp_scale) delta = 0.0;
            if (!best.found || delta > best.delta) {
                best.found = true;
                best.feature = j;
                best.threshold = b;
                best.delta = delta;
                best.left_count = nl;
            }
        }
    }
    return best;
}

}  // namespace

SplitStatistics empirical_impurity_decrease(const Dataset& data,
                                            const Rectangle& cell, int j, double b) {
    if (j < 0 || j >= data.p) throw std::invalid_argument("feature out of range");
    const std::vector<int> idx = indices_in_cell(data, cell);
    if (idx.empty()) throw EmptyCellError("cell holds no samples");

    std::vector<int> left, right;
    for (int i : idx) {
        (data.x(i, j) <= b ? left : right).push_back(i);
    }
    if (left.empty() || right.empty()) {
        throw SplitInfeasibleError("split leaves an empty child");
    }

    const int n_cell = static_cast<int>(idx.size());
    const double mean_a = mean_of(data, idx, 0, n_cell);
    const double mean_l = mean_of(data, left, 0, static_cast<int>(left.size()));
    const double mean_r = mean_of(data, right, 0, static_cast<int>(right.size()));
    const double sse_a = sse_about(data, idx, 0, n_cell, mean_a);
    const double sse_l = sse_about(data, left, 0, static_cast<int>(left.size()), mean_l);
    const double sse_r = sse_about(data, right, 0, static_cast<int>(right.size()), mean_r);

    double delta = (sse_a - sse_l - sse_r) / data.n;
    const double scale = std::max(1.0, sse_a / data.n);
    if (delta < -1e-9 * scale) {
        throw std::logic_error("impurity decrease went significantly negative");
    }
    if (std::fabs(delta) <= kZeroClamp * scale) delta = 0.0;
    if (delta < 0.0) delta = 0.0;

    SplitStatistics stats;
    stats.feature = j;
    stats.threshold = b;
    stats.delta = delta;
    stats.left_weight = static_cast<double>(left.size());
    stats.right_weight = static_cast<double>(right.size());
    stats.left_mean = mean_l;
    stats.right_mean = mean_r;
    return stats;
}

std::optional<SplitStatistics> best_empirical_split(const Dataset& data,
                                                    const Rectangle& cell) {
    std::vector<int> idx = indices_in_cell(data, cell);
    if (idx.empty()) throw EmptyCellError("cell holds no samples");
    BestSplitResult best =
        sweep_best_split(data, idx, 0, static_cast<int>(idx.size()));
    if (!best.found) return std::nullopt;
    // Canonical statistics recomputed through the definitional formula.
    return empirical_impurity_decrease(data, cell, best.feature, best.threshold);
}

RegressionTree fit_cart(const Dataset& data, int depth) {
    if (data.n < 1) throw std::invalid_argument("dataset must hold >= 1 sample");
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    for (double v : data.features) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ConfigError("features must lie in [0,1]");
        }
    }

    std::vector<int> idx(static_cast<std::size_t>(data.n));
    for (int i = 0; i < data.n; ++i) idx[static_cast<std::size_t>(i)] = i;

    struct Work {
        int node;
        int begin;
        int end;
    };

    std::vector<TreeNode> nodes;
    nodes.emplace_back();
    nodes[0].cell = Rectangle::unit(data.p);
    nodes[0].n_samples = data.n;
    nodes[0].depth = 0;
    nodes[0].prediction = mean_of(data, idx, 0, data.n);

    std::deque<Work> frontier{{0, 0, data.n}};
    while (!frontier.empty()) {
        const Work w = frontier.front();
        frontier.pop_front();
        TreeNode& node = nodes[static_cast<std::size_t>(w.node)];
        if (node.depth >= depth) continue;
        if (w.end - w.begin <= 1) continue;  // frozen

        BestSplitResult best = sweep_best_split(data, idx, w.begin, w.end);
        if (!best.found) continue;  // frozen: all points identical

        // Stable partition keeps index order deterministic inside children.
        auto mid_it = std::stable_partition(
            idx.begin() + w.begin, idx.begin() + w.end,
            [&](int i) { return data.x(i, best.feature) <= best.threshold; });
        const int mid = static_cast<int>(mid_it - idx.begin());

        auto children = node.cell.split(best.feature, best.threshold);
        const int left_id = static_cast<int>(nodes.size());
        const int right_id = left_id + 1;
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.delta = best.delta;
        node.left = left_id;
        node.right = right_id;
        const int node_depth = node.depth;

        TreeNode left;
        left.cell = std::move(children.first);
        left.n_samples = mid - w.begin;
        left.depth = node_depth + 1;
        left.prediction = mean_of(data, idx, w.begin, mid);
        TreeNode right;
        right.cell = std::move(children.second);
        right.n_samples = w.end - mid;
        right.depth = node_depth + 1;
        right.prediction = mean_of(data, idx, mid, w.end);
        nodes.push_back(std::move(left));
        nodes.push_back(std::move(right));

        frontier.push_back({left_id, w.begin, mid});
        frontier.push_back({right_id, mid, w.end});
    }
    return RegressionTree(data.p, depth, std::move(nodes));
}

RegressionTree::RegressionTree(int p, int depth, std::vector<TreeNode> nodes)
    : p_(p), depth_(depth), nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw ConfigError("tree needs at least the root node");
}

std::size_t RegressionTree::leaf_count() const {
    std::size_t c = 0;
    for (const auto& n : nodes_) c += n.is_leaf() ? 1 : 0;
    return c;
}

int RegressionTree::leaf_index(const double* u) const {
    int i = 0;
    while (!nodes_[static_cast<std::size_t>(i)].is_leaf()) {
        const TreeNode& n = nodes_[static_cast<std::size_t>(i)];
        i = (u[n.feature] <= n.threshold) ? n.left : n.right;
    }
    return i;
}

double RegressionTree::predict(const std::vector<double>& u) const {
    if (static_cast<int>(u.size()) != p_) {
        throw ConfigError("point dimension does not match the tree");
    }
    for (double c : u) {
        if (!(c >= 0.0 && c <= 1.0)) {
            throw std::domain_error("point outside the unit cube");
        }
    }
    return nodes_[static_cast<std::size_t>(leaf_index(u.data()))].prediction;
}

double RegressionTree::training_sse(const Dataset& data) const {
    CompensatedSum s;
    for (int i = 0; i < data.n; ++i) {
        const int leaf = leaf_index(&data.features[static_cast<std::size_t>(i) * data.p]);
        const double d = data.y(i) - nodes_[static_cast<std::size_t>(leaf)].prediction;
        s.add(d * d);
    }
    return s.value();
}

nlohmann::json RegressionTree::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const TreeNode& n = nodes_[i];
        nlohmann::json node;
        node["id"] = i;
        node["n_samples"] = n.n_samples;
        node["prediction"] = n.prediction;
        if (n.is_leaf()) {
            node["feature"] = nullptr;
            node["threshold"] = nullptr;
            node["left"] = nullptr;
            node["right"] = nullptr;
        } else {
            node["feature"] = n.feature + 1;  // 1-based in files
            node["threshold"] = n.threshold;
            node["left"] = n.left;
            node["right"] = n.right;
        }
        arr.push_back(std::move(node));
    }
    return {{"p", p_}, {"depth", depth_}, {"nodes", arr}};
}

RegressionTree RegressionTree::from_json(const nlohmann::json& j) {
    const int p = j.at("p").get<int>();
    const int depth = j.at("depth").get<int>();
    const auto& arr = j.at("nodes");
    if (!arr.is_array() || arr.empty()) throw ConfigError("tree JSON has no nodes");
    std::vector<TreeNode> nodes(arr.size());
    for (const auto& node : arr) {
        const std::size_t id = node.at("id").get<std::size_t>();
        if (id >= nodes.size()) throw ConfigError("tree JSON node id out of range");
        TreeNode& n = nodes[id];
        n.n_samples = node.at("n_samples").get<int>();
        n.prediction = node.at("prediction").get<double>();
        if (!node.at("feature").is_null()) {
            n.feature = node.at("feature").get<int>() - 1;
            n.threshold = node.at("threshold").get<double>();
            n.left = node.at("left").get<int>();
            n.right = node.at("right").get<int>();
        }
    }
    // Rectangles are not serialized; replay the splits from the unit cube.
    nodes[0].cell = Rectangle::unit(p);
    nodes[0].depth = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const TreeNode& n = nodes[i];
        if (n.is_leaf()) continue;
        if (n.left < 0 || n.right < 0 ||
            static_cast<std::size_t>(n.left) >= nodes.size() ||
            static_cast<std::size_t>(n.right) >= nodes.size()) {
            throw ConfigError("tree JSON child id out of range");
        }
        auto children = n.cell.split(n.feature, n.threshold);
        nodes[static_cast<std::size_t>(n.left)].cell = std::move(children.first);
        nodes[static_cast<std::size_t>(n.left)].depth = n.depth + 1;
        nodes[static_cast<std::size_t>(n.right)].cell = std::move(children.second);
        nodes[static_cast<std::size_t>(n.right)].depth = n.depth + 1;
    }
    return RegressionTree(p, depth, std::move(nodes));
}

double l2_error_exact(const RegressionTree& tree, const SignalFunction& f,
                      const ProductDistribution& dist) {
    if (!f.is_additive()) {
        throw ConfigError("exact error mode requires an additive signal");
    }
    if (f.dimension() != tree.dimension() || dist.dimension() != tree.dimension()) {
        throw ConfigError("tree, signal and distribution dimensions differ");
    }
    CompensatedSum total;
    for (const TreeNode& n : tree.nodes()) {
        if (!n.is_leaf()) continue;
        const CellMoments m = cell_moments(f, dist, n.cell);
        const double gap = m.mean - n.prediction;
        total.add(m.mass * (m.variance + gap * gap));
    }
    return total.value();
}

double l2_error_monte_carlo(const RegressionTree& tree, const SignalFunction& f,
                            const ProductDistribution& dist, int samples,
                            std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
    if (f.dimension() != tree.dimension() || dist.dimension() != tree.dimension()) {
        throw ConfigError("tree, signal and distribution dimensions differ");
    }
    SplitMix64 rng(seed);
    std::vector<double> u;
    CompensatedSum total;
    for (int i = 0; i < samples; ++i) {
        dist.sample(rng, u);
        const double d = tree.nodes()[static_cast<std::size_t>(tree.leaf_index(u.data()))]
                             .prediction -
                         f.value(u);
        total.add(d * d);
    }
    return total.value() / samples;
}

}  // namespace treelab
