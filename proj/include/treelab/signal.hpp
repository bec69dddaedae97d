#pragma once

#include <vector>

#include <json.hpp>

#include "treelab/component.hpp"

namespace treelab {

// The regression function f* on [0,1]^p: additive with one univariate
// component per coordinate, the two-dimensional XOR gate, or a general
// piecewise-constant function on an axis-aligned grid.
class SignalFunction {
public:
    enum class Kind { Additive, Xor2d, Grid };

    static SignalFunction additive(std::vector<UnivariateComponent> components);
    // 1 on [0,1/2)^2 and [1/2,1)^2, 0 elsewhere.
    static SignalFunction xor2d();
    // edges[j] spans [0,1] per coordinate; values are cell values flattened
    // with coordinate 0 fastest. Cells are lower-open/upper-closed except at
    // the lower domain boundary, matching tree routing.
    static SignalFunction grid(std::vector<std::vector<double>> edges,
                               std::vector<double> values);

    Kind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    bool is_additive() const { return kind_ == Kind::Additive; }
    // Piecewise-constant kinds (XOR gate, grid) admit exact integration.
    bool is_piecewise_constant() const { return kind_ != Kind::Additive; }

    // Sup-norm bound M (safe upper bound, Assumption-style |f*| <= M).
    double bound() const { return bound_; }

    // Throws std::domain_error when u leaves the unit cube.
    double value(const std::vector<double>& u) const;

    const std::vector<UnivariateComponent>& components() const;

    // Grid view of a piecewise-constant signal (XOR included).
    const std::vector<std::vector<double>>& grid_edges() const { return edges_; }
    const std::vector<double>& grid_values() const { return values_; }
    double grid_cell_value(const std::vector<std::size_t>& idx) const;

    nlohmann::json to_json() const;
    static SignalFunction from_json(const nlohmann::json& j);

private:
    SignalFunction() = default;
    Kind kind_ = Kind::Additive;
    int dimension_ = 0;
    double bound_ = 0.0;
    std::vector<UnivariateComponent> components_;
    std::vector<std::vector<double>> edges_;
    std::vector<double> values_;
};

}  // namespace treelab
