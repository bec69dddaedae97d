#include "treelab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treelab/errors.hpp"

namespace treelab {

SignalFunction SignalFunction::additive(std::vector<UnivariateComponent> components) {
    if (components.empty()) throw ConfigError("additive signal needs components");
    SignalFunction f;
    f.kind_ = Kind::Additive;
    f.dimension_ = static_cast<int>(components.size());
    double m = 0.0;
    for (const auto& c : components) m += c.sup_abs_bound();
    f.bound_ = m;
    f.components_ = std::move(components);
    return f;
}

SignalFunction SignalFunction::xor2d() {
    SignalFunction f;
    f.kind_ = Kind::Xor2d;
    f.dimension_ = 2;
    f.bound_ = 1.0;
    f.edges_ = {{0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}};
    f.values_ = {1.0, 0.0, 0.0, 1.0};
    return f;
}

SignalFunction SignalFunction::grid(std::vector<std::vector<double>> edges,
                                    std::vector<double> values) {
    if (edges.empty() || edges.size() > 3) {
        throw ConfigError("grid signals support 1 <= p <= 3");
    }
    std::size_t cells = 1;
    for (const auto& e : edges) {
        if (e.size() < 2 || e.front() != 0.0 || e.back() != 1.0) {
            throw ConfigError("grid edges must span [0,1] per coordinate");
        }
        for (std::size_t i = 1; i < e.size(); ++i) {
            if (!(e[i] > e[i - 1])) throw ConfigError("grid edges must increase");
        }
        cells *= e.size() - 1;
    }
    if (values.size() != cells) {
        throw ConfigError("grid value count does not match cell count");
    }
    SignalFunction f;
    f.kind_ = Kind::Grid;
    f.dimension_ = static_cast<int>(edges.size());
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    f.bound_ = m;
    f.edges_ = std::move(edges);
    f.values_ = std::move(values);
    return f;
}

namespace {

// Cell index along one axis, lower-open/upper-closed except the first cell.
std::size_t axis_cell(const std::vector<double>& edges, double t) {
    auto it = std::lower_bound(edges.begin(), edges.end(), t);
    std::size_t i = static_cast<std::size_t>(it - edges.begin());
    if (i == 0) return 0;
    if (i >= edges.size()) return edges.size() - 2;
    if (*it == t) return i - 1;  // edge point belongs to the lower cell
    return i - 1;
}

}  // namespace

double SignalFunction::value(const std::vector<double>& u) const {
    if (static_cast<int>(u.size()) != dimension_) {
        throw ConfigError("point dimension does not match the signal");
    }
    for (double c : u) {
        if (!(c >= 0.0 && c <= 1.0)) {
            throw std::domain_error("point outside the unit cube");
        }
    }
    switch (kind_) {
        case Kind::Additive: {
            double s = 0.0;
            for (int j = 0; j < dimension_; ++j) s += components_[j].value(u[j]);
            return s;
        }
        case Kind::Xor2d: {
            const bool low = u[0] >= 0.0 && u[0] < 0.5 && u[1] >= 0.0 && u[1] < 0.5;
            const bool high = u[0] >= 0.5 && u[0] < 1.0 && u[1] >= 0.5 && u[1] < 1.0;
            return (low || high) ? 1.0 : 0.0;
        }
        case Kind::Grid: {
            std::size_t idx = 0, stride = 1;
            for (int j = 0; j < dimension_; ++j) {
                idx += stride * axis_cell(edges_[j], u[j]);
                stride *= edges_[j].size() - 1;
            }
            return values_[idx];
        }
    }
    return 0.0;
}

const std::vector<UnivariateComponent>& SignalFunction::components() const {
    if (kind_ != Kind::Additive) {
        throw ConfigError("components are only defined for additive signals");
    }
    return components_;
}

double SignalFunction::grid_cell_value(const std::vector<std::size_t>& idx) const {
    std::size_t flat = 0, stride = 1;
    for (int j = 0; j < dimension_; ++j) {
        flat += stride * idx[static_cast<std::size_t>(j)];
        stride *= edges_[static_cast<std::size_t>(j)].size() - 1;
    }
    return values_[flat];
}

nlohmann::json SignalFunction::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::Additive: {
            j["kind"] = "additive";
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : components_) arr.push_back(c.to_json());
            j["components"] = std::move(arr);
            break;
        }
        case Kind::Xor2d:
            j["kind"] = "xor2d";
            break;
        case Kind::Grid:
            j["kind"] = "grid";
            j["edges"] = edges_;
            j["values"] = values_;
            break;
    }
    j["bound"] = bound_;
    return j;
}

SignalFunction SignalFunction::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "additive") {
        std::vector<UnivariateComponent> comps;
        for (const auto& c : j.at("components")) {
            comps.push_back(UnivariateComponent::from_json(c));
        }
        return additive(std::move(comps));
    }
    if (kind == "xor2d") return xor2d();
    if (kind == "grid") {
        return grid(j.at("edges").get<std::vector<std::vector<double>>>(),
                    j.at("values").get<std::vector<double>>());
    }
    throw ConfigError("unknown signal kind: " + kind);
}

}  // namespace treelab
