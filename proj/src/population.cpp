#include "treelab/population.hpp"

#include <algorithm>
#include <cmath>

#include "treelab/errors.hpp"
#include "treelab/numeric.hpp"
#include "treelab/quadrature.hpp"
#include "treelab/variation.hpp"

namespace treelab {

namespace {

constexpr double kMassFloor = 1e-300;

std::vector<double> coordinate_cuts(const UnivariateComponent& g,
                                    const MarginalDensity& w, double a, double b) {
    std::vector<double> cuts = g.interior_breakpoints(a, b);
    for (double e : w.edges()) {
        if (e > a && e < b) cuts.push_back(e);
    }
    return cuts;
}

// Exact rectangle moments for piecewise-constant signals: per-coordinate
// marginal overlap masses combined over the value grid.
struct GridMoments {
    double mass = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

GridMoments grid_moments(const SignalFunction& f, const ProductDistribution& dist,
                         const std::vector<double>& lo,
                         const std::vector<double>& hi) {
    const int p = f.dimension();
    std::vector<std::vector<double>> overlap(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        const auto& edges = f.grid_edges()[static_cast<std::size_t>(j)];
        auto& o = overlap[static_cast<std::size_t>(j)];
        o.resize(edges.size() - 1);
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            const double a = std::max(lo[static_cast<std::size_t>(j)], edges[k]);
            const double b = std::min(hi[static_cast<std::size_t>(j)], edges[k + 1]);
            o[k] = (b > a) ? dist.marginal(j).mass(a, b) : 0.0;
        }
    }
    CompensatedSum mass_sum, first_moment;
    std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
    auto cell_weight = [&]() {
        double w = 1.0;
        for (int j = 0; j < p; ++j) {
            w *= overlap[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
        }
        return w;
    };
    auto advance = [&]() {
        for (int j = 0; j < p; ++j) {
            auto& i = idx[static_cast<std::size_t>(j)];
            if (++i < overlap[static_cast<std::size_t>(j)].size()) return true;
            i = 0;
        }
        return false;
    };
    do {
        const double w = cell_weight();
        if (w <= 0.0) continue;
        const double v = f.grid_cell_value(idx);
        mass_sum.add(w);
        first_moment.add(w * v);
    } while (advance());

    GridMoments m;
    m.mass = mass_sum.value();
    if (m.mass <= kMassFloor) return m;
    m.mean = first_moment.value() / m.mass;
    // Second pass around the mean for a stable variance.
    CompensatedSum second;
    std::fill(idx.begin(), idx.end(), 0);
    do {
        const double w = cell_weight();
        if (w <= 0.0) continue;
        const double d = f.grid_cell_value(idx) - m.mean;
        second.add(w * d * d);
    } while (advance());
    m.variance = std::max(0.0, second.value() / m.mass);
    return m;
}

struct AdditiveCellState {
    std::vector<CoordinateMoments> coords;
    double mass = 1.0;
    double mean = 0.0;
    double variance = 0.0;
    double quad_error = 0.0;
};

AdditiveCellState additive_state(const SignalFunction& f,
                                 const ProductDistribution& dist,
                                 const Rectangle& cell) {
    AdditiveCellState st;
    const auto& comps = f.components();
    for (int k = 0; k < f.dimension(); ++k) {
        CoordinateMoments cm = coordinate_moments(
            comps[static_cast<std::size_t>(k)], dist.marginal(k), cell.lower[k],
            cell.upper[k]);
        st.mass *= cm.mass;
        st.mean += cm.mean;
        st.variance += cm.variance;
        st.quad_error += cm.quad_error;
        st.coords.push_back(std::move(cm));
    }
    return st;
}

void check_cell(const SignalFunction& f, const ProductDistribution& dist,
                const Rectangle& cell) {
    if (f.dimension() != dist.dimension() || cell.dimension() != f.dimension()) {
        throw ConfigError("signal, distribution and cell dimensions differ");
    }
}

}  // namespace

CoordinateMoments coordinate_moments(const UnivariateComponent& g,
                                     const MarginalDensity& w, double a, double b) {
    CoordinateMoments m;
    m.mass = w.mass(a, b);
    if (m.mass <= kMassFloor) {
        throw EmptyCellError("coordinate interval has zero mass");
    }
    const auto cuts = coordinate_cuts(g, w, a, b);
    const QuadResult first = integrate_split(
        [&](double t) { return g.value(t) * w.density(t); }, a, b, cuts);
    m.mean = first.value / m.mass;
    const double mu = m.mean;
    const QuadResult second = integrate_split(
        [&](double t) {
            const double d = g.value(t) - mu;
            return d * d * w.density(t);
        },
        a, b, cuts);
    m.variance = std::max(0.0, second.value / m.mass);
    m.quad_error = (first.error + second.error) / m.mass;
    return m;
}

CellMoments cell_moments(const SignalFunction& f, const ProductDistribution& dist,
                         const Rectangle& cell) {
    check_cell(f, dist, cell);
    CellMoments out;
    if (f.is_additive()) {
        const AdditiveCellState st = additive_state(f, dist, cell);
        out.mass = st.mass;
        out.mean = st.mean;
        out.variance = st.variance;
        out.quad_error = st.quad_error;
        return out;
    }
    const GridMoments m = grid_moments(f, dist, cell.lower, cell.upper);
    if (m.mass <= kMassFloor) throw EmptyCellError("cell has zero mass");
    out.mass = m.mass;
    out.mean = m.mean;
    out.variance = m.variance;
    out.quad_error = 0.0;
    return out;
}

SplitStatistics population_impurity_decrease(const SignalFunction& f,
                                             const ProductDistribution& dist,
                                             const Rectangle& cell, int j, double b) {
    check_cell(f, dist, cell);
    if (j < 0 || j >= f.dimension()) throw std::invalid_argument("feature out of range");
    if (!(b > cell.lower[j] && b < cell.upper[j])) {
        throw SplitInfeasibleError("threshold outside the open cell side");
    }

    SplitStatistics stats;
    stats.feature = j;
    stats.threshold = b;

    if (f.is_additive()) {
        const auto& g = f.components()[static_cast<std::size_t>(j)];
        const auto& w = dist.marginal(j);
        const CoordinateMoments full =
            coordinate_moments(g, w, cell.lower[j], cell.upper[j]);
        const CoordinateMoments left = coordinate_moments(g, w, cell.lower[j], b);
        const CoordinateMoments right = coordinate_moments(g, w, b, cell.upper[j]);
        if (left.mass <= kMassFloor || right.mass <= kMassFloor) {
            throw SplitInfeasibleError("split child has zero mass");
        }
        double other_mass = 1.0;
        double other_mean = 0.0;
        for (int k = 0; k < f.dimension(); ++k) {
            if (k == j) continue;
            const CoordinateMoments cm = coordinate_moments(
                f.components()[static_cast<std::size_t>(k)], dist.marginal(k),
                cell.lower[k], cell.upper[k]);
            other_mass *= cm.mass;
            other_mean += cm.mean;
        }
        const double gap_l = left.mean - full.mean;
        const double gap_r = right.mean - full.mean;
        stats.delta = other_mass * (left.mass * gap_l * gap_l +
                                    right.mass * gap_r * gap_r);
        stats.left_weight = other_mass * left.mass;
        stats.right_weight = other_mass * right.mass;
        stats.left_mean = other_mean + left.mean;
        stats.right_mean = other_mean + right.mean;
        return stats;
    }

    auto children = cell.split(j, b);
    const GridMoments parent = grid_moments(f, dist, cell.lower, cell.upper);
    const GridMoments left =
        grid_moments(f, dist, children.first.lower, children.first.upper);
    const GridMoments right =
        grid_moments(f, dist, children.second.lower, children.second.upper);
    if (parent.mass <= kMassFloor) throw EmptyCellError("cell has zero mass");
    if (left.mass <= kMassFloor || right.mass <= kMassFloor) {
        throw SplitInfeasibleError("split child has zero mass");
    }
    const double gap_l = left.mean - parent.mean;
    const double gap_r = right.mean - parent.mean;
    stats.delta = left.mass * gap_l * gap_l + right.mass * gap_r * gap_r;
    stats.left_weight = left.mass;
    stats.right_weight = right.mass;
    stats.left_mean = left.mean;
    stats.right_mean = right.mean;
    return stats;
}

double population_delta_variance_route(const SignalFunction& f,
                                       const ProductDistribution& dist,
                                       const Rectangle& cell, int j, double b) {
    auto children = cell.split(j, b);
    const CellMoments parent = cell_moments(f, dist, cell);
    const CellMoments left = cell_moments(f, dist, children.first);
    const CellMoments right = cell_moments(f, dist, children.second);
    double delta = parent.mass * parent.variance - left.mass * left.variance -
                   right.mass * right.variance;
    const double scale = std::max(1.0, parent.mass * parent.variance);
    if (std::fabs(delta) <= 1e-12 * scale && delta < 0.0) delta = 0.0;
    return delta;
}

namespace {

struct FeatureBest {
    bool found = false;
    double threshold = 0.0;
    double delta = -1.0;
};

// Additive path: segment integrals between consecutive thresholds give
// prefix masses and first moments for the whole sweep in one pass.
FeatureBest sweep_feature_additive(const UnivariateComponent& g,
                                   const MarginalDensity& w, double lo, double hi,
                                   double other_mass, int grid_size) {
    FeatureBest best;
    const double width = hi - lo;
    if (!(width > 0.0)) return best;

    const int segments = grid_size + 1;
    std::vector<double> prefix_mass(static_cast<std::size_t>(grid_size));
    std::vector<double> prefix_moment(static_cast<std::size_t>(grid_size));
    CompensatedSum mass_acc, moment_acc;
    double prev = lo;
    for (int i = 1; i <= segments; ++i) {
        const double t = (i == segments) ? hi : lo + width * i / segments;
        mass_acc.add(w.mass(prev, t));
        const auto cuts = coordinate_cuts(g, w, prev, t);
        moment_acc.add(integrate_split(
                           [&](double s) { return g.value(s) * w.density(s); },
                           prev, t, cuts)
                           .value);
        if (i <= grid_size) {
            prefix_mass[static_cast<std::size_t>(i - 1)] = mass_acc.value();
            prefix_moment[static_cast<std::size_t>(i - 1)] = moment_acc.value();
        }
        prev = t;
    }
    const double total_mass = mass_acc.value();
    const double total_moment = moment_acc.value();
    if (total_mass <= kMassFloor) return best;
    const double full_mean = total_moment / total_mass;

    for (int i = 1; i <= grid_size; ++i) {
        const double ml = prefix_mass[static_cast<std::size_t>(i - 1)];
        const double mr = total_mass - ml;
        if (ml <= kMassFloor || mr <= kMassFloor) continue;
        const double mean_l = prefix_moment[static_cast<std::size_t>(i - 1)] / ml;
        const double mean_r =
            (total_moment - prefix_moment[static_cast<std::size_t>(i - 1)]) / mr;
        const double gl = mean_l - full_mean;
        const double gr = mean_r - full_mean;
        const double delta = other_mass * (ml * gl * gl + mr * gr * gr);
        if (!best.found || delta > best.delta) {
            best.found = true;
            best.threshold = lo + width * i / segments;
            best.delta = delta;
        }
    }
    return best;
}

}  // namespace

SplitStatistics best_population_split(const SignalFunction& f,
                                      const ProductDistribution& dist,
                                      const Rectangle& cell, int grid_size,
                                      bool refine) {
    check_cell(f, dist, cell);
    if (grid_size < 1) throw std::invalid_argument("grid size must be >= 1");

    // Parent moments validate positive mass up front.
    const CellMoments parent = cell_moments(f, dist, cell);
    if (parent.mass <= kMassFloor) throw EmptyCellError("cell has zero mass");

    double additive_other_mass = 1.0;
    std::vector<double> coord_mass;
    if (f.is_additive()) {
        coord_mass.resize(static_cast<std::size_t>(f.dimension()));
        for (int k = 0; k < f.dimension(); ++k) {
            coord_mass[static_cast<std::size_t>(k)] =
                dist.marginal(k).mass(cell.lower[k], cell.upper[k]);
        }
    }

    SplitStatistics best;
    best.delta = -1.0;
    for (int j = 0; j < f.dimension(); ++j) {
        const double lo = cell.lower[j];
        const double hi = cell.upper[j];
        if (!(hi > lo)) continue;

        FeatureBest fb;
        if (f.is_additive()) {
            additive_other_mass = 1.0;
            for (int k = 0; k < f.dimension(); ++k) {
                if (k != j) additive_other_mass *= coord_mass[static_cast<std::size_t>(k)];
            }
            fb = sweep_feature_additive(f.components()[static_cast<std::size_t>(j)],
                                        dist.marginal(j), lo, hi,
                                        additive_other_mass, grid_size);
        } else {
            const double width = hi - lo;
            for (int i = 1; i <= grid_size; ++i) {
                const double b = lo + width * i / (grid_size + 1);
                const double delta =
                    population_impurity_decrease(f, dist, cell, j, b).delta;
                if (!fb.found || delta > fb.delta) {
                    fb.found = true;
                    fb.threshold = b;
                    fb.delta = delta;
                }
            }
        }
        if (!fb.found) continue;

        if (refine) {
            const double step = (hi - lo) / (grid_size + 1);
            const double pad = 1e-12 * (hi - lo);
            const double blo = std::max(lo + pad, fb.threshold - step);
            const double bhi = std::min(hi - pad, fb.threshold + step);
            if (bhi > blo) {
                const double refined = golden_section_max(
                    [&](double b) {
                        return population_impurity_decrease(f, dist, cell, j, b)
                            .delta;
                    },
                    blo, bhi, 1e-6);
                const double refined_delta =
                    population_impurity_decrease(f, dist, cell, j, refined).delta;
                if (refined_delta > fb.delta) {
                    fb.threshold = refined;
                    fb.delta = refined_delta;
                }
            }
        }

        if (best.feature < 0 || fb.delta > best.delta) {
            best = population_impurity_decrease(f, dist, cell, j, fb.threshold);
        }
    }
    if (best.feature < 0) {
        throw SplitInfeasibleError("no feasible population split in the cell");
    }
    return best;
}

double verify_delta_closed_form(const SignalFunction& f,
                                const ProductDistribution& dist,
                                const Rectangle& cell, int j, double b) {
    const SplitStatistics stats = population_impurity_decrease(f, dist, cell, j, b);
    const CellMoments parent = cell_moments(f, dist, cell);
    const double mass_l = stats.left_weight;
    const double mass_r = stats.right_weight;
    // E(f* 1_{X in A_R}) = mass_R * E(f* | A_R).
    const double uncentered_right = mass_r * stats.right_mean;
    const double gap = uncentered_right - parent.mean * mass_r;
    const double closed = gap * gap * parent.mass / (mass_l * mass_r);
    return std::fabs(stats.delta - closed);
}

double verify_split_lower_bound(const SignalFunction& f,
                                const ProductDistribution& dist,
                                const Rectangle& cell, int grid_size) {
    check_cell(f, dist, cell);
    if (!f.is_additive()) {
        throw ConfigError("the split lower bound applies to additive signals");
    }
    const CellMoments parent = cell_moments(f, dist, cell);
    const double lhs = std::sqrt(
        std::max(0.0, best_population_split(f, dist, cell, grid_size, true).delta));

    CompensatedSum denom;
    for (int k = 0; k < f.dimension(); ++k) {
        const double lo = cell.lower[k];
        const double hi = cell.upper[k];
        const auto& w = dist.marginal(k);
        const double mass_k = w.mass(lo, hi);
        if (mass_k <= kMassFloor) continue;
        auto q = [&, lo, mass_k](double t) {
            const double v = w.mass(lo, t) / mass_k;
            return std::sqrt(std::max(0.0, v * (1.0 - v)));
        };
        std::vector<double> density_cuts;
        for (double e : w.edges()) {
            if (e > lo && e < hi) density_cuts.push_back(e);
        }
        denom.add(weighted_total_variation(f.components()[static_cast<std::size_t>(k)],
                                           lo, hi, q, density_cuts));
    }
    const double d = denom.value();
    const double rhs =
        (d <= 1e-14) ? 0.0 : std::sqrt(parent.mass) * parent.variance / d;
    return lhs - rhs;
}

}  // namespace treelab
