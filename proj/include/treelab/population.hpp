#pragma once

#include "treelab/distribution.hpp"
#include "treelab/rectangle.hpp"
#include "treelab/signal.hpp"
#include "treelab/split_stats.hpp"

namespace treelab {

// Conditional moments of f*(X) on a rectangle under the product law.
struct CellMoments {
    double mass = 0.0;      // P(X in A)
    double mean = 0.0;      // E(f*(X) | X in A)
    double variance = 0.0;  // Var(f*(X) | X in A)
    double quad_error = 0.0;
};

// Per-coordinate conditional moments of one component on an interval.
struct CoordinateMoments {
    double mass = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double quad_error = 0.0;
};

CoordinateMoments coordinate_moments(const UnivariateComponent& g,
                                     const MarginalDensity& marginal, double a,
                                     double b);

// Additive signals combine per-coordinate integrals by independence;
// piecewise-constant signals (XOR gate, grids) are integrated exactly.
CellMoments cell_moments(const SignalFunction& f, const ProductDistribution& dist,
                         const Rectangle& cell);

// Population impurity decrease of the split (j, b) on `cell`. Additive
// signals use the separable route (only coordinate j's conditional mean
// moves); piecewise-constant signals use exact child moments.
SplitStatistics population_impurity_decrease(const SignalFunction& f,
                                             const ProductDistribution& dist,
                                             const Rectangle& cell, int j, double b);

// Delta recomputed through the mass-weighted variance decomposition; an
// algebraically independent route used by the identity checks.
double population_delta_variance_route(const SignalFunction& f,
                                       const ProductDistribution& dist,
                                       const Rectangle& cell, int j, double b);

// Grid search over `grid_size` interior thresholds per feature, optionally
// refined by golden-section search to bracket width 1e-6.
SplitStatistics best_population_split(const SignalFunction& f,
                                      const ProductDistribution& dist,
                                      const Rectangle& cell, int grid_size = 512,
                                      bool refine = true);

// |Delta - closed form| where the closed form rewrites Delta through the
// uncentered child expectation; callers assert the residual is small.
double verify_delta_closed_form(const SignalFunction& f,
                                const ProductDistribution& dist,
                                const Rectangle& cell, int j, double b);

// Best-split root gap: sqrt(sup Delta) minus the weighted total-variation
// lower bound. Nonnegative (up to tolerance) for additive signals.
double verify_split_lower_bound(const SignalFunction& f,
                                const ProductDistribution& dist,
                                const Rectangle& cell, int grid_size = 512);

}  // namespace treelab
