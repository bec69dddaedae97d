#pragma once

#include <functional>
#include <vector>

#include "treelab/component.hpp"

namespace treelab {

// Smooth-piece boundaries of g on (a,b): definition breakpoints plus sign
// changes of g' located by a 4096-point scan with bisection bracketing.
std::vector<double> smooth_cut_points(const UnivariateComponent& g, double a,
                                      double b);

// Total variation V_g([a,b]): integral of |g'| over the smooth pieces plus
// the magnitudes of interior jumps.
double total_variation(const UnivariateComponent& g, double a, double b);

// Jump-aware weighted variation: integral of weight(t)|g'(t)| dt plus
// sum of weight(z)|jump(z)| over interior jumps z. Kinks of the weight can
// be passed as extra cut points.
double weighted_total_variation(const UnivariateComponent& g, double a, double b,
                                const std::function<double(double)>& weight,
                                std::vector<double> extra_cuts = {});

}  // namespace treelab
