#include "treelab/variation.hpp"

#include <algorithm>
#include <cmath>

#include "treelab/quadrature.hpp"

namespace treelab {

std::vector<double> smooth_cut_points(const UnivariateComponent& g, double a,
                                      double b) {
    std::vector<double> cuts = g.interior_breakpoints(a, b);
    std::vector<double> edges = cuts;
    edges.push_back(a);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        if (!(hi > lo)) continue;
        auto roots = find_sign_changes([&](double t) { return g.derivative(t); },
                                       lo, hi);
        cuts.insert(cuts.end(), roots.begin(), roots.end());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

double total_variation(const UnivariateComponent& g, double a, double b) {
    if (!(b > a)) return 0.0;
    const auto cuts = smooth_cut_points(g, a, b);
    const QuadResult q = integrate_split(
        [&](double t) { return std::fabs(g.derivative(t)); }, a, b, cuts,
        {1e-10, 1e-14, 48});
    double tv = q.value;
    for (const auto& [z, jump] : g.jumps_in(a, b)) {
        (void)z;
        tv += std::fabs(jump);
    }
    return tv;
}

double weighted_total_variation(const UnivariateComponent& g, double a, double b,
                                const std::function<double(double)>& weight,
                                std::vector<double> extra_cuts) {
    if (!(b > a)) return 0.0;
    std::vector<double> cuts = smooth_cut_points(g, a, b);
    cuts.insert(cuts.end(), extra_cuts.begin(), extra_cuts.end());
    const QuadResult q = integrate_split(
        [&](double t) { return weight(t) * std::fabs(g.derivative(t)); }, a, b,
        cuts, {1e-10, 1e-14, 48});
    double tv = q.value;
    for (const auto& [z, jump] : g.jumps_in(a, b)) {
        tv += weight(z) * std::fabs(jump);
    }
    return tv;
}

}  // namespace treelab
