#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treelab/component.hpp"

namespace treelab {

// One interval's reverse-Poincare ratio sqrt(T^2 (b-a) / V) where T is the
// total variation of g on [a,b] and V the squared distance to the best
// constant. `unbounded` flags V ~ 0 with T clearly positive.
struct IntervalLrpRatio {
    double ratio = 0.0;
    bool unbounded = false;
    double total_variation = 0.0;
    double variance_integral = 0.0;
};

IntervalLrpRatio interval_lrp_ratio(const UnivariateComponent& g, double a,
                                    double b);

struct IntervalFamily {
    static IntervalFamily grid(int k);
    static IntervalFamily random(int count, std::uint64_t seed);
    // All (i/k, j/k) grid pairs with k = 50 plus 200 random intervals.
    static IntervalFamily default_family(std::uint64_t seed = 9157);

    std::vector<std::pair<double, double>> generate(double lo, double hi) const;
    std::string describe() const;

    int k = 0;
    int random_count = 0;
    std::uint64_t seed = 0;
};

struct LrpCertificate {
    double tau_measured = 0.0;  // max ratio over the family: a lower bound
    std::optional<double> tau_closed_form;
    std::pair<double, double> worst_interval{0.0, 0.0};
    std::string family_desc;
    bool unbounded_failure = false;
    bool valid = false;  // closed form (when present) holds and no unbounded flag

    nlohmann::json to_json(const UnivariateComponent& g) const;
};

// tau_measured maximized over the family; closed-form constants filled per
// function class (strongly increasing, smooth strongly convex). Polynomials
// report a measured value only.
LrpCertificate certify_lrp(const UnivariateComponent& g, double domain_lo,
                           double domain_hi, const IntervalFamily& family);

// Weighted inequality machinery: LHS = (integral of sqrt(q(1-q)) dV_g)^2
// against RHS = tau^2/(b-a) * inf_w integral (g-w)^2.
double weighted_lrp_slack(const UnivariateComponent& g, double a, double b,
                          const std::function<double(double)>& q,
                          double tau_squared);
// Smallest tau^2 making the weighted inequality hold on [a,b].
double weighted_lrp_min_tau_squared(const UnivariateComponent& g, double a,
                                    double b,
                                    const std::function<double(double)>& q);

// lambda = 4 theta_lower / (p tau^2 theta_upper), clamped into (0, 1].
double sid_from_additive_lrp(const std::vector<double>& taus, int p,
                             double theta_lower, double theta_upper);

// lambda = theta_lower / (p theta_upper tau^2) with
// tau^2 = max{2 r theta_upper/theta_lower, r^2/(2 alpha)} max{9 beta^2, 32 + beta^2}.
double sid_from_piecewise_lrp(int r, double alpha, double beta, int p,
                              double theta_lower, double theta_upper);

// For h with a single dominant jump at c: inf_w integral (h-w)^2 minus
// min{c-a, b-c} (jump)^2 / 16. Rejects inputs violating the jump hypothesis.
double jump_lemma_check(const UnivariateComponent& h, double a, double c,
                        double b);

}  // namespace treelab
