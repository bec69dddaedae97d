#include "treelab/lrp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "treelab/errors.hpp"
#include "treelab/prng.hpp"
#include "treelab/quadrature.hpp"
#include "treelab/variation.hpp"

namespace treelab {

namespace {

constexpr double kVarianceFloor = 1e-14;
constexpr double kVariationFloor = 1e-7;

// inf over constants w of the squared distance, attained at the mean.
double centered_square_integral(const UnivariateComponent& g, double a, double b) {
    std::vector<double> cuts = g.interior_breakpoints(a, b);
    const double mean =
        integrate_split([&](double t) { return g.value(t); }, a, b, cuts).value /
        (b - a);
    return integrate_split(
               [&](double t) {
                   const double d = g.value(t) - mean;
                   return d * d;
               },
               a, b, cuts)
        .value;
}

}  // namespace

IntervalLrpRatio interval_lrp_ratio(const UnivariateComponent& g, double a,
                                    double b) {
    if (!(a < b)) throw std::invalid_argument("interval requires a < b");
    if (a < g.domain_lo() || b > g.domain_hi()) {
        throw std::domain_error("interval leaves the component domain");
    }
    IntervalLrpRatio out;
    out.total_variation = total_variation(g, a, b);
    out.variance_integral = centered_square_integral(g, a, b);
    if (out.variance_integral <= kVarianceFloor) {
        if (out.total_variation > kVariationFloor) {
            out.unbounded = true;
        }
        return out;
    }
    out.ratio = out.total_variation * std::sqrt((b - a) / out.variance_integral);
    return out;
}

IntervalFamily IntervalFamily::grid(int k) {
    if (k < 1) throw std::invalid_argument("grid family needs k >= 1");
    IntervalFamily f;
    f.k = k;
    return f;
}

IntervalFamily IntervalFamily::random(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("random family needs count >= 1");
    IntervalFamily f;
    f.random_count = count;
    f.seed = seed;
    return f;
}

IntervalFamily IntervalFamily::default_family(std::uint64_t seed) {
    IntervalFamily f;
    f.k = 50;
    f.random_count = 200;
    f.seed = seed;
    return f;
}

std::vector<std::pair<double, double>> IntervalFamily::generate(double lo,
                                                                double hi) const {
    if (!(lo < hi)) throw std::invalid_argument("domain requires lo < hi");
    std::vector<std::pair<double, double>> out;
    const double width = hi - lo;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            out.emplace_back(lo + width * i / k, lo + width * j / k);
        }
    }
    if (random_count > 0) {
        constexpr double kMinWidth = 1e-3;
        SplitMix64 rng(seed);
        for (int c = 0; c < random_count; ++c) {
            double a = rng.next_double();
            double b = rng.next_double();
            if (a > b) std::swap(a, b);
            if (b - a < kMinWidth) b = std::min(1.0, a + kMinWidth);
            if (b - a < kMinWidth) a = b - kMinWidth;
            out.emplace_back(lo + width * a, lo + width * b);
        }
    }
    return out;
}

std::string IntervalFamily::describe() const {
    std::string s;
    if (k > 0) s += "grid(k=" + std::to_string(k) + ")";
    if (random_count > 0) {
        if (!s.empty()) s += "+";
        s += "random(count=" + std::to_string(random_count) +
             ", seed=" + std::to_string(seed) + ")";
    }
    return s;
}

namespace {

std::optional<double> closed_form_tau(const UnivariateComponent& g) {
    using Kind = UnivariateComponent::Kind;
    switch (g.kind()) {
        case Kind::Linear:
            return g.slope() == 0.0 ? 0.0 : 2.0 * std::sqrt(3.0);
        case Kind::StronglyIncreasing:
            return 2.0 * std::sqrt(3.0) * g.c2() / g.c1();
        case Kind::SmoothStronglyConvex:
            return 110.0 * g.smooth_L() / g.convex_sigma();
        default:
            return std::nullopt;
    }
}

}  // namespace

LrpCertificate certify_lrp(const UnivariateComponent& g, double domain_lo,
                           double domain_hi, const IntervalFamily& family) {
    LrpCertificate cert;
    cert.family_desc = family.describe();
    cert.tau_closed_form = closed_form_tau(g);
    for (const auto& [a, b] : family.generate(domain_lo, domain_hi)) {
        const IntervalLrpRatio r = interval_lrp_ratio(g, a, b);
        if (r.unbounded) {
            cert.unbounded_failure = true;
            cert.worst_interval = {a, b};
            break;
        }
        if (r.ratio > cert.tau_measured) {
            cert.tau_measured = r.ratio;
            cert.worst_interval = {a, b};
        }
    }
    cert.valid = !cert.unbounded_failure &&
                 (!cert.tau_closed_form.has_value() ||
                  cert.tau_measured <= *cert.tau_closed_form + 1e-6);
    return cert;
}

nlohmann::json LrpCertificate::to_json(const UnivariateComponent& g) const {
    nlohmann::json j;
    j["component"] = g.to_json();
    j["tau_measured"] = tau_measured;
    j["tau_measured_note"] =
        "maximum over a finite interval family; a lower bound on the true "
        "supremum";
    if (tau_closed_form.has_value()) {
        j["tau_closed_form"] = *tau_closed_form;
    } else {
        j["tau_closed_form"] = nullptr;
    }
    j["worst_interval"] = {worst_interval.first, worst_interval.second};
    j["family"] = family_desc;
    j["unbounded_failure"] = unbounded_failure;
    j["valid"] = valid;
    return j;
}

double weighted_lrp_slack(const UnivariateComponent& g, double a, double b,
                          const std::function<double(double)>& q,
                          double tau_squared) {
    if (!(a < b)) throw std::invalid_argument("interval requires a < b");
    const double lhs_root = weighted_total_variation(
        g, a, b, [&](double t) {
            const double v = q(t);
            return std::sqrt(std::max(0.0, v * (1.0 - v)));
        });
    const double v = centered_square_integral(g, a, b);
    return tau_squared / (b - a) * v - lhs_root * lhs_root;
}

double weighted_lrp_min_tau_squared(const UnivariateComponent& g, double a,
                                    double b,
                                    const std::function<double(double)>& q) {
    const double lhs_root = weighted_total_variation(
        g, a, b, [&](double t) {
            const double v = q(t);
            return std::sqrt(std::max(0.0, v * (1.0 - v)));
        });
    const double lhs = lhs_root * lhs_root;
    const double v = centered_square_integral(g, a, b);
    if (v <= kVarianceFloor) {
        return lhs <= kVariationFloor * kVariationFloor
                   ? 0.0
                   : std::numeric_limits<double>::infinity();
    }
    return lhs * (b - a) / v;
}

double sid_from_additive_lrp(const std::vector<double>& taus, int p,
                             double theta_lower, double theta_upper) {
    if (taus.empty() || p < 1) {
        throw std::invalid_argument("need per-component taus and p >= 1");
    }
    if (!(theta_lower > 0.0) || !(theta_upper >= theta_lower)) {
        throw std::invalid_argument("density bounds must satisfy 0 < lower <= upper");
    }
    double tau = 0.0;
    for (double t : taus) {
        if (!(t > 0.0)) throw std::invalid_argument("taus must be positive");
        tau = std::max(tau, t);
    }
    const double lambda = 4.0 * theta_lower / (p * tau * tau * theta_upper);
    return std::min(lambda, 1.0);
}

double sid_from_piecewise_lrp(int r, double alpha, double beta, int p,
                              double theta_lower, double theta_upper) {
    if (r < 1 || !(alpha > 0.0) || !(beta >= 1.0) || p < 1) {
        throw std::invalid_argument("require r >= 1, alpha > 0, beta >= 1, p >= 1");
    }
    if (!(theta_lower > 0.0) || !(theta_upper >= theta_lower)) {
        throw std::invalid_argument("density bounds must satisfy 0 < lower <= upper");
    }
    const double rr = static_cast<double>(r);
    const double tau_sq = std::max(2.0 * rr * theta_upper / theta_lower,
                                   rr * rr / (2.0 * alpha)) *
                          std::max(9.0 * beta * beta, 32.0 + beta * beta);
    return theta_lower / (p * theta_upper * tau_sq);
}

double jump_lemma_check(const UnivariateComponent& h, double a, double c,
                        double b) {
    if (!(a < c && c < b)) throw std::invalid_argument("require a < c < b");
    const double jump = h.value(c) - h.left_value(c);
    if (jump == 0.0) {
        throw std::invalid_argument("no jump at c: the lemma hypothesis fails");
    }
    if (!h.jumps_in(a, c).empty() || !h.jumps_in(c, b).empty()) {
        throw std::invalid_argument("h must be differentiable away from c");
    }
    const double tv_left = total_variation(h, a, c);
    const double tv_right = total_variation(h, c, b);
    if (!(std::fabs(jump) > 4.0 * std::max(tv_left, tv_right))) {
        throw std::invalid_argument(
            "jump does not dominate the side variations: hypothesis fails");
    }
    const double inf_sq = centered_square_integral(h, a, b);
    const double bound = std::min(c - a, b - c) * jump * jump / 16.0;
    return inf_sq - bound;
}

}  // namespace treelab
