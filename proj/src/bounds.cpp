#include "treelab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace treelab {

double phi(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in (0, 1]");
    }
    if (lambda > 1.0 - 1e-12) return 1.0;
    const double l = std::log2(1.0 - lambda);
    return -l / (1.0 - l);
}

double depth_schedule_real(double lambda, long long n) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in (0, 1]");
    }
    if (n < 2) throw std::invalid_argument("schedule requires n >= 2");
    if (lambda > 1.0 - 1e-12) return 0.0;  // denominator diverges in the limit
    const double denom = 1.0 - std::log2(1.0 - lambda);
    return std::log2(static_cast<double>(n)) / denom;
}

int depth_schedule(double lambda, long long n) {
    return static_cast<int>(std::ceil(depth_schedule_real(lambda, n)));
}

RateBound theorem1_rhs(double lambda, double d, double alpha, long long n, int p,
                       double delta, double noise_plus_signal_bound,
                       double var_f, double C) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in (0, 1]");
    }
    if (d < 0 || !(alpha > 0.0) || n < 1 || p < 1 || !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("bound arguments out of range");
    }
    RateBound out;
    const double shrink = 1.0 - lambda / ((1.0 + alpha) * (1.0 + alpha));
    out.bias_term = 2.0 * var_f * std::pow(shrink, d);
    const double np = static_cast<double>(n) * p;
    const double u = noise_plus_signal_bound;
    out.variance_term = C * std::pow(2.0, d) *
                        (d * std::log(np) + std::log(1.0 / delta)) /
                        (alpha * static_cast<double>(n)) * u * u;
    return out;
}

RatePlan::RatePlan(double l) : lambda(l), exponent(phi(l)) {}

}  // namespace treelab
