#pragma once

namespace treelab {

// Rate exponent phi(lambda) = -log2(1-lambda) / (1 - log2(1-lambda)) on
// (0, 1]; the lambda -> 1 limit returns 1.
double phi(double lambda);

// d = ceil(log2(n) / (1 - log2(1 - lambda))), the depth that balances the
// geometric bias term against the 2^d variance term.
int depth_schedule(double lambda, long long n);

// The two-term high-probability error bound, evaluated literally. The
// universal constant C is a caller parameter (the analysis never pins it).
// Depth may be real-valued so rate-shape sweeps can follow the un-rounded
// schedule.
struct RateBound {
    double bias_term = 0.0;      // 2 Var(f*) (1 - lambda/(1+alpha)^2)^d
    double variance_term = 0.0;  // C 2^d (d log(np) + log(1/delta)) U^2 / (alpha n)
    double total() const { return bias_term + variance_term; }
};

RateBound theorem1_rhs(double lambda, double d, double alpha, long long n, int p,
                       double delta, double noise_plus_signal_bound,
                       double var_f, double C = 1.0);

// The schedule before rounding: log2(n) / (1 - log2(1 - lambda)).
double depth_schedule_real(double lambda, long long n);

// Bundles the schedule pieces for one lambda.
struct RatePlan {
    explicit RatePlan(double lambda);
    double lambda;
    double exponent;  // phi(lambda)
    int depth_for(long long n) const { return depth_schedule(lambda, n); }
    static double alpha_for(int d) { return d > 0 ? 1.0 / d : 1.0; }
};

}  // namespace treelab
