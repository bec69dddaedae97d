#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace treelab {

// A univariate component function g of an additive signal. Components carry
// the class constants their function family certifies (strongly increasing,
// smooth strongly convex, piecewise, ...) so downstream certificates can read
// them back.
class UnivariateComponent {
public:
    enum class Kind {
        Linear,
        Polynomial,
        StronglyIncreasing,
        SmoothStronglyConvex,
        Piecewise,
        Tabulated,
    };

    static UnivariateComponent linear(double slope, double intercept);
    // Coefficients in ascending degree order.
    static UnivariateComponent polynomial(std::vector<double> coefficients);
    // c1 <= g' <= c2 on [0,1] with c1 > 0; verified on a sample grid.
    static UnivariateComponent strongly_increasing(double c1, double c2,
                                                   UnivariateComponent inner);
    // sigma-strongly-convex and L-smooth on [0,1]; verified on sampled pairs.
    static UnivariateComponent smooth_strongly_convex(double L, double sigma,
                                                      UnivariateComponent inner);
    // breakpoints t_0 < ... < t_r delimit the pieces; gaps must be >= alpha/r,
    // and each piece is expected to satisfy an LRP bound with constant beta.
    static UnivariateComponent piecewise(std::vector<double> breakpoints,
                                         std::vector<UnivariateComponent> pieces,
                                         double alpha, double beta);
    // Piecewise-linear interpolation of (t, value) samples.
    static UnivariateComponent tabulated(std::vector<double> ts,
                                         std::vector<double> values);

    Kind kind() const;
    std::string kind_name() const;

    // Right-continuous evaluation; left_value differs only at jump points.
    double value(double t) const;
    double left_value(double t) const;
    double derivative(double t) const;

    // Evaluation domain. Linear and polynomial kinds extend to all of R.
    double domain_lo() const;
    double domain_hi() const;

    // Safe upper bound on sup |g| over the domain intersected with [0,1].
    double sup_abs_bound() const;

    // Points in the open interval (a,b) where the definition changes
    // (piece boundaries, interpolation knots); integration splits here.
    std::vector<double> interior_breakpoints(double a, double b) const;

    // Discontinuities strictly inside (a,b): (location, signed jump).
    std::vector<std::pair<double, double>> jumps_in(double a, double b) const;

    // Class constants, valid for the matching kind.
    double slope() const;
    double c1() const;
    double c2() const;
    double smooth_L() const;
    double convex_sigma() const;
    double piece_alpha() const;
    double piece_beta() const;
    std::size_t piece_count() const;
    const std::vector<double>& breakpoints() const;
    const std::vector<UnivariateComponent>& pieces() const;
    const std::vector<double>& coefficients() const;

    nlohmann::json to_json() const;
    static UnivariateComponent from_json(const nlohmann::json& j);

private:
    struct Data;
    explicit UnivariateComponent(std::shared_ptr<const Data> data);
    std::shared_ptr<const Data> data_;
};

// h(s) := g(offset + scale * s) expanded in the monomial basis. Only linear
// and polynomial kinds can be composed.
UnivariateComponent compose_affine(const UnivariateComponent& g, double offset,
                                   double scale);

}  // namespace treelab
