#include "treelab/component.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "treelab/errors.hpp"

namespace treelab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double poly_eval(const std::vector<double>& coeffs, double t) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
    std::vector<double> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        d.push_back(coeffs[i] * static_cast<double>(i));
    }
    if (d.empty()) d.push_back(0.0);
    return d;
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw ConfigError(std::string(what) + " must be finite");
}
}  // namespace

struct UnivariateComponent::Data {
    Kind kind;
    // Linear
    double slope = 0.0, intercept = 0.0;
    // Polynomial
    std::vector<double> coeffs, dcoeffs;
    // Wrapped kinds
    double c1 = 0.0, c2 = 0.0;
    double L = 0.0, sigma = 0.0;
    std::shared_ptr<const Data> inner;
    // Piecewise
    std::vector<double> breaks;
    std::vector<UnivariateComponent> pieces;
    double alpha = 0.0, beta = 0.0;
    // Tabulated
    std::vector<double> ts, vs;

    double value(double t) const {
        switch (kind) {
            case Kind::Linear:
                return slope * t + intercept;
            case Kind::Polynomial:
                return poly_eval(coeffs, t);
            case Kind::StronglyIncreasing:
            case Kind::SmoothStronglyConvex:
                return inner->value(t);
            case Kind::Piecewise:
                return pieces[piece_index(t)].value(t);
            case Kind::Tabulated:
                return interp(t);
        }
        return 0.0;
    }

    double left_value(double t) const {
        if (kind == Kind::Piecewise) {
            std::size_t i = piece_index(t);
            if (i > 0 && t == breaks[i]) return pieces[i - 1].value(t);
            return pieces[i].value(t);
        }
        return value(t);
    }

    double derivative(double t) const {
        switch (kind) {
            case Kind::Linear:
                return slope;
            case Kind::Polynomial:
                return poly_eval(dcoeffs, t);
            case Kind::StronglyIncreasing:
            case Kind::SmoothStronglyConvex:
                return inner->derivative(t);
            case Kind::Piecewise:
                return pieces[piece_index(t)].derivative(t);
            case Kind::Tabulated: {
                std::size_t i = segment_index(t);
                return (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]);
            }
        }
        return 0.0;
    }

    std::size_t piece_index(double t) const {
        // Right-continuous: breakpoint t_j belongs to piece j.
        auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
        std::size_t i = static_cast<std::size_t>(it - breaks.begin());
        if (i == 0) return 0;
        if (i > pieces.size()) return pieces.size() - 1;
        return i - 1;
    }

    std::size_t segment_index(double t) const {
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        std::size_t i = static_cast<std::size_t>(it - ts.begin());
        if (i == 0) return 0;
        if (i >= ts.size()) return ts.size() - 2;
        return i - 1;
    }

    double interp(double t) const {
        std::size_t i = segment_index(t);
        const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
        return vs[i] + w * (vs[i + 1] - vs[i]);
    }
};

UnivariateComponent::UnivariateComponent(std::shared_ptr<const Data> data)
    : data_(std::move(data)) {}

UnivariateComponent UnivariateComponent::linear(double slope, double intercept) {
    require_finite(slope, "slope");
    require_finite(intercept, "intercept");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Linear;
    d->slope = slope;
    d->intercept = intercept;
    return UnivariateComponent(d);
}

UnivariateComponent UnivariateComponent::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty()) throw ConfigError("polynomial needs coefficients");
    for (double c : coefficients) require_finite(c, "coefficient");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Polynomial;
    d->coeffs = std::move(coefficients);
    d->dcoeffs = poly_derivative(d->coeffs);
    return UnivariateComponent(d);
}

UnivariateComponent UnivariateComponent::strongly_increasing(double c1, double c2,
                                                             UnivariateComponent inner) {
    if (!(c1 > 0.0) || !(c2 >= c1)) {
        throw ConfigError("strongly increasing requires 0 < c1 <= c2");
    }
    if (inner.kind() == Kind::Piecewise) {
        throw ConfigError("strongly increasing inner must be differentiable");
    }
    const int samples = 2048;
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        const double dg = inner.derivative(t);
        if (dg < c1 - 1e-9 || dg > c2 + 1e-9) {
            throw ConfigError("sampled derivative leaves [c1, c2] at t=" +
                              std::to_string(t));
        }
    }
    auto d = std::make_shared<Data>();
    d->kind = Kind::StronglyIncreasing;
    d->c1 = c1;
    d->c2 = c2;
    d->inner = inner.data_;
    return UnivariateComponent(d);
}

UnivariateComponent UnivariateComponent::smooth_strongly_convex(double L, double sigma,
                                                                UnivariateComponent inner) {
    if (!(sigma > 0.0) || !(L >= sigma)) {
        throw ConfigError("smooth strongly convex requires 0 < sigma <= L");
    }
    if (inner.kind() == Kind::Piecewise || inner.kind() == Kind::Tabulated) {
        throw ConfigError("smooth strongly convex inner must be differentiable");
    }
    const int grid = 64;
    for (int i = 0; i <= grid; ++i) {
        const double s = static_cast<double>(i) / grid;
        const double gs = inner.value(s);
        const double dgs = inner.derivative(s);
        for (int j = 0; j <= grid; ++j) {
            const double t = static_cast<double>(j) / grid;
            const double gap = inner.value(t) - gs - dgs * (t - s);
            const double sq = (t - s) * (t - s);
            if (gap < 0.5 * sigma * sq - 1e-9 || gap > 0.5 * L * sq + 1e-9) {
                throw ConfigError("sampled pair violates the (L, sigma) bracket");
            }
        }
    }
    auto d = std::make_shared<Data>();
    d->kind = Kind::SmoothStronglyConvex;
    d->L = L;
    d->sigma = sigma;
    d->inner = inner.data_;
    return UnivariateComponent(d);
}

UnivariateComponent UnivariateComponent::piecewise(std::vector<double> breakpoints,
                                                   std::vector<UnivariateComponent> pieces,
                                                   double alpha, double beta) {
    if (pieces.empty() || breakpoints.size() != pieces.size() + 1) {
        throw ConfigError("piecewise requires r pieces and r+1 breakpoints");
    }
    if (!(alpha > 0.0)) throw ConfigError("piecewise alpha must be positive");
    const double r = static_cast<double>(pieces.size());
    for (std::size_t j = 1; j < breakpoints.size(); ++j) {
        const double gap = breakpoints[j] - breakpoints[j - 1];
        if (!(gap > 0.0)) throw ConfigError("breakpoints must strictly increase");
        if (gap < alpha / r - 1e-12) {
            throw ConfigError("breakpoint gap below alpha/r");
        }
    }
    auto d = std::make_shared<Data>();
    d->kind = Kind::Piecewise;
    d->breaks = std::move(breakpoints);
    d->pieces = std::move(pieces);
    d->alpha = alpha;
    d->beta = beta;
    return UnivariateComponent(d);
}

UnivariateComponent UnivariateComponent::tabulated(std::vector<double> ts,
                                                   std::vector<double> values) {
    if (ts.size() < 2 || ts.size() != values.size()) {
        throw ConfigError("tabulated requires matching sample arrays, size >= 2");
    }
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (!(ts[i] > ts[i - 1])) throw ConfigError("tabulated knots must increase");
    }
    auto d = std::make_shared<Data>();
    d->kind = Kind::Tabulated;
    d->ts = std::move(ts);
    d->vs = std::move(values);
    return UnivariateComponent(d);
}

UnivariateComponent::Kind UnivariateComponent::kind() const { return data_->kind; }

std::string UnivariateComponent::kind_name() const {
    switch (data_->kind) {
        case Kind::Linear: return "linear";
        case Kind::Polynomial: return "polynomial";
        case Kind::StronglyIncreasing: return "strongly_increasing";
        case Kind::SmoothStronglyConvex: return "smooth_strongly_convex";
        case Kind::Piecewise: return "piecewise";
        case Kind::Tabulated: return "tabulated";
    }
    return "?";
}

double UnivariateComponent::value(double t) const { return data_->value(t); }
double UnivariateComponent::left_value(double t) const { return data_->left_value(t); }
double UnivariateComponent::derivative(double t) const { return data_->derivative(t); }

double UnivariateComponent::domain_lo() const {
    switch (data_->kind) {
        case Kind::Linear:
        case Kind::Polynomial: return -kInf;
        case Kind::Piecewise: return data_->breaks.front();
        case Kind::Tabulated: return data_->ts.front();
        default: return 0.0;
    }
}

double UnivariateComponent::domain_hi() const {
    switch (data_->kind) {
        case Kind::Linear:
        case Kind::Polynomial: return kInf;
        case Kind::Piecewise: return data_->breaks.back();
        case Kind::Tabulated: return data_->ts.back();
        default: return 1.0;
    }
}

double UnivariateComponent::sup_abs_bound() const {
    switch (data_->kind) {
        case Kind::Linear:
            return std::fabs(data_->intercept) + std::fabs(data_->slope);
        case Kind::Polynomial: {
            double s = 0.0;
            for (double c : data_->coeffs) s += std::fabs(c);
            return s;
        }
        case Kind::StronglyIncreasing:
        case Kind::SmoothStronglyConvex:
            return UnivariateComponent(data_->inner).sup_abs_bound();
        case Kind::Piecewise: {
            double s = 0.0;
            for (const auto& p : data_->pieces) s = std::max(s, p.sup_abs_bound());
            return s;
        }
        case Kind::Tabulated: {
            double s = 0.0;
            for (double v : data_->vs) s = std::max(s, std::fabs(v));
            return s;
        }
    }
    return 0.0;
}

std::vector<double> UnivariateComponent::interior_breakpoints(double a, double b) const {
    std::vector<double> out;
    const std::vector<double>* pts = nullptr;
    if (data_->kind == Kind::Piecewise) pts = &data_->breaks;
    if (data_->kind == Kind::Tabulated) pts = &data_->ts;
    if (data_->kind == Kind::StronglyIncreasing ||
        data_->kind == Kind::SmoothStronglyConvex) {
        return UnivariateComponent(data_->inner).interior_breakpoints(a, b);
    }
    if (pts == nullptr) return out;
    for (double t : *pts) {
        if (t > a && t < b) out.push_back(t);
    }
    return out;
}

std::vector<std::pair<double, double>> UnivariateComponent::jumps_in(double a,
                                                                     double b) const {
    std::vector<std::pair<double, double>> out;
    if (data_->kind != Kind::Piecewise) return out;
    for (std::size_t j = 1; j + 1 <= data_->pieces.size(); ++j) {
        const double t = data_->breaks[j];
        if (!(t > a && t < b)) continue;
        const double jump = data_->pieces[j].value(t) - data_->pieces[j - 1].value(t);
        if (jump != 0.0) out.emplace_back(t, jump);
    }
    return out;
}

double UnivariateComponent::slope() const { return data_->slope; }
double UnivariateComponent::c1() const { return data_->c1; }
double UnivariateComponent::c2() const { return data_->c2; }
double UnivariateComponent::smooth_L() const { return data_->L; }
double UnivariateComponent::convex_sigma() const { return data_->sigma; }
double UnivariateComponent::piece_alpha() const { return data_->alpha; }
double UnivariateComponent::piece_beta() const { return data_->beta; }
std::size_t UnivariateComponent::piece_count() const { return data_->pieces.size(); }

const std::vector<double>& UnivariateComponent::breakpoints() const {
    return data_->breaks;
}
const std::vector<UnivariateComponent>& UnivariateComponent::pieces() const {
    return data_->pieces;
}
const std::vector<double>& UnivariateComponent::coefficients() const {
    return data_->coeffs;
}

nlohmann::json UnivariateComponent::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name();
    switch (data_->kind) {
        case Kind::Linear:
            j["slope"] = data_->slope;
            j["intercept"] = data_->intercept;
            break;
        case Kind::Polynomial:
            j["coefficients"] = data_->coeffs;
            break;
        case Kind::StronglyIncreasing:
            j["c1"] = data_->c1;
            j["c2"] = data_->c2;
            j["inner"] = UnivariateComponent(data_->inner).to_json();
            break;
        case Kind::SmoothStronglyConvex:
            j["L"] = data_->L;
            j["sigma"] = data_->sigma;
            j["inner"] = UnivariateComponent(data_->inner).to_json();
            break;
        case Kind::Piecewise: {
            j["breakpoints"] = data_->breaks;
            j["alpha"] = data_->alpha;
            j["beta"] = data_->beta;
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& p : data_->pieces) arr.push_back(p.to_json());
            j["pieces"] = std::move(arr);
            break;
        }
        case Kind::Tabulated:
            j["ts"] = data_->ts;
            j["values"] = data_->vs;
            break;
    }
    return j;
}

UnivariateComponent UnivariateComponent::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") {
        return linear(j.at("slope").get<double>(), j.value("intercept", 0.0));
    }
    if (kind == "polynomial") {
        return polynomial(j.at("coefficients").get<std::vector<double>>());
    }
    if (kind == "strongly_increasing") {
        return strongly_increasing(j.at("c1").get<double>(), j.at("c2").get<double>(),
                                   from_json(j.at("inner")));
    }
    if (kind == "smooth_strongly_convex") {
        return smooth_strongly_convex(j.at("L").get<double>(),
                                      j.at("sigma").get<double>(),
                                      from_json(j.at("inner")));
    }
    if (kind == "piecewise") {
        std::vector<UnivariateComponent> pieces;
        for (const auto& p : j.at("pieces")) pieces.push_back(from_json(p));
        return piecewise(j.at("breakpoints").get<std::vector<double>>(),
                         std::move(pieces), j.at("alpha").get<double>(),
                         j.at("beta").get<double>());
    }
    if (kind == "tabulated") {
        return tabulated(j.at("ts").get<std::vector<double>>(),
                         j.at("values").get<std::vector<double>>());
    }
    throw ConfigError("unknown component kind: " + kind);
}

UnivariateComponent compose_affine(const UnivariateComponent& g, double offset,
                                   double scale) {
    std::vector<double> coeffs;
    if (g.kind() == UnivariateComponent::Kind::Linear) {
        coeffs = {g.value(0.0), g.slope()};
    } else if (g.kind() == UnivariateComponent::Kind::Polynomial) {
        coeffs = g.coefficients();
    } else {
        throw ConfigError("affine composition needs a polynomial component");
    }
    // Horner in the polynomial ring: result(s) = result(s)*(offset+scale*s)+c.
    std::vector<double> result = {0.0};
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        std::vector<double> next(result.size() + 1, 0.0);
        for (std::size_t k = 0; k < result.size(); ++k) {
            next[k] += result[k] * offset;
            next[k + 1] += result[k] * scale;
        }
        next[0] += coeffs[i];
        while (next.size() > 1 && next.back() == 0.0) next.pop_back();
        result = std::move(next);
    }
    return UnivariateComponent::polynomial(std::move(result));
}

}  // namespace treelab
