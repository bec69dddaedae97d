#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "treelab/errors.hpp"

namespace treelab {

// 15-point Gauss-Legendre rule on [-1,1]; exact for polynomials of degree 29.
struct GaussRule {
    double nodes[15];
    double weights[15];
};

const GaussRule& gauss15_rule();

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // accumulated bisection error estimate
};

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_depth = 48;
};

template <class F>
double gauss15(const F& f, double a, double b) {
    const GaussRule& rule = gauss15_rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 15; ++i) {
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return acc * half;
}

namespace detail {

template <class F>
void adapt_gauss(const F& f, double a, double b, double coarse, double tol,
                 int depth, int max_depth, QuadResult& out) {
    const double mid = 0.5 * (a + b);
    const double left = gauss15(f, a, mid);
    const double right = gauss15(f, mid, b);
    const double refined = left + right;
    const double diff = std::fabs(refined - coarse);
    if (diff <= tol || depth >= max_depth) {
        out.value += refined;
        out.error += diff;
        return;
    }
    adapt_gauss(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, out);
    adapt_gauss(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace detail

// Adaptive Gauss-Legendre with interval bisection. Throws QuadratureError
// (estimate attached) when the accumulated error estimate grossly exceeds
// the requested tolerance; endpoint square-root behavior converges well
// within the depth limit.
template <class F>
QuadResult integrate(const F& f, double a, double b, QuadOptions opt = {}) {
    QuadResult out;
    if (!(a < b)) return out;
    const double coarse = gauss15(f, a, b);
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::fabs(coarse));
    detail::adapt_gauss(f, a, b, coarse, tol, 0, opt.max_depth, out);
    const double allowed =
        std::max(opt.abs_tol, opt.rel_tol * std::fabs(out.value));
    if (out.error > 100.0 * allowed + 1e-300) {
        throw QuadratureError("adaptive quadrature did not reach tolerance",
                              out.value, out.error);
    }
    return out;
}

// Integrate with mandatory interior cut points (density edges, piece
// boundaries, derivative sign changes). Cuts outside (a,b) are ignored.
template <class F>
QuadResult integrate_split(const F& f, double a, double b,
                           std::vector<double> cuts, QuadOptions opt = {}) {
    QuadResult out;
    if (!(a < b)) return out;
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double prev = a;
    for (double c : cuts) {
        if (c <= prev || c > b) continue;
        QuadResult seg = integrate(f, prev, std::min(c, b), opt);
        out.value += seg.value;
        out.error += seg.error;
        prev = c;
    }
    if (prev < b) {
        QuadResult seg = integrate(f, prev, b, opt);
        out.value += seg.value;
        out.error += seg.error;
    }
    return out;
}

// Interior roots of f on [a,b], located by scanning scan_points panels and
// bisecting every sign-change bracket. Exact zeros at scan nodes count too.
template <class F>
std::vector<double> find_sign_changes(const F& f, double a, double b,
                                      int scan_points = 4096) {
    std::vector<double> roots;
    if (!(a < b) || scan_points < 2) return roots;
    const double step = (b - a) / scan_points;
    double t_prev = a;
    double f_prev = f(a);
    for (int i = 1; i <= scan_points; ++i) {
        const double t = (i == scan_points) ? b : a + i * step;
        const double ft = f(t);
        if (f_prev == 0.0) {
            if (t_prev > a) roots.push_back(t_prev);
        } else if (ft != 0.0 && std::signbit(ft) != std::signbit(f_prev)) {
            double lo = t_prev, hi = t, flo = f_prev;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (lo + hi);
                const double fm = f(m);
                if (fm == 0.0) {
                    lo = hi = m;
                    break;
                }
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = m;
                    flo = fm;
                } else {
                    hi = m;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        t_prev = t;
        f_prev = ft;
    }
    return roots;
}

// Golden-section maximization of f on [lo, hi] down to bracket width `width`.
template <class F>
double golden_section_max(const F& f, double lo, double hi, double width) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > width) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace treelab
