#include "treelab/rectangle.hpp"

#include "treelab/errors.hpp"

namespace treelab {

Rectangle Rectangle::unit(int p) {
    if (p < 1) throw ConfigError("rectangle dimension must be >= 1");
    Rectangle r;
    r.lower.assign(static_cast<std::size_t>(p), 0.0);
    r.upper.assign(static_cast<std::size_t>(p), 1.0);
    r.lower_open.assign(static_cast<std::size_t>(p), false);
    r.upper_open.assign(static_cast<std::size_t>(p), false);
    return r;
}

Rectangle Rectangle::box(std::vector<double> lower, std::vector<double> upper) {
    if (lower.empty() || lower.size() != upper.size()) {
        throw ConfigError("rectangle bounds must match and be nonempty");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] >= 0.0 && upper[j] <= 1.0 && lower[j] <= upper[j])) {
            throw ConfigError("rectangle must satisfy 0 <= lower <= upper <= 1");
        }
    }
    Rectangle r;
    r.lower_open.assign(lower.size(), false);
    r.upper_open.assign(lower.size(), false);
    r.lower = std::move(lower);
    r.upper = std::move(upper);
    return r;
}

bool Rectangle::contains(const double* u) const {
    for (std::size_t j = 0; j < lower.size(); ++j) {
        const double c = u[j];
        if (lower_open[j] ? !(c > lower[j]) : !(c >= lower[j])) return false;
        if (upper_open[j] ? !(c < upper[j]) : !(c <= upper[j])) return false;
    }
    return true;
}

bool Rectangle::contains(const std::vector<double>& u) const {
    return u.size() == lower.size() && contains(u.data());
}

std::pair<Rectangle, Rectangle> Rectangle::split(int j, double b) const {
    if (j < 0 || j >= dimension()) throw ConfigError("split feature out of range");
    if (!(b > lower[j] && b < upper[j])) {
        throw ConfigError("split threshold must be interior to the cell side");
    }
    Rectangle left = *this;
    Rectangle right = *this;
    left.upper[j] = b;
    left.upper_open[j] = false;
    right.lower[j] = b;
    right.lower_open[j] = true;
    return {left, right};
}

}  // namespace treelab
