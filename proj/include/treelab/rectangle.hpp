#pragma once

#include <utility>
#include <vector>

namespace treelab {

// Axis-aligned cell A contained in [0,1]^p. Sides default to closed; a split
// at threshold b produces a right child open at its lower side, so the two
// children partition A under the "left iff u_j <= b" routing rule.
struct Rectangle {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<bool> lower_open;
    std::vector<bool> upper_open;

    static Rectangle unit(int p);
    static Rectangle box(std::vector<double> lower, std::vector<double> upper);

    int dimension() const { return static_cast<int>(lower.size()); }
    double width(int j) const { return upper[j] - lower[j]; }
    bool contains(const std::vector<double>& u) const;
    bool contains(const double* u) const;

    // Children under the split (j, b); b must be interior to side j.
    std::pair<Rectangle, Rectangle> split(int j, double b) const;
};

}  // namespace treelab
