#include "treelab/sid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "treelab/errors.hpp"
#include "treelab/numeric.hpp"
#include "treelab/prng.hpp"

namespace treelab {

CellFamily CellFamily::interval_grid(int k) {
    if (k < 1) throw std::invalid_argument("interval grid needs k >= 1");
    CellFamily f;
    f.kind = Kind::IntervalGrid;
    f.k = k;
    return f;
}

CellFamily CellFamily::random_cells(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("random family needs count >= 1");
    CellFamily f;
    f.kind = Kind::RandomCells;
    f.count = count;
    f.seed = seed;
    return f;
}

CellFamily CellFamily::dyadic(int depth) {
    if (depth < 0) throw std::invalid_argument("dyadic depth must be >= 0");
    CellFamily f;
    f.kind = Kind::Dyadic;
    f.depth = depth;
    return f;
}

namespace {

std::vector<std::pair<double, double>> axis_intervals_grid(int k) {
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            out.emplace_back(static_cast<double>(i) / k, static_cast<double>(j) / k);
        }
    }
    return out;
}

std::vector<std::pair<double, double>> axis_intervals_dyadic(int depth) {
    std::vector<std::pair<double, double>> out;
    for (int level = 0; level <= depth; ++level) {
        const int cells = 1 << level;
        for (int a = 0; a < cells; ++a) {
            out.emplace_back(static_cast<double>(a) / cells,
                             static_cast<double>(a + 1) / cells);
        }
    }
    return out;
}

std::vector<Rectangle> product_cells(
    const std::vector<std::pair<double, double>>& axis, int p) {
    std::vector<Rectangle> cells;
    std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
    while (true) {
        std::vector<double> lo(static_cast<std::size_t>(p));
        std::vector<double> hi(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) {
            lo[static_cast<std::size_t>(j)] = axis[idx[static_cast<std::size_t>(j)]].first;
            hi[static_cast<std::size_t>(j)] = axis[idx[static_cast<std::size_t>(j)]].second;
        }
        cells.push_back(Rectangle::box(std::move(lo), std::move(hi)));
        int j = 0;
        for (; j < p; ++j) {
            auto& i = idx[static_cast<std::size_t>(j)];
            if (++i < axis.size()) break;
            i = 0;
        }
        if (j == p) break;
    }
    return cells;
}

}  // namespace

std::vector<Rectangle> CellFamily::generate(int p) const {
    if (p < 1) throw std::invalid_argument("dimension must be >= 1");
    switch (kind) {
        case Kind::IntervalGrid: {
            if (p > 2) {
                throw std::invalid_argument(
                    "interval grids are limited to p <= 2; use random cells");
            }
            return product_cells(axis_intervals_grid(k), p);
        }
        case Kind::Dyadic:
            return product_cells(axis_intervals_dyadic(depth), p);
        case Kind::RandomCells: {
            constexpr double kMinWidth = 0.05;
            SplitMix64 rng(seed);
            std::vector<Rectangle> cells;
            cells.reserve(static_cast<std::size_t>(count));
            for (int c = 0; c < count; ++c) {
                std::vector<double> lo(static_cast<std::size_t>(p));
                std::vector<double> hi(static_cast<std::size_t>(p));
                for (int j = 0; j < p; ++j) {
                    double a = rng.next_double();
                    double b = rng.next_double();
                    if (a > b) std::swap(a, b);
                    if (b - a < kMinWidth) {
                        const double mid = 0.5 * (a + b);
                        a = std::max(0.0, mid - 0.5 * kMinWidth);
                        b = std::min(1.0, a + kMinWidth);
                        a = b - kMinWidth;
                    }
                    lo[static_cast<std::size_t>(j)] = a;
                    hi[static_cast<std::size_t>(j)] = b;
                }
                cells.push_back(Rectangle::box(std::move(lo), std::move(hi)));
            }
            return cells;
        }
    }
    return {};
}

std::string CellFamily::describe() const {
    switch (kind) {
        case Kind::IntervalGrid:
            return "interval-grid(k=" + std::to_string(k) + ")";
        case Kind::RandomCells:
            return "random-cells(count=" + std::to_string(count) +
                   ", seed=" + std::to_string(seed) + ")";
        case Kind::Dyadic:
            return "dyadic(depth=" + std::to_string(depth) + ")";
    }
    return "?";
}

std::optional<double> cell_sid_ratio(const SignalFunction& f,
                                     const ProductDistribution& dist,
                                     const Rectangle& cell, int grid_size,
                                     double variance_floor) {
    const CellMoments m = cell_moments(f, dist, cell);
    const double denom = m.mass * m.variance;
    if (denom <= variance_floor) return std::nullopt;
    const SplitStatistics best = best_population_split(f, dist, cell, grid_size, true);
    double ratio = best.delta / denom;
    ratio = std::clamp(ratio, 0.0, 1.0 + 1e-9);
    return ratio;
}

SidReport estimate_sid_coefficient(const SignalFunction& f,
                                   const ProductDistribution& dist,
                                   const CellFamily& family, int grid_size,
                                   double variance_floor) {
    const std::vector<Rectangle> cells = family.generate(f.dimension());
    if (cells.empty()) throw std::invalid_argument("empty cell family");

    SidReport report;
    report.family_desc = family.describe();
    report.grid_size = grid_size;
    report.variance_floor = variance_floor;
    report.cells_searched = cells.size();
    report.records.reserve(cells.size());

    bool have_informative = false;
    for (const Rectangle& cell : cells) {
        SidCellRecord rec;
        rec.cell = cell;
        const CellMoments m = cell_moments(f, dist, cell);
        if (m.mass * m.variance <= variance_floor) {
            rec.skipped = true;
            ++report.cells_skipped;
        } else {
            rec.best = best_population_split(f, dist, cell, grid_size, true);
            rec.ratio =
                std::clamp(rec.best.delta / (m.mass * m.variance), 0.0, 1.0 + 1e-9);
            if (!have_informative || rec.ratio < report.worst_ratio) {
                have_informative = true;
                report.worst_ratio = rec.ratio;
                report.worst_cell = cell;
            }
        }
        report.records.push_back(std::move(rec));
    }
    report.lambda_hat = have_informative ? std::min(1.0, report.worst_ratio) : 1.0;
    return report;
}

bool check_certified_lambda(const SidReport& report, double certified_lambda) {
    return certified_lambda <= report.lambda_hat + 1e-6;
}

nlohmann::json SidReport::to_json() const {
    nlohmann::json j;
    j["lambda_hat"] = lambda_hat;
    j["lambda_hat_note"] =
        "minimum over a finite cell family; an upper estimate of the true "
        "SID coefficient";
    j["worst_ratio"] = worst_ratio;
    j["worst_cell_lower"] = worst_cell.lower;
    j["worst_cell_upper"] = worst_cell.upper;
    j["cells_searched"] = cells_searched;
    j["cells_skipped"] = cells_skipped;
    j["family"] = family_desc;
    j["grid_size"] = grid_size;
    j["variance_floor"] = variance_floor;
    return j;
}

void write_sid_csv(const SidReport& report, std::ostream& out) {
    const int p = report.records.empty()
                      ? 0
                      : report.records.front().cell.dimension();
    for (int j = 0; j < p; ++j) {
        out << "lower" << (j + 1) << ",upper" << (j + 1) << ",";
    }
    out << "skipped,ratio,best_feature,best_threshold,best_delta\n";
    for (const auto& rec : report.records) {
        for (int j = 0; j < p; ++j) {
            out << format_full(rec.cell.lower[j]) << ","
                << format_full(rec.cell.upper[j]) << ",";
        }
        if (rec.skipped) {
            out << "1,,,,\n";
        } else {
            out << "0," << format_full(rec.ratio) << "," << (rec.best.feature + 1)
                << "," << format_full(rec.best.threshold) << ","
                << format_full(rec.best.delta) << "\n";
        }
    }
}

}  // namespace treelab
