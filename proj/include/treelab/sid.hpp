#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "treelab/population.hpp"

namespace treelab {

// Families of rectangles over which the SID ratio is minimized. A finite
// family makes the reported coefficient an upper estimate of the true one.
struct CellFamily {
    enum class Kind { IntervalGrid, RandomCells, Dyadic };

    static CellFamily interval_grid(int k);
    static CellFamily random_cells(int count, std::uint64_t seed);
    static CellFamily dyadic(int depth);

    std::vector<Rectangle> generate(int p) const;
    std::string describe() const;

    Kind kind = Kind::IntervalGrid;
    int k = 20;
    int count = 0;
    int depth = 0;
    std::uint64_t seed = 0;
};

struct SidCellRecord {
    Rectangle cell;
    bool skipped = false;  // variance at or below the floor; SID is vacuous
    double ratio = 0.0;
    SplitStatistics best;
};

struct SidReport {
    double lambda_hat = 1.0;  // min of per-cell ratios; upper estimate of lambda
    double worst_ratio = 1.0;
    Rectangle worst_cell;
    std::size_t cells_searched = 0;
    std::size_t cells_skipped = 0;
    std::string family_desc;
    int grid_size = 512;
    double variance_floor = 1e-12;
    std::vector<SidCellRecord> records;

    nlohmann::json to_json() const;
};

// sup_b Delta / (mass * variance) on one cell, clamped to [0, 1 + 1e-9];
// absent when mass*variance is at or below the floor.
std::optional<double> cell_sid_ratio(const SignalFunction& f,
                                     const ProductDistribution& dist,
                                     const Rectangle& cell, int grid_size = 512,
                                     double variance_floor = 1e-12);

SidReport estimate_sid_coefficient(const SignalFunction& f,
                                   const ProductDistribution& dist,
                                   const CellFamily& family, int grid_size = 512,
                                   double variance_floor = 1e-12);

// A valid certificate can never exceed the measured coefficient.
bool check_certified_lambda(const SidReport& report, double certified_lambda);

// Per-cell records: lower/upper bounds, ratio, best split.
void write_sid_csv(const SidReport& report, std::ostream& out);

}  // namespace treelab
