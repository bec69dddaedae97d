#pragma once

namespace treelab {

// A (feature, threshold) candidate with its impurity decrease and child
// summaries. Weights are sample counts for empirical splits and cell masses
// for population splits.
struct SplitStatistics {
    int feature = -1;
    double threshold = 0.0;
    double delta = 0.0;
    double left_weight = 0.0;
    double right_weight = 0.0;
    double left_mean = 0.0;
    double right_mean = 0.0;
};

}  // namespace treelab
