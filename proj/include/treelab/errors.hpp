#pragma once

#include <stdexcept>
#include <string>

namespace treelab {

// Invalid combination of otherwise-valid objects (dimension mismatch,
// mode/signal mismatch, malformed spec file).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A requested split would leave an empty child.
class SplitInfeasibleError : public std::runtime_error {
public:
    explicit SplitInfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// A cell with no samples (empirical) or no mass (population).
class EmptyCellError : public std::runtime_error {
public:
    explicit EmptyCellError(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive integration failed to reach tolerance; carries the best estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, double estimate, double error)
        : std::runtime_error(msg), estimate(estimate), error(error) {}
    double estimate;
    double error;
};

}  // namespace treelab
