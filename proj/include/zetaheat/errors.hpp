#pragma once

#include <stdexcept>
#include <string>

namespace zetaheat {

// Gamma (or related function) evaluated at a non-positive integer.
struct pole_error : std::domain_error {
    pole_error(const std::string& what, long index)
        : std::domain_error(what), pole_index(index) {}
    long pole_index;
};

// Requested tolerance not reachable within the evaluation budget.
// Carries the best value obtained so far and its error estimate.
struct budget_error : std::runtime_error {
    budget_error(const std::string& what, double value, double estimate)
        : std::runtime_error(what), best_value(value), error_estimate(estimate) {}
    double best_value;
    double error_estimate;
};

// Series/argument window exceeded; caller must switch representation.
struct window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fit or extrapolation did not reach the required precision.
struct precision_error : std::runtime_error {
    precision_error(const std::string& what, double estimate)
        : std::runtime_error(what), error_estimate(estimate) {}
    double error_estimate;
};

}  // namespace zetaheat
