#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace contrast {

struct EmptySetError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Hausdorff distance between two finite nonempty sets,
/// max(sup_x dist(x, Y), sup_y dist(y, X)); exact two-pointer scan after sorting.
double hausdorff(std::span<const double> x, std::span<const double> y);

/// sup over x in X of dist(x, Y); X, Y nonempty.
double directed_hausdorff(std::span<const double> x, std::span<const double> y);

}  // namespace contrast
