#include "contrast/hausdorff.hpp"

#include <algorithm>
#include <cmath>

namespace contrast {

namespace {

// directed distance for sorted inputs: advance a single pointer into y
double directed_sorted(const std::vector<double>& xs, const std::vector<double>& ys) {
    double worst = 0.0;
    std::size_t j = 0;
    for (double x : xs) {
        while (j + 1 < ys.size() && std::abs(ys[j + 1] - x) <= std::abs(ys[j] - x)) ++j;
        worst = std::max(worst, std::abs(ys[j] - x));
    }
    return worst;
}

std::vector<double> sorted(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

double directed_hausdorff(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw EmptySetError("hausdorff: nonempty sets required");
    return directed_sorted(sorted(x), sorted(y));
}

double hausdorff(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw EmptySetError("hausdorff: nonempty sets required");
    const auto xs = sorted(x);
    const auto ys = sorted(y);
    return std::max(directed_sorted(xs, ys), directed_sorted(ys, xs));
}

}  // namespace contrast
