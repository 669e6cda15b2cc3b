#pragma once

// Test-only oracles. These stay independent of the solver paths they check:
// the transversal problem is rebuilt here as a finite-difference matrix, and
// curve intersections are located by grid scans instead of analytic brackets.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Transversal interface problem on (d_minus, d_plus) with jump parameter mu,
// discretized by second differences on a grid with a node at 0. The jump
// enters as the diagonal surface term -mu at that node. Lumped mass.
// Eigenvalues are found by LDL inertia counts and bisection.
class FdInterfaceOracle {
  public:
    FdInterfaceOracle(double d_minus, double d_plus, double mu, int n_cells) {
        const double a = -d_minus, b = d_plus;
        const int m_left = std::max(2, static_cast<int>(std::lround(n_cells * a / (a + b))));
        const int m_right = std::max(2, n_cells - m_left);
        const double hl = a / m_left;
        const double hr = b / m_right;
        const int n_interior = m_left + m_right - 1;
        diag_.resize(n_interior);
        off_.resize(n_interior - 1);
        mass_.resize(n_interior);
        for (int i = 0; i < n_interior; ++i) {
            const double h_prev = i < m_left ? hl : hr;
            const double h_next = i + 1 < m_left ? hl : hr;
            diag_[i] = 1.0 / h_prev + 1.0 / h_next;
            mass_[i] = 0.5 * (h_prev + h_next);
            if (i + 1 < n_interior) off_[i] = -1.0 / h_next;
        }
        diag_[m_left - 1] -= mu;  // interface node sits at index m_left - 1
        mu_ = mu;
    }

    // number of eigenvalues strictly below lam
    int count_below(double lam) const {
        int count = 0;
        double d_prev = 0.0;
        for (std::size_t i = 0; i < diag_.size(); ++i) {
            double d = diag_[i] - lam * mass_[i];
            if (i > 0) d -= off_[i - 1] * off_[i - 1] / d_prev;
            if (d == 0.0) d = -1e-300;
            if (d < 0.0) ++count;
            d_prev = d;
        }
        return count;
    }

    std::vector<double> smallest(int k) const {
        double lo = -std::pow(std::max(mu_, 0.0) * 0.5 + 1.0, 2) * 1.5 - 10.0;
        while (count_below(lo) > 0) lo = lo * 2.0 - 10.0;
        double hi = 100.0;
        while (count_below(hi) < k) hi *= 2.0;
        std::vector<double> out;
        for (int j = 1; j <= k; ++j) {
            double l = lo, h = hi;
            for (int it = 0; it < 120 && h - l > 1e-11 * (1.0 + std::abs(l) + std::abs(h)); ++it) {
                const double mid = 0.5 * (l + h);
                if (count_below(mid) < j)
                    l = mid;
                else
                    h = mid;
            }
            out.push_back(0.5 * (l + h));
        }
        return out;
    }

  private:
    std::vector<double> diag_, off_, mass_;
    double mu_ = 0.0;
};

// Root of a monotone g over t in (t0, t1) located on a geometric grid of
// `npoints` points: binary search for the sign-change cell, then bisection
// inside the cell. Throws when the ends do not straddle a sign change.
template <class F>
double geometric_scan_root(F&& g, double t0, double t1, long npoints, bool decreasing) {
    const double ratio = std::pow(t1 / t0, 1.0 / static_cast<double>(npoints - 1));
    auto node = [&](long i) { return t0 * std::pow(ratio, static_cast<double>(i)); };
    auto positive = [&](long i) {
        const double v = g(node(i));
        return decreasing ? v > 0.0 : v < 0.0;
    };
    if (!positive(0) || positive(npoints - 1))
        throw std::runtime_error("geometric_scan_root: no sign change across grid");
    long lo = 0, hi = npoints - 1;
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (positive(mid))
            lo = mid;
        else
            hi = mid;
    }
    double a = node(lo), b = node(hi);
    while (b - a > 1e-13 * (1.0 + a + b)) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double v = g(mid);
        const bool pos = decreasing ? v > 0.0 : v < 0.0;
        if (pos)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

// Sign changes of g sampled on an npoints geometric grid over (t0, t1).
template <class F>
int geometric_sign_changes(F&& g, double t0, double t1, int npoints) {
    const double ratio = std::pow(t1 / t0, 1.0 / static_cast<double>(npoints - 1));
    int changes = 0;
    double t = t0;
    double prev = g(t);
    for (int i = 1; i < npoints; ++i) {
        t *= ratio;
        const double cur = g(t);
        if ((prev > 0.0 && cur < 0.0) || (prev < 0.0 && cur > 0.0)) ++changes;
        prev = cur;
    }
    return changes;
}

}  // namespace oracles
