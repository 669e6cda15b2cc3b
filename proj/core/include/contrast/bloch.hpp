#pragma once

#include <optional>

#include "contrast/fem.hpp"
#include "contrast/limit_spectrum.hpp"

namespace contrast {

/// Floquet bands of the eps-level waveguide operator: per-phi eigenvalue
/// lists on a uniform grid of [0, pi] (the sweep is halved by the
/// lambda_k(phi) = lambda_k(2 pi - phi) symmetry), band hulls and gaps.
struct BandStructure {
    std::vector<double> phi_grid;
    std::vector<std::vector<double>> values;  // values[i][k-1], ascending in k
    std::vector<Interval> bands;              // refined hull of band k
    std::vector<Interval> gaps;               // between merged band unions
};

struct SweepOptions {
    int shell_layers = 2;
    double solver_tol = 1e-9;
    std::uint64_t seed = 12345;
};

BandStructure sweep(const ModelParams& p, double eps, double h, int phi_count, int k,
                    const SweepOptions& opts = {});

/// Maximal open intervals inside the window not covered by any band; the
/// endpoints are band edges.
std::vector<Interval> gap_report(const BandStructure& bands, Interval window);

struct LimitComparison {
    std::optional<double> hausdorff_distance;  // between interval unions in the window
    double delta_alpha1 = 0.0;                 // |min band_1 - alpha(mu_1)|
    std::optional<double> delta_q;             // |eps gap lo - q|
    std::optional<double> delta_alpha2;        // |eps gap hi - alpha(mu_2)|
    std::optional<Interval> eps_gap;
    std::optional<Interval> limit_gap;
    bool gap_in_window = false;
};

/// Hausdorff distance of the banded eps-spectrum against the limit set
/// [alpha1, q] u [alpha2, inf) inside the window, plus endpoint deltas.
LimitComparison compare_limit(const BandStructure& bands, const WaveguideLimit& limit,
                              Interval window);

/// Exact Hausdorff distance between two finite unions of closed intervals.
double interval_hausdorff(std::vector<Interval> a, std::vector<Interval> b);

}  // namespace contrast
