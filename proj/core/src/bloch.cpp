#include "contrast/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace contrast {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Interval> merge_union(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, iv.hi);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

// vertex value of the parabola through three equidistant samples; falls
// back to the middle sample when the fit is degenerate or leaves the stencil
double parabola_extremum(double f0, double f1, double f2) {
    const double curv = f0 - 2.0 * f1 + f2;
    if (curv == 0.0) return f1;
    const double t = -0.5 * (f2 - f0) / curv;
    if (std::abs(t) > 1.0) return f1;
    return f1 - 0.125 * (f2 - f0) * (f2 - f0) / curv;
}

double clip_dist(double x, const std::vector<Interval>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& iv : set) {
        if (x < iv.lo)
            best = std::min(best, iv.lo - x);
        else if (x > iv.hi)
            best = std::min(best, x - iv.hi);
        else
            return 0.0;
    }
    return best;
}

double directed_interval(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    double worst = 0.0;
    for (const auto& iv : a) {
        worst = std::max(worst, clip_dist(iv.lo, b));
        worst = std::max(worst, clip_dist(iv.hi, b));
    }
    // dist(., b) peaks at midpoints of b-gaps; include those covered by a
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const double mid = 0.5 * (b[i].hi + b[i + 1].lo);
        for (const auto& iv : a)
            if (mid >= iv.lo && mid <= iv.hi) {
                worst = std::max(worst, clip_dist(mid, b));
                break;
            }
    }
    return worst;
}

std::vector<Interval> clip_union(const std::vector<Interval>& v, Interval window) {
    std::vector<Interval> out;
    for (const auto& iv : v) {
        const double lo = std::max(iv.lo, window.lo);
        const double hi = std::min(iv.hi, window.hi);
        if (lo <= hi) out.push_back({lo, hi});
    }
    return out;
}

}  // namespace

double interval_hausdorff(std::vector<Interval> a, std::vector<Interval> b) {
    a = merge_union(std::move(a));
    b = merge_union(std::move(b));
    if (a.empty() || b.empty())
        throw std::invalid_argument("interval_hausdorff: nonempty unions required");
    return std::max(directed_interval(a, b), directed_interval(b, a));
}

BandStructure sweep(const ModelParams& p, double eps, double h, int phi_count, int k,
                    const SweepOptions& opts) {
    require_valid(p);
    if (p.domain.kind != DomainKind::Waveguide)
        throw std::invalid_argument("sweep: waveguide domain required");
    if (phi_count < 2) throw std::invalid_argument("sweep: phi_count >= 2 required");
    if (k < 1) throw std::invalid_argument("sweep: k >= 1 required");

    const auto shells = shells_for(p, eps);  // rejects non-integer 1/eps
    const Mesh mesh = build_mesh(p.domain, shells, h, opts.shell_layers);
    const auto base = apply_dirichlet(assemble(mesh, p.alpha_law(eps), p.beta_law(eps)), mesh);

    BandStructure bs;
    bs.phi_grid.resize(phi_count);
    bs.values.resize(phi_count);

    EigOptions eo;
    eo.k = k;
    eo.tol = opts.solver_tol;
    eo.seed = opts.seed;

    Eigen::MatrixXcd warm;
    for (int i = 0; i < phi_count; ++i) {
        const double phi = kPi * i / (phi_count - 1);
        bs.phi_grid[i] = phi;
        const auto sys = apply_floquet(base, mesh, phi);
        if (sys.complex_field) {
            const auto eig = solve_smallest(sys.Kc, sys.Mc, eo, warm.size() ? &warm : nullptr);
            warm = eig.vectors_c;
            bs.values[i] = eig.values;
        } else {
            const auto eig = solve_smallest(sys.K, sys.M, eo);
            warm = eig.vectors.cast<std::complex<double>>();
            bs.values[i] = eig.values;
        }
    }

    // band hulls with a parabolic touch-up of interior extrema
    bs.bands.resize(k);
    for (int band = 0; band < k; ++band) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < phi_count; ++i) {
            const double v = bs.values[i][band];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (int i = 1; i + 1 < phi_count; ++i) {
            const double f0 = bs.values[i - 1][band];
            const double f1 = bs.values[i][band];
            const double f2 = bs.values[i + 1][band];
            if (f1 <= f0 && f1 <= f2) lo = std::min(lo, parabola_extremum(f0, f1, f2));
            if (f1 >= f0 && f1 >= f2) hi = std::max(hi, parabola_extremum(f0, f1, f2));
        }
        bs.bands[band] = {lo, hi};
    }

    const auto merged = merge_union(bs.bands);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i)
        if (merged[i + 1].lo > merged[i].hi) bs.gaps.push_back({merged[i].hi, merged[i + 1].lo});
    return bs;
}

std::vector<Interval> gap_report(const BandStructure& bands, Interval window) {
    const auto merged = merge_union(bands.bands);
    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        const Interval gap{merged[i].hi, merged[i + 1].lo};
        if (gap.hi <= gap.lo) continue;
        if (gap.hi < window.lo || gap.lo > window.hi) continue;
        out.push_back(gap);
    }
    return out;
}

LimitComparison compare_limit(const BandStructure& bands, const WaveguideLimit& limit,
                              Interval window) {
    LimitComparison cmp;

    std::vector<Interval> limit_set{{limit.alpha1, limit.q}};
    if (limit.alpha2)
        limit_set.push_back({*limit.alpha2, window.hi + 1.0});
    else
        limit_set.back().hi = window.hi + 1.0;

    const auto eps_set = clip_union(merge_union(bands.bands), window);
    const auto lim_clipped = clip_union(limit_set, window);
    if (!eps_set.empty() && !lim_clipped.empty())
        cmp.hausdorff_distance = interval_hausdorff(eps_set, lim_clipped);

    cmp.delta_alpha1 = std::abs(bands.bands.front().lo - limit.alpha1);
    cmp.limit_gap = limit.gap;
    if (limit.gap) {
        cmp.gap_in_window = limit.gap->lo >= window.lo && limit.gap->hi <= window.hi;
        // pick the eps gap with the largest overlap with the limit gap
        double best_overlap = 0.0;
        for (const auto& g : bands.gaps) {
            const double overlap =
                std::min(g.hi, limit.gap->hi) - std::max(g.lo, limit.gap->lo);
            if (overlap > best_overlap) {
                best_overlap = overlap;
                cmp.eps_gap = g;
            }
        }
        if (cmp.eps_gap) {
            cmp.delta_q = std::abs(cmp.eps_gap->lo - limit.q);
            cmp.delta_alpha2 = std::abs(cmp.eps_gap->hi - *limit.alpha2);
        }
    }
    return cmp;
}

}  // namespace contrast
