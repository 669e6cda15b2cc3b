#include "contrast/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace contrast {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleRelTol = 1e-12;
constexpr double kCoincidenceRelTol = 1e-10;

void check_geometry(double d_minus, double d_plus) {
    if (!(d_minus < 0.0 && d_plus > 0.0))
        throw std::invalid_argument("dispersion: d_minus < 0 < d_plus required");
}

// s*cot(s*len) for lambda > 0, continued through 0 by the hyperbolic branch.
double branch_term(double lambda, double len) {
    if (lambda > 0.0) {
        const double s = std::sqrt(lambda);
        return s * std::cos(s * len) / std::sin(s * len);
    }
    if (lambda < 0.0) {
        const double s = std::sqrt(-lambda);
        return s / std::tanh(s * len);
    }
    return 1.0 / len;
}

double eval_unchecked(double lambda, double a, double b) {
    return branch_term(lambda, a) + branch_term(lambda, b);
}

// nearest pole of one family (k pi / len)^2, k >= 1; 0 if none is near
bool near_family_pole(double lambda, double len, double* pole) {
    if (lambda <= 0.0) return false;
    const double s = std::sqrt(lambda);
    const long k = std::lround(s * len / kPi);
    if (k < 1) return false;
    const double p = (k * kPi / len) * (k * kPi / len);
    if (std::abs(lambda - p) <= kPoleRelTol * (1.0 + std::abs(p))) {
        *pole = p;
        return true;
    }
    return false;
}

struct RootProblem {
    double a, b, mu;
    double operator()(double lambda) const { return eval_unchecked(lambda, a, b) - mu; }
};

// Bracketed bisection on a strictly decreasing g over (lo, hi), g(lo) > 0 >
// g(hi), down to width 1e-13 * (1 + |root|), then one secant polish.
double bisect_decreasing(const RootProblem& g, double lo, double hi) {
    double glo = g(lo);
    double ghi = g(hi);
    if (!(glo > 0.0 && ghi < 0.0))
        throw BracketError("dispersion root bracket without sign change");
    while (hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    if (ghi != glo) {
        const double sec = lo - glo * (hi - lo) / (ghi - glo);
        if (sec > lo && sec < hi) return sec;
    }
    return 0.5 * (lo + hi);
}

// One root of F = mu inside the interval (p_lo, p_hi) between consecutive
// poles; p_lo = -inf selects the first branch. A bracket that collapses onto
// a pole means the root sits within the inset floor of it; the near-pole
// value is then returned directly (relative error below 1e-12).
double interval_root(double a, double b, double mu, double p_lo, double p_hi) {
    const RootProblem g{a, b, mu};

    // right end: approach the pole until g < 0
    double hi = 0.0;
    {
        double inset = 1e-6 * (p_hi - (std::isinf(p_lo) ? 0.0 : p_lo));
        if (!(inset > 0.0) || !std::isfinite(inset)) inset = 1e-6 * (1.0 + p_hi);
        const double floor_inset = 4e-13 * (1.0 + p_hi);
        while (true) {
            hi = p_hi - inset;
            if (g(hi) < 0.0) break;
            inset *= 1e-3;
            if (inset < floor_inset) return p_hi - 0.5 * floor_inset;
        }
    }

    // left end
    double lo = 0.0;
    if (std::isinf(p_lo)) {
        lo = std::min(0.0, hi) - 1.0;
        double step = 1.0 + std::abs(lo);
        while (g(lo) <= 0.0) {
            lo -= step;
            step *= 2.0;
            if (!std::isfinite(lo)) throw BracketError("dispersion root: no left bracket");
        }
    } else {
        double inset = 1e-6 * (p_hi - p_lo);
        const double floor_inset = 4e-13 * (1.0 + p_lo);
        while (true) {
            lo = p_lo + inset;
            if (lo >= hi) {
                inset *= 1e-3;
                if (inset < floor_inset) return p_lo + 0.5 * floor_inset;
                continue;
            }
            if (g(lo) > 0.0) break;
            inset *= 1e-3;
            if (inset < floor_inset) return p_lo + 0.5 * floor_inset;
        }
    }

    return bisect_decreasing(g, lo, hi);
}

}  // namespace

double dispersion_value(double lambda, double d_minus, double d_plus) {
    check_geometry(d_minus, d_plus);
    const double a = -d_minus;
    const double b = d_plus;
    double pole = 0.0;
    if (near_family_pole(lambda, a, &pole)) throw PoleProximityError(pole);
    if (near_family_pole(lambda, b, &pole)) throw PoleProximityError(pole);
    return eval_unchecked(lambda, a, b);
}

std::vector<Pole> half_interval_poles(double d_minus, double d_plus,
                                      double window_lo, double window_hi) {
    check_geometry(d_minus, d_plus);
    if (!(window_lo <= window_hi) || !std::isfinite(window_hi))
        throw std::invalid_argument("half_interval_poles: bounded window required");
    const double a = -d_minus;
    const double b = d_plus;

    std::vector<Pole> raw;
    for (int fam = 0; fam < 2; ++fam) {
        const double len = fam == 0 ? a : b;
        for (long k = 1;; ++k) {
            const double v = (k * kPi / len) * (k * kPi / len);
            if (v > window_hi) break;
            if (v >= window_lo) raw.push_back({v, fam == 0, fam == 1});
        }
    }
    std::sort(raw.begin(), raw.end(), [](const Pole& x, const Pole& y) { return x.value < y.value; });

    std::vector<Pole> merged;
    for (const auto& p : raw) {
        if (!merged.empty() &&
            std::abs(p.value - merged.back().value) <= kCoincidenceRelTol * (1.0 + std::abs(p.value))) {
            merged.back().from_left = merged.back().from_left || p.from_left;
            merged.back().from_right = merged.back().from_right || p.from_right;
        } else {
            merged.push_back(p);
        }
    }
    return merged;
}

TransversalSpectrum transversal_eigs(const DispersionSpec& spec, int count) {
    check_geometry(spec.d_minus, spec.d_plus);
    if (count < 1) throw std::invalid_argument("transversal_eigs: count >= 1 required");
    const double a = -spec.d_minus;
    const double b = spec.d_plus;

    // enough poles for `count` inter-pole intervals
    std::vector<Pole> poles;
    double window_hi = (count + 1) * (count + 1) * kPi * kPi / (std::min(a, b) * std::min(a, b));
    while (true) {
        poles = half_interval_poles(spec.d_minus, spec.d_plus, 0.0, window_hi);
        if (static_cast<int>(poles.size()) >= count) break;
        window_hi *= 4.0;
    }

    struct Entry {
        double value;
        bool flagged;
    };
    std::vector<Entry> entries;

    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
        entries.push_back({interval_root(a, b, spec.mu, prev, poles[i].value), false});
        if (poles[i].coincident()) entries.push_back({poles[i].value, true});
        prev = poles[i].value;
    }

    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.value < y.value; });
    entries.resize(count);

    TransversalSpectrum out;
    out.eigenvalues.reserve(count);
    out.mu_independent.reserve(count);
    for (const auto& e : entries) {
        out.eigenvalues.push_back(e.value);
        out.mu_independent.push_back(e.flagged);
    }
    return out;
}

double alpha_of_mu(double mu, double d_minus, double d_plus) {
    return transversal_eigs({d_minus, d_plus, mu}, 1).eigenvalues.front();
}

double first_pole(double d_minus, double d_plus) {
    check_geometry(d_minus, d_plus);
    const double pa = kPi / -d_minus;
    const double pb = kPi / d_plus;
    return std::min(pa * pa, pb * pb);
}

namespace detail {
double dispersion_value_unchecked(double lambda, double d_minus, double d_plus) {
    check_geometry(d_minus, d_plus);
    return eval_unchecked(lambda, -d_minus, d_plus);
}
}  // namespace detail

}  // namespace contrast
