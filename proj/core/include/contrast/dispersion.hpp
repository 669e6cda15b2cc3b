#pragma once

#include <stdexcept>
#include <vector>

namespace contrast {

/// Transversal interface problem on (d_minus, d_plus):
///   -u'' = tau u,  u(d_minus) = u(d_plus) = 0,
///   u continuous at 0,  u'(-0) - u'(+0) = mu u(0).
struct DispersionSpec {
    double d_minus = -1.0;
    double d_plus = 1.0;
    double mu = 0.0;
};

/// Sorted transversal eigenvalues; flagged entries are coincident
/// half-interval Dirichlet values (eigenfunction vanishing at 0), which
/// persist for every mu.
struct TransversalSpectrum {
    std::vector<double> eigenvalues;
    std::vector<bool> mu_independent;
};

struct Pole {
    double value = 0.0;
    bool from_left = false;
    bool from_right = false;
    bool coincident() const { return from_left && from_right; }
};

struct PoleProximityError : std::runtime_error {
    double pole;
    explicit PoleProximityError(double p)
        : std::runtime_error("dispersion_value: lambda too close to pole"), pole(p) {}
};

struct BracketError : std::logic_error {
    using std::logic_error::logic_error;
};

/// F(lambda) = s cot(s|d-|) + s cot(s d+), s = sqrt(lambda), continued by the
/// hyperbolic branch for lambda < 0 and by 1/|d-| + 1/d+ at lambda = 0.
/// Strictly decreasing between consecutive poles. Throws PoleProximityError
/// within relative distance 1e-12 of a half-interval Dirichlet value.
double dispersion_value(double lambda, double d_minus, double d_plus);

/// Half-interval Dirichlet values (k pi / |d-|)^2 and (k pi / d+)^2 inside the
/// window, merged ascending; values agreeing to relative 1e-10 are fused into
/// one coincident entry.
std::vector<Pole> half_interval_poles(double d_minus, double d_plus,
                                      double window_lo, double window_hi);

/// The `count` smallest transversal eigenvalues: one dispersion root per
/// inter-pole interval (including (-inf, first pole)) plus every coincident
/// pole value, merged ascending.
TransversalSpectrum transversal_eigs(const DispersionSpec& spec, int count);

/// Smallest transversal eigenvalue tau_1(mu); continuous, strictly decreasing,
/// tends to min{(pi/d-)^2, (pi/d+)^2} as mu -> -inf and to -inf as mu -> +inf.
double alpha_of_mu(double mu, double d_minus, double d_plus);

/// min{(pi/d-)^2, (pi/d+)^2}, the waveguide gap threshold.
double first_pole(double d_minus, double d_plus);

namespace detail {
/// F(lambda) without the pole-proximity guard; root brackets need values
/// arbitrarily close to (but never at) a pole.
double dispersion_value_unchecked(double lambda, double d_minus, double d_plus);
}  // namespace detail

}  // namespace contrast
