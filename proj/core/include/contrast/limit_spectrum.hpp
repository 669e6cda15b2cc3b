#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "contrast/params.hpp"

namespace contrast {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

/// Finite sorted spectrum slice: discrete points with multiplicities plus
/// flagged essential-spectrum points, restricted to a window.
struct SpectralSet {
    std::vector<std::pair<double, int>> points;  // (value, multiplicity), ascending
    std::vector<double> essential;
    Interval window{};
    std::string truncation_note;

    /// All values (points repeated by multiplicity, then essential), sorted.
    std::vector<double> flatten() const;
};

/// Intersections of the eigenvalue curves with the coupling curve
/// lambda = q mu / (qr + mu): lambda_k^+ on the mu > -qr branch,
/// lambda_k^- on the mu < -qr branch.
struct CurveIntersectionResult {
    std::vector<double> lambda_plus;
    std::vector<double> lambda_minus;
    std::vector<double> mu_plus;
    std::vector<double> mu_minus;
    std::vector<int> zero_flagged_plus;  // indices with lambda at 0 within tolerance
    int k0 = 0;
    bool k0_tie = false;
    double q = 0.0;
    double r = 0.0;
};

/// Waveguide limit spectrum [alpha1, q] u [alpha2, inf), or [alpha1, inf)
/// when q >= min{(pi/d-)^2, (pi/d+)^2} (then mu2 is absent).
struct WaveguideLimit {
    double q = 0.0;
    double r = 0.0;
    double mu1 = 0.0;
    double alpha1 = 0.0;
    std::optional<double> mu2;
    std::optional<double> alpha2;
    std::optional<Interval> gap;  // (q, alpha2) when present
};

struct ThresholdTieError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// q mu / (qr + mu); strictly increasing on each branch, pole at mu = -qr.
double coupling_curve(double mu, double q, double r);

/// lambda q r / (q - lambda); exact inverse of coupling_curve, pole at lambda = q.
double mu_of_lambda(double lambda, double q, double r);

/// k-th smallest of {(m pi / L_x)^2 + tau_j(mu)}, m, j >= 1.
double rect_lambda_k_mu(double mu, const DomainSpec& domain, int k);

/// First k values of the merged set above, ascending.
std::vector<double> rect_lambda_mu_list(double mu, const DomainSpec& domain, int k);

/// Eigenvalues of the rectangle with an extra Dirichlet condition on the
/// interface: {(m pi/L_x)^2 + (j pi/|d-|)^2} u {(m pi/L_x)^2 + (j pi/d+)^2}.
std::vector<double> rect_dirichlet_gamma_eigs(const DomainSpec& domain, int count);

/// Dirichlet eigenvalues of the full rectangle (no interface condition).
std::vector<double> rect_dirichlet_eigs(const DomainSpec& domain, int count);

struct K0Result {
    int k0 = 0;
    bool tie = false;
};

/// Largest k with lambda_k^D <= q (0 when lambda_1^D > q). Flags a tie when q
/// is within 1e-10 of some lambda_k^D.
K0Result k0_index(double q, const DomainSpec& domain);

/// First K intersections on each branch, by bracketed bisection in mu with
/// geometric bracket growth away from the pole -qr.
CurveIntersectionResult rect_point_spectrum(double q, double r, const DomainSpec& domain, int K);

/// Same with separate branch counts (K_minus = 0 skips the mu < -qr branch,
/// whose curves start at index k0 + 1).
CurveIntersectionResult rect_point_spectrum(double q, double r, const DomainSpec& domain,
                                            int K_plus, int K_minus);

/// sigma(A_{q,r}) inside the window, all four (q, r) cases. q may be +inf.
/// The lambda^+ accumulation at q is truncated at distance 1e-8 (the flagged
/// essential point q always included); the note records the handling.
SpectralSet limit_spectrum_cases(double q, double r, const DomainSpec& domain, Interval window);

/// Steklov-type limit (q = inf): eigenvalues lambda with
/// tau_j(lambda r) = lambda - (m pi/L_x)^2, by bracketed root finding.
SpectralSet steklov_spectrum(double r, const DomainSpec& domain, Interval window);

/// mu1, mu2 and the spectral gap of the waveguide limit operator.
WaveguideLimit waveguide_limit(double q, double r, double d_minus, double d_plus);

/// Eigenvalues of the limit cell operator at Floquet parameter phi:
/// tau_j(mu(lambda)) = lambda - (phi + 2 pi m)^2 over |m| <= m_max, j <= count,
/// solved separately on lambda < q and lambda > q. lambda = q is excluded.
std::vector<double> waveguide_limit_bands(double q, double r, double d_minus, double d_plus,
                                          double phi, int m_max, int count);

}  // namespace contrast
