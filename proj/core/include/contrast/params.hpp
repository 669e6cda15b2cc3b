#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace contrast {

/// Pure power law c * eps^gamma. Coefficient must be positive.
struct ScalingLaw {
    double coeff = 1.0;
    double exponent = 0.0;

    double operator()(double eps) const;
};

enum class DomainKind { BoundedRectangle, Waveguide };

/// Reference geometry: a rectangle (-L_x/2, L_x/2) x (d_minus, d_plus) with
/// the interface line {y = 0}, or the infinite strip R x (d_minus, d_plus).
/// For the waveguide the period cell is (0,1) x (d_minus, d_plus).
struct DomainSpec {
    DomainKind kind = DomainKind::BoundedRectangle;
    double L_x = 1.0;
    double d_minus = -1.0;
    double d_plus = 1.0;

    double height() const { return d_plus - d_minus; }
};

/// Full parameter state: ambient dimension n (>= 2) for the scaling
/// arithmetic, shell radius fraction R in (0, 1/2), and the three power
/// laws for shell thickness, shell stiffness and ball density.
struct ModelParams {
    int n = 2;
    double R = 0.25;
    ScalingLaw d_law{1.0, 2.0};
    ScalingLaw alpha_law{1.0, 2.0};
    ScalingLaw beta_law{1.0, -1.0};
    DomainSpec domain{};
};

/// Limits q = lim q_eps in [0, inf] and r = lim r_eps in [0, inf).
struct LimitPair {
    double q = 0.0;  // may be +inf
    double r = 0.0;

    bool q_finite() const { return q != std::numeric_limits<double>::infinity(); }
};

/// Volume of the n-dimensional unit ball. n = 2, 3 bypass the Gamma function.
double unit_ball_volume(int n);

/// Surface area of the (n-1)-dimensional unit sphere, n * unit_ball_volume(n).
double unit_sphere_area(int n);

double q_eps(const ModelParams& p, double eps);
double r_eps(const ModelParams& p, double eps);

/// Limits from exponent algebra: positive net exponent gives 0, negative
/// gives +inf (rejected for r), zero gives the coefficient ratio.
LimitPair limits(const ModelParams& p);

/// Names of violated standing assumptions; empty means valid.
std::vector<std::string> validate(const ModelParams& p);
bool is_valid(const ModelParams& p);
void require_valid(const ModelParams& p);

/// Total weighted mass of the balls: beta_eps * (R_eps - d_eps)^n * kappa_n * N(eps),
/// where N(eps) counts admissible centers (i*eps, 0) on an interface segment of
/// length gamma_length, margin eps*sqrt(n)/2 to the segment ends, ties included.
/// Throws ZeroShellsError when no center is admissible.
double shell_mass(const ModelParams& p, double eps, double gamma_length);

/// Count of admissible shell centers used by shell_mass.
int admissible_center_count(const ModelParams& p, double eps, double gamma_length);

struct ZeroShellsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inverse map from a target limit pair to concrete power laws:
/// d = c_d * eps^gamma_d, beta has exponent -1 so that r_eps == r exactly,
/// alpha chosen so that q_eps == q for all eps. Targets q = 0 and q = +inf
/// are realized by shifting the alpha exponent by +1 / -1.
ModelParams canonical_params(double q, double r, const DomainSpec& domain,
                             double gamma_d = 2.0, double c_d = 1.0, int n = 2,
                             double R = 0.25);

}  // namespace contrast
