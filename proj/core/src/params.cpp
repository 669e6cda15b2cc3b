#include "contrast/params.hpp"

#include <cmath>
#include <numbers>

namespace contrast {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double ScalingLaw::operator()(double eps) const {
    if (eps <= 0.0) throw std::invalid_argument("ScalingLaw: eps must be positive");
    return coeff * std::pow(eps, exponent);
}

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n >= 1 required");
    if (n == 2) return kPi;
    if (n == 3) return 4.0 * kPi / 3.0;
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

double q_eps(const ModelParams& p, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("q_eps: eps must be positive");
    return p.alpha_law(eps) * p.n / (p.R * p.d_law(eps) * eps * p.beta_law(eps));
}

double r_eps(const ModelParams& p, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("r_eps: eps must be positive");
    return std::pow(p.R, p.n) * unit_ball_volume(p.n) * eps * p.beta_law(eps);
}

LimitPair limits(const ModelParams& p) {
    LimitPair lim;

    // q_eps = [alpha.c * n / (R * d.c * beta.c)] * eps^(alpha.e - d.e - 1 - beta.e)
    const double q_exp = p.alpha_law.exponent - p.d_law.exponent - 1.0 - p.beta_law.exponent;
    const double q_coeff = p.alpha_law.coeff * p.n / (p.R * p.d_law.coeff * p.beta_law.coeff);
    if (q_exp > 0.0)
        lim.q = 0.0;
    else if (q_exp < 0.0)
        lim.q = kInf;
    else
        lim.q = q_coeff;

    // r_eps = [R^n * kappa_n * beta.c] * eps^(1 + beta.e)
    const double r_exp = 1.0 + p.beta_law.exponent;
    const double r_coeff = std::pow(p.R, p.n) * unit_ball_volume(p.n) * p.beta_law.coeff;
    if (r_exp > 0.0)
        lim.r = 0.0;
    else if (r_exp < 0.0)
        throw std::invalid_argument("limits: r_eps diverges (beta exponent < -1)");
    else
        lim.r = r_coeff;

    return lim;
}

std::vector<std::string> validate(const ModelParams& p) {
    std::vector<std::string> report;
    if (p.n < 2) report.push_back("dimension: n >= 2 required");
    if (!(p.R > 0.0 && p.R < 0.5)) report.push_back("radius: R in (0, 1/2) required");
    if (!(p.d_law.coeff > 0.0)) report.push_back("d_law: coefficient must be positive");
    if (!(p.alpha_law.coeff > 0.0)) report.push_back("alpha_law: coefficient must be positive");
    if (!(p.beta_law.coeff > 0.0)) report.push_back("beta_law: coefficient must be positive");
    if (!(p.d_law.exponent > 1.0)) report.push_back("thin-shell: d exponent > 1 required (d = o(eps))");

    // (d_eps)^2 / alpha_eps -> 0 needs 2*d.e - alpha.e strictly positive;
    // exponent equality leaves a constant nonzero ratio and is rejected.
    if (!(2.0 * p.d_law.exponent - p.alpha_law.exponent > 0.0))
        report.push_back("soft-shell: (d_eps)^2 / alpha_eps must vanish");

    if (1.0 + p.beta_law.exponent < 0.0) report.push_back("mass: r limit must be finite");

    if (!(p.domain.d_minus < 0.0 && p.domain.d_plus > 0.0))
        report.push_back("domain: d_minus < 0 < d_plus required");
    if (!(p.domain.L_x > 0.0)) report.push_back("domain: L_x > 0 required");
    return report;
}

bool is_valid(const ModelParams& p) { return validate(p).empty(); }

void require_valid(const ModelParams& p) {
    auto report = validate(p);
    if (report.empty()) return;
    std::string msg = "invalid model parameters:";
    for (const auto& r : report) msg += " [" + r + "]";
    throw std::invalid_argument(msg);
}

int admissible_center_count(const ModelParams& p, double eps, double gamma_length) {
    if (eps <= 0.0) throw std::invalid_argument("admissible_center_count: eps must be positive");
    if (gamma_length <= 0.0) throw std::invalid_argument("admissible_center_count: gamma_length must be positive");
    // centers (i*eps, 0), |i*eps| <= gamma_length/2 - eps*sqrt(n)/2, ties included
    const double margin = 0.5 * eps * std::sqrt(static_cast<double>(p.n));
    const double reach = 0.5 * gamma_length - margin;
    if (reach < -1e-12 * eps) return 0;
    const int imax = static_cast<int>(std::floor(reach / eps + 1e-12));
    return 2 * imax + 1;
}

double shell_mass(const ModelParams& p, double eps, double gamma_length) {
    const int count = admissible_center_count(p, eps, gamma_length);
    if (count == 0) throw ZeroShellsError("shell_mass: no admissible shell centers at this eps");
    const double r_in = p.R * eps - p.d_law(eps);
    if (r_in <= 0.0) throw std::invalid_argument("shell_mass: shell thickness exceeds radius");
    return p.beta_law(eps) * std::pow(r_in, p.n) * unit_ball_volume(p.n) * count;
}

ModelParams canonical_params(double q, double r, const DomainSpec& domain,
                             double gamma_d, double c_d, int n, double R) {
    if (!(r >= 0.0) || r == kInf) throw std::invalid_argument("canonical_params: r in [0, inf) required");
    if (!(q >= 0.0)) throw std::invalid_argument("canonical_params: q in [0, inf] required");
    if (!(gamma_d > 1.0)) throw std::invalid_argument("canonical_params: gamma_d > 1 required");

    ModelParams p;
    p.n = n;
    p.R = R;
    p.domain = domain;
    p.d_law = {c_d, gamma_d};

    const double kn = unit_ball_volume(n);
    if (r > 0.0) {
        p.beta_law = {r / (std::pow(R, n) * kn), -1.0};
    } else {
        p.beta_law = {1.0, 0.0};  // r_eps = R^n kappa_n eps -> 0
    }

    // alpha chosen so q_eps == q identically; q = 0 / inf shift the exponent.
    const double alpha_exp = gamma_d + 1.0 + p.beta_law.exponent;
    const double unit_q_coeff = R * c_d * p.beta_law.coeff / n;
    if (q == 0.0)
        p.alpha_law = {unit_q_coeff, alpha_exp + 1.0};
    else if (q == kInf)
        p.alpha_law = {unit_q_coeff, alpha_exp - 1.0};
    else
        p.alpha_law = {q * unit_q_coeff, alpha_exp};

    return p;
}

}  // namespace contrast
