#include "contrast/fem_pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace contrast {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpectralSet eps_spectrum(const ModelParams& p, double eps, double h, int k,
                         const EpsOptions& opts) {
    require_valid(p);
    if (p.domain.kind != DomainKind::BoundedRectangle)
        throw std::invalid_argument("eps_spectrum: bounded-rectangle domain required");

    const auto shells = shells_for(p, eps);
    const Mesh mesh = build_mesh(p.domain, shells, h, opts.shell_layers);
    const auto reduced = apply_dirichlet(assemble(mesh, p.alpha_law(eps), p.beta_law(eps)), mesh);

    EigOptions eo;
    eo.k = k;
    eo.tol = opts.solver_tol;
    eo.seed = opts.seed;
    const auto eig = solve_smallest(reduced, eo);

    SpectralSet set;
    for (double v : eig.values) set.points.emplace_back(v, 1);
    set.window = {eig.values.front(), eig.values.back()};
    char note[120];
    std::snprintf(note, sizeof(note), "%d smallest discrete eigenvalues (h = %.3e, %d dofs)", k, h,
                  reduced.ndof);
    set.truncation_note = note;
    return set;
}

double witness_energy(const ModelParams& p, double eps) {
    const double b = p.R * eps;
    const double d = p.d_law(eps);
    const double a = b - d;
    if (!(a > 0.0)) throw std::invalid_argument("witness: shell thickness exceeds radius");
    const double alpha = p.alpha_law(eps);
    if (p.n == 2) {
        // alpha * 2 pi / ln(b / a), with ln(b/a) = -log1p(-d/b)
        return alpha * 2.0 * kPi / (-std::log1p(-d / b));
    }
    if (p.n == 3) return alpha * 4.0 * kPi * a * b / d;
    throw std::invalid_argument("witness: n = 2 or 3 required");
}

double witness_mass(const ModelParams& p, double eps) {
    const double b = p.R * eps;
    const double d = p.d_law(eps);
    const double a = b - d;
    if (!(a > 0.0)) throw std::invalid_argument("witness: shell thickness exceeds radius");
    const double beta = p.beta_law(eps);
    if (p.n == 2) {
        // exact L2 mass of G over the annulus: (pi b^2 / (2 L^2)) *
        // (1 - s^2 (2L^2 - 2L + 1)), s = a/b, L = ln s, grouped to avoid
        // the s -> 1 cancellation
        const double delta = d / b;
        const double s = a / b;
        const double L = std::log1p(-delta);
        const double bracket = delta * (2.0 - delta) + 2.0 * s * s * L * (1.0 - L);
        const double shell_l2 = kPi * b * b * bracket / (2.0 * L * L);
        return beta * a * a * kPi + shell_l2;
    }
    if (p.n == 3) {
        const double shell_l2 = 4.0 * kPi / 3.0 * a * a * d;
        return beta * a * a * a * 4.0 * kPi / 3.0 + shell_l2;
    }
    throw std::invalid_argument("witness: n = 2 or 3 required");
}

double rayleigh_witness(const ModelParams& p, double eps) {
    return witness_energy(p, eps) / witness_mass(p, eps);
}

}  // namespace contrast
