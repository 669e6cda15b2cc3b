#pragma once

#include "contrast/fem.hpp"
#include "contrast/limit_spectrum.hpp"

namespace contrast {

struct EpsOptions {
    int shell_layers = 2;
    double solver_tol = 1e-9;
    std::uint64_t seed = 12345;
};

/// End-to-end eps-level spectrum on the bounded rectangle:
/// mesh -> assemble(alpha_eps, beta_eps) -> Dirichlet -> k smallest.
SpectralSet eps_spectrum(const ModelParams& p, double eps, double h, int k,
                         const EpsOptions& opts = {});

/// Closed-form Rayleigh quotient of the piecewise-harmonic ball witness:
/// tends to q_eps (and hence to q) as eps -> 0. n = 2 or 3.
double rayleigh_witness(const ModelParams& p, double eps);

/// Its numerator (shell Dirichlet energy) and denominator (weighted mass),
/// exposed for quadrature cross-checks.
double witness_energy(const ModelParams& p, double eps);
double witness_mass(const ModelParams& p, double eps);

}  // namespace contrast
