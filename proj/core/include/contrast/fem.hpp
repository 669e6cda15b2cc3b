#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "contrast/mesh.hpp"

namespace contrast {

using SpMat = Eigen::SparseMatrix<double>;
using SpMatC = Eigen::SparseMatrix<std::complex<double>>;

struct SolverError : std::runtime_error {
    std::vector<double> achieved_residuals;
    explicit SolverError(const std::string& what, std::vector<double> res = {})
        : std::runtime_error(what), achieved_residuals(std::move(res)) {}
};

/// Stiffness/mass pencil plus the vertex-to-dof reduction that produced it.
/// Dirichlet elimination drops vertices (dof -1); the Floquet identification
/// maps right-boundary vertices onto their left partners with a phase.
struct DiscreteSystem {
    SpMat K, M;    // valid while the field is real
    SpMatC Kc, Mc; // valid after a complex Floquet reduction
    bool complex_field = false;

    std::vector<int> dof_of_vertex;
    std::vector<std::complex<double>> phase_of_vertex;
    int ndof = 0;

    bool dirichlet_applied = false;
    bool floquet_applied = false;

    // unreduced matrices; reductions are recomputed from these
    SpMat K_full, M_full;
};

/// First-order elements, exact per-triangle integration of the piecewise
/// constant coefficients: stiffness weight alpha_eps on shell triangles,
/// mass weight beta_eps on ball triangles, 1 elsewhere.
DiscreteSystem assemble(const Mesh& mesh, double alpha_eps, double beta_eps);

/// Eliminates every vertex incident to a Dirichlet boundary edge. Idempotent.
DiscreteSystem apply_dirichlet(const DiscreteSystem& system, const Mesh& mesh);

/// Identifies right-boundary dofs with e^{i phi} times their left partners
/// (vertical translation matched to 1e-12). phi = 0 keeps the real field.
DiscreteSystem apply_floquet(const DiscreteSystem& system, const Mesh& mesh, double phi);

struct EigOptions {
    int k = 1;
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    int max_sweeps = 400;
    double sigma = -1.0;
};

struct EigResult {
    std::vector<double> values;  // ascending
    Eigen::MatrixXd vectors;     // real path
    Eigen::MatrixXcd vectors_c;  // complex path
    std::vector<double> residuals;
    int sweeps = 0;
};

/// k smallest generalized eigenvalues of (K, M) by shift-invert subspace
/// iteration with M-orthonormal Rayleigh-Ritz restarts; deterministic for a
/// fixed seed. warm_start columns seed the block when shapes match.
EigResult solve_smallest(const SpMat& K, const SpMat& M, const EigOptions& opts,
                         const Eigen::MatrixXd* warm_start = nullptr);
EigResult solve_smallest(const SpMatC& K, const SpMatC& M, const EigOptions& opts,
                         const Eigen::MatrixXcd* warm_start = nullptr);
EigResult solve_smallest(const DiscreteSystem& system, const EigOptions& opts);

/// Hermitian deviation ||A - A^H||_inf of the active pencil matrices.
double hermitian_residual(const DiscreteSystem& system);

}  // namespace contrast
