#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "contrast/fem.hpp"

namespace contrast {

namespace {

using Triplet = Eigen::Triplet<double>;
using TripletC = Eigen::Triplet<std::complex<double>>;

// vertices incident to a Dirichlet-tagged boundary edge
std::vector<bool> dirichlet_vertices(const Mesh& mesh) {
    std::vector<bool> fixed(mesh.vertices.size(), false);
    for (const auto& e : mesh.boundary)
        if (e.tag == BoundaryTag::Dirichlet) {
            fixed[e.v[0]] = true;
            fixed[e.v[1]] = true;
        }
    return fixed;
}

template <typename Scalar>
void reduce_matrix(const SpMat& full, const std::vector<int>& dof,
                   const std::vector<std::complex<double>>& phase, int ndof,
                   Eigen::SparseMatrix<Scalar>& out) {
    std::vector<Eigen::Triplet<Scalar>> trips;
    trips.reserve(full.nonZeros());
    for (int col = 0; col < full.outerSize(); ++col)
        for (SpMat::InnerIterator it(full, col); it; ++it) {
            const int di = dof[it.row()];
            const int dj = dof[it.col()];
            if (di < 0 || dj < 0) continue;
            std::complex<double> v = std::conj(phase[it.row()]) * it.value() * phase[it.col()];
            if constexpr (std::is_same_v<Scalar, double>)
                trips.emplace_back(di, dj, v.real());
            else
                trips.emplace_back(di, dj, v);
        }
    out.resize(ndof, ndof);
    out.setFromTriplets(trips.begin(), trips.end());
    out.makeCompressed();
}

void rebuild_reduced(DiscreteSystem& s) {
    if (s.complex_field) {
        reduce_matrix(s.K_full, s.dof_of_vertex, s.phase_of_vertex, s.ndof, s.Kc);
        reduce_matrix(s.M_full, s.dof_of_vertex, s.phase_of_vertex, s.ndof, s.Mc);
        s.K.resize(0, 0);
        s.M.resize(0, 0);
    } else {
        reduce_matrix(s.K_full, s.dof_of_vertex, s.phase_of_vertex, s.ndof, s.K);
        reduce_matrix(s.M_full, s.dof_of_vertex, s.phase_of_vertex, s.ndof, s.M);
        s.Kc.resize(0, 0);
        s.Mc.resize(0, 0);
    }
}

// ---------------------------------------------------------------------------
// shift-invert subspace iteration, shared by the real and complex paths
// ---------------------------------------------------------------------------

template <typename Scalar>
struct EigenTraits;

template <>
struct EigenTraits<double> {
    using Matrix = Eigen::MatrixXd;
    using Vector = Eigen::VectorXd;
    static double make(std::mt19937_64& rng, std::normal_distribution<double>& dist) {
        return dist(rng);
    }
};

template <>
struct EigenTraits<std::complex<double>> {
    using Matrix = Eigen::MatrixXcd;
    using Vector = Eigen::VectorXcd;
    static std::complex<double> make(std::mt19937_64& rng, std::normal_distribution<double>& dist) {
        const double re = dist(rng);
        const double im = dist(rng);
        return {re, im};
    }
};

template <typename Scalar>
void store_vectors(EigResult& res, const typename EigenTraits<Scalar>::Matrix& x, int k);

template <>
void store_vectors<double>(EigResult& res, const Eigen::MatrixXd& x, int k) {
    res.vectors = x.leftCols(k);
}
template <>
void store_vectors<std::complex<double>>(EigResult& res, const Eigen::MatrixXcd& x, int k) {
    res.vectors_c = x.leftCols(k);
}

template <typename Scalar>
EigResult solve_smallest_impl(const Eigen::SparseMatrix<Scalar>& K,
                              const Eigen::SparseMatrix<Scalar>& M, const EigOptions& opts,
                              const typename EigenTraits<Scalar>::Matrix* warm) {
    using Matrix = typename EigenTraits<Scalar>::Matrix;
    using Vector = typename EigenTraits<Scalar>::Vector;

    const int n = static_cast<int>(K.rows());
    if (n == 0) throw SolverError("solve_smallest: empty system");
    if (opts.k < 1 || opts.k > n) throw SolverError("solve_smallest: k out of range");
    const int p = std::min(n, opts.k + std::max(8, opts.k / 2));

    // deterministic start; warm-start columns are used when shapes match
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix X(n, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) X(i, j) = EigenTraits<Scalar>::make(rng, dist);
    if (warm && warm->rows() == n)
        X.leftCols(std::min<int>(p, static_cast<int>(warm->cols()))) =
            warm->leftCols(std::min<int>(p, static_cast<int>(warm->cols())));

    double sigma = opts.sigma;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<Scalar>> fact;
    auto factorize = [&](double s) {
        Eigen::SparseMatrix<Scalar> shifted = K - Scalar(s) * M;
        fact.compute(shifted);
        return fact.info() == Eigen::Success;
    };
    {
        int attempts = 0;
        while (!factorize(sigma)) {
            sigma = sigma * 2.0 - 1.0;
            if (++attempts >= 3) throw SolverError("solve_smallest: factorization failed after shift perturbations");
        }
    }

    auto m_orthonormalize = [&](Matrix& Y) {
        Matrix MY = M * Y;
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < Y.cols(); ++j) {
                for (int i = 0; i < j; ++i) {
                    const Scalar proj = (Y.col(i).adjoint() * MY.col(j))(0, 0);
                    Y.col(j) -= proj * Y.col(i);
                    MY.col(j) -= proj * MY.col(i);
                }
                const double nrm = std::sqrt(std::abs((Y.col(j).adjoint() * MY.col(j))(0, 0)));
                if (nrm < 1e-300) throw SolverError("solve_smallest: basis collapse");
                Y.col(j) /= nrm;
                MY.col(j) /= nrm;
            }
    };

    EigResult res;
    std::vector<double> resid(opts.k, 1e300);
    Eigen::VectorXd ritz;
    int stall = 0;
    double best_max_resid = 1e300;

    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        Matrix Y(n, p);
        for (int j = 0; j < p; ++j) Y.col(j) = fact.solve(M * X.col(j));
        m_orthonormalize(Y);

        Matrix A = Y.adjoint() * (K * Y).eval();
        Matrix B = Y.adjoint() * (M * Y).eval();
        Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(0.5 * (A + A.adjoint()),
                                                             0.5 * (B + B.adjoint()));
        if (ges.info() != Eigen::Success) throw SolverError("solve_smallest: dense projection failed");
        ritz = ges.eigenvalues();
        X = Y * ges.eigenvectors();

        bool all_ok = true;
        double max_resid = 0.0;
        for (int j = 0; j < opts.k; ++j) {
            const Vector kx = K * X.col(j);
            const Vector mx = M * X.col(j);
            resid[j] = (kx - Scalar(ritz(j)) * mx).norm();
            const double scale = mx.norm();
            if (!(resid[j] <= opts.tol * scale)) all_ok = false;
            max_resid = std::max(max_resid, resid[j] / std::max(scale, 1e-300));
        }
        res.sweeps = sweep;
        if (all_ok) {
            res.values.assign(ritz.data(), ritz.data() + opts.k);
            res.residuals = resid;
            store_vectors<Scalar>(res, X, opts.k);
            return res;
        }

        if (max_resid < 0.5 * best_max_resid) {
            best_max_resid = max_resid;
            stall = 0;
        } else if (++stall >= 60) {
            // move the shift toward the unresolved cluster and refactor
            const double target = ritz(std::max(0, opts.k - 1));
            const double candidate = 0.5 * (sigma + target);
            int attempts = 0;
            double s = candidate;
            while (!factorize(s)) {
                s = 0.5 * (s + sigma);
                if (++attempts >= 3) {
                    factorize(sigma);
                    break;
                }
            }
            if (attempts < 3) sigma = s;
            stall = 0;
        }
    }
    throw SolverError("solve_smallest: no convergence within the sweep cap", resid);
}

}  // namespace

DiscreteSystem assemble(const Mesh& mesh, double alpha_eps, double beta_eps) {
    if (!(alpha_eps > 0.0) || !(beta_eps > 0.0))
        throw std::invalid_argument("assemble: positive coefficients required");
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<Triplet> kt, mt;
    kt.reserve(mesh.triangles.size() * 9);
    mt.reserve(mesh.triangles.size() * 9);

    for (const auto& t : mesh.triangles) {
        const Vec2& a = mesh.vertices[t.v[0]];
        const Vec2& b = mesh.vertices[t.v[1]];
        const Vec2& c = mesh.vertices[t.v[2]];
        const double det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        const double area = 0.5 * det;
        if (area < 1e-14) throw std::invalid_argument("assemble: degenerate triangle");

        // barycentric gradients
        const double gx[3] = {(b.y - c.y) / det, (c.y - a.y) / det, (a.y - b.y) / det};
        const double gy[3] = {(c.x - b.x) / det, (a.x - c.x) / det, (b.x - a.x) / det};

        const double kcoef = (t.region == Region::Shell ? alpha_eps : 1.0) * area;
        const double mcoef = (t.region == Region::Ball ? beta_eps : 1.0) * area / 12.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                kt.emplace_back(t.v[i], t.v[j], kcoef * (gx[i] * gx[j] + gy[i] * gy[j]));
                mt.emplace_back(t.v[i], t.v[j], mcoef * (i == j ? 2.0 : 1.0));
            }
    }

    DiscreteSystem s;
    s.K_full.resize(n, n);
    s.M_full.resize(n, n);
    s.K_full.setFromTriplets(kt.begin(), kt.end());
    s.M_full.setFromTriplets(mt.begin(), mt.end());
    s.K_full.makeCompressed();
    s.M_full.makeCompressed();

    s.dof_of_vertex.resize(n);
    for (int i = 0; i < n; ++i) s.dof_of_vertex[i] = i;
    s.phase_of_vertex.assign(n, {1.0, 0.0});
    s.ndof = n;
    s.K = s.K_full;
    s.M = s.M_full;
    return s;
}

DiscreteSystem apply_dirichlet(const DiscreteSystem& system, const Mesh& mesh) {
    DiscreteSystem s = system;
    const auto fixed = dirichlet_vertices(mesh);
    if (std::none_of(fixed.begin(), fixed.end(), [](bool f) { return f; }))
        throw std::invalid_argument("apply_dirichlet: no Dirichlet boundary present");

    int next = 0;
    std::vector<int> remap(s.ndof, -1);
    for (std::size_t v = 0; v < fixed.size(); ++v) {
        if (fixed[v]) {
            s.dof_of_vertex[v] = -1;
        } else if (s.dof_of_vertex[v] >= 0) {
            int& slot = remap[system.dof_of_vertex[v]];
            if (slot < 0) slot = next++;
            s.dof_of_vertex[v] = slot;
        }
    }
    s.ndof = next;
    s.dirichlet_applied = true;
    rebuild_reduced(s);
    return s;
}

DiscreteSystem apply_floquet(const DiscreteSystem& system, const Mesh& mesh, double phi) {
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw std::invalid_argument("apply_floquet: phi in [0, 2 pi) required");
    if (system.floquet_applied) throw std::invalid_argument("apply_floquet: already applied");

    std::vector<int> left, right;
    for (const auto& e : mesh.boundary) {
        if (e.tag == BoundaryTag::Left) {
            left.push_back(e.v[0]);
            left.push_back(e.v[1]);
        } else if (e.tag == BoundaryTag::Right) {
            right.push_back(e.v[0]);
            right.push_back(e.v[1]);
        }
    }
    auto uniq = [](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(left);
    uniq(right);
    if (left.empty() || right.empty())
        throw std::invalid_argument("apply_floquet: no left/right boundary tags");

    DiscreteSystem s = system;

    // active (non-eliminated) trace vertices, matched by height
    auto active_sorted = [&](std::vector<int>& ids) {
        std::erase_if(ids, [&](int v) { return s.dof_of_vertex[v] < 0; });
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return mesh.vertices[a].y < mesh.vertices[b].y;
        });
    };
    active_sorted(left);
    active_sorted(right);
    if (left.size() != right.size())
        throw std::invalid_argument("apply_floquet: trace meshes do not match");
    const double period = mesh.x1 - mesh.x0;
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (std::abs(mesh.vertices[left[i]].y - mesh.vertices[right[i]].y) > 1e-12 * period)
            throw std::invalid_argument("apply_floquet: trace meshes do not match");
    }

    const std::complex<double> phase = std::polar(1.0, phi);
    for (std::size_t i = 0; i < left.size(); ++i) {
        s.dof_of_vertex[right[i]] = s.dof_of_vertex[left[i]];
        s.phase_of_vertex[right[i]] = phase;
    }

    // compact dof numbering after the identification
    std::vector<int> remap(s.ndof, -1);
    int next = 0;
    for (std::size_t v = 0; v < s.dof_of_vertex.size(); ++v) {
        const int d = s.dof_of_vertex[v];
        if (d < 0) continue;
        if (remap[d] < 0) remap[d] = next++;
        s.dof_of_vertex[v] = remap[d];
    }
    s.ndof = next;
    s.floquet_applied = true;
    s.complex_field = phi != 0.0;
    rebuild_reduced(s);
    return s;
}

EigResult solve_smallest(const SpMat& K, const SpMat& M, const EigOptions& opts,
                         const Eigen::MatrixXd* warm_start) {
    return solve_smallest_impl<double>(K, M, opts, warm_start);
}

EigResult solve_smallest(const SpMatC& K, const SpMatC& M, const EigOptions& opts,
                         const Eigen::MatrixXcd* warm_start) {
    return solve_smallest_impl<std::complex<double>>(K, M, opts, warm_start);
}

EigResult solve_smallest(const DiscreteSystem& system, const EigOptions& opts) {
    if (system.complex_field) return solve_smallest(system.Kc, system.Mc, opts);
    return solve_smallest(system.K, system.M, opts);
}

double hermitian_residual(const DiscreteSystem& system) {
    auto dev = [](const auto& A) {
        const auto D = (A - Eigen::SparseMatrix<typename std::decay_t<decltype(A)>::Scalar>(A.adjoint())).eval();
        double worst = 0.0;
        for (int c = 0; c < D.outerSize(); ++c)
            for (typename std::decay_t<decltype(D)>::InnerIterator it(D, c); it; ++it)
                worst = std::max(worst, std::abs(it.value()));
        return worst;
    };
    if (system.complex_field) return std::max(dev(system.Kc), dev(system.Mc));
    return std::max(dev(system.K), dev(system.M));
}

}  // namespace contrast
