#include "tavis/spectral.hpp"

#include "tavis/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace tavis {

double SpectralDecomposition::spectral_norm() const {
    return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

SpectralDecomposition diagonalize(const TridiagonalMatrix& h) {
    const Eigen::Index n = h.size();
    if (n < 1) throw DimensionError("diagonalize: empty matrix");
    if (h.off.size() != n - 1) throw DimensionError("diagonalize: off-diagonal size");

    SpectralDecomposition out;
    if (n == 1) {
        out.eigenvalues = h.diag;
        out.eigenvectors = Eigen::MatrixXd::Ones(1, 1);
        return out;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(h.diag, h.off, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: tridiagonal QL iteration failed");
    }
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();

    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index imax = 0;
        out.eigenvectors.col(c).cwiseAbs().maxCoeff(&imax);
        if (out.eigenvectors(imax, c) < 0.0) out.eigenvectors.col(c) *= -1.0;
    }

#ifdef TAVIS_CHECK_INVARIANTS
    const auto defects = decomposition_defects(h, out);
    const double scale = std::max(h.norm_bound(), 1e-300);
    if (defects.residual > 1e-10 * scale || defects.orthonormality > 1e-12) {
        throw std::logic_error("diagonalize: eigen-residual invariant violated");
    }
#endif
    return out;
}

DecompositionDefects decomposition_defects(const TridiagonalMatrix& h,
                                           const SpectralDecomposition& decomp) {
    DecompositionDefects out;
    const Eigen::MatrixXd dense = h.dense();
    for (Eigen::Index c = 0; c < decomp.size(); ++c) {
        const Eigen::VectorXd v = decomp.eigenvectors.col(c);
        out.residual = std::max(out.residual, (dense * v - decomp.eigenvalues(c) * v).norm());
    }
    const Eigen::MatrixXd gram = decomp.eigenvectors.transpose() * decomp.eigenvectors;
    out.orthonormality =
        (gram - Eigen::MatrixXd::Identity(decomp.size(), decomp.size())).cwiseAbs().maxCoeff();
    return out;
}

std::vector<EigenCluster> degenerate_clusters(const SpectralDecomposition& decomp,
                                              double relative_gap) {
    std::vector<EigenCluster> clusters;
    const Eigen::Index n = decomp.size();
    if (n == 0) return clusters;
    const double tol = relative_gap * decomp.spectral_norm();
    clusters.push_back({0, 1});
    for (Eigen::Index k = 1; k < n; ++k) {
        if (decomp.eigenvalues(k) - decomp.eigenvalues(k - 1) <= tol) {
            ++clusters.back().count;
        } else {
            clusters.push_back({k, 1});
        }
    }
    return clusters;
}

QuantumState ground_state(const SectorParams& params, double delta) {
    const auto decomp = diagonalize(build_hamiltonian(params, delta));
    QuantumState state;
    state.amplitudes = decomp.eigenvectors.col(0).cast<cplx>();
    state.time = 0.0;
    return state;
}

}  // namespace tavis
