// spectral.hpp: eigendecomposition of the sector Hamiltonian.
#pragma once

#include "tavis/sector.hpp"

#include <Eigen/Dense>

#include <vector>

namespace tavis {

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns, largest |component| positive

    Eigen::Index size() const noexcept { return eigenvalues.size(); }
    double spectral_norm() const;  // max |E|
};

// Contiguous run [first, first + count) of eigenvalues closer than the
// degeneracy tolerance.
struct EigenCluster {
    Eigen::Index first{0};
    Eigen::Index count{1};
};

SpectralDecomposition diagonalize(const TridiagonalMatrix& h);

// Largest eigen-residual ||H v - E v|| and orthonormality defect; used by the
// invariant check and by tests.
struct DecompositionDefects {
    double residual{0.0};
    double orthonormality{0.0};
};
DecompositionDefects decomposition_defects(const TridiagonalMatrix& h,
                                           const SpectralDecomposition& decomp);

std::vector<EigenCluster> degenerate_clusters(const SpectralDecomposition& decomp,
                                              double relative_gap = 1e-10);

QuantumState ground_state(const SectorParams& params, double delta);

}  // namespace tavis
