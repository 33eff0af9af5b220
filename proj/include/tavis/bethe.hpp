// bethe.hpp: Bethe-ansatz representation of sector states.
//
// A Bethe state is prod_a B(lambda_a)|0> with B(lambda) = b^dag - g S^+ / lambda.
// Expanding the product gives amplitudes
//     psi_k = (-g)^k e_k(1/lambda) sqrt((M-k)!) sqrt(k! (2S)! / (2S-k)!),
// so the e_k, and hence the roots, follow from amplitude ratios psi_k/psi_0.
// All routines require M <= 2S, where the map is invertible.
#pragma once

#include "tavis/rapidities.hpp"
#include "tavis/sector.hpp"

#include <vector>

namespace tavis {

inline constexpr double kCollisionTolerance = 1e-10;  // in units of g

struct BetheState {
    QuantumState state;   // normalized
    double log_norm{0.0};  // log of the pre-normalization norm

    double norm() const;
};

struct BetheResidual {
    std::vector<cplx> f;
    double max_abs{0.0};
};

struct RefinedRoots {
    RapiditySet roots;
    int iterations{0};
    double max_residual{0.0};
};

// e_0..e_n of the given values (e_0 = 1).
std::vector<cplx> elementary_symmetric(std::span<const cplx> values);

// Roots of sum_k coeffs[k] z^(n-k) (coeffs[0] != 0): companion-matrix eigenvalues
// followed by two Newton polishing steps.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

BetheState bethe_amplitudes(const RapiditySet& lambdas, const SectorParams& params);

RapiditySet extract_rapidities(const QuantumState& state, const SectorParams& params);

BetheResidual bethe_residual(const RapiditySet& lambdas, const SectorParams& params,
                             double delta);

cplx bethe_energy(const RapiditySet& lambdas, const SectorParams& params, double delta);

// Relative norm of H|lambda> - { [E + sum f] |lambda> + g sum_a (f_a/lambda_a) S^+ |lambda \ a> }.
double offshell_identity_check(const RapiditySet& lambdas, const SectorParams& params,
                               double delta);

RefinedRoots refine_static_roots(const RapiditySet& lambdas, const SectorParams& params,
                                 double delta, int max_iterations = 100);

// Rejects diverged roots, zeros and collisions below kCollisionTolerance * g.
void require_regular(const RapiditySet& lambdas, const SectorParams& params);

}  // namespace tavis
