// sector.hpp: fixed-(S, M) sector of the Tavis-Cummings model.
//
// Basis state k (k = 0..d-1) has k spin excitations and M-k photons:
// |n_b = M-k, S^z = k-S>. In this basis
//     H(Delta) = Delta S^z + g (b^dag S^- + b S^+)
// is real symmetric tridiagonal.
#pragma once

#include <Eigen/Dense>

#include <complex>

namespace tavis {

using cplx = std::complex<double>;

struct SectorParams {
    int two_s{1};         // 2S, so half-integer spins are exact
    int m{1};             // conserved excitation number M = b^dag b + S^z + S
    double g{1.0};        // coupling; energies are quoted in units of g
    double delta0{0.0};   // drive amplitude
    double omega{1.0};    // drive angular frequency (hbar = 1)

    // Builds params from a (possibly half-integer) spin value; throws ParameterError
    // if 2S is not an integer.
    static SectorParams from_spin(double spin, int m, double g = 1.0, double delta0 = 0.0,
                                  double omega = 1.0);

    double spin() const noexcept { return 0.5 * two_s; }
    void validate() const;
};

int sector_dimension(const SectorParams& params);

struct QuantumState {
    Eigen::VectorXcd amplitudes;
    double time{0.0};

    Eigen::Index dimension() const noexcept { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

// Real symmetric tridiagonal matrix; off(k) couples rows k and k+1.
struct TridiagonalMatrix {
    Eigen::VectorXd diag;
    Eigen::VectorXd off;

    Eigen::Index size() const noexcept { return diag.size(); }
    Eigen::MatrixXd dense() const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    double norm_bound() const;  // max row sum, bounds the spectral norm
};

TridiagonalMatrix build_hamiltonian(const SectorParams& params, double delta);

double boson_number(const QuantumState& state, const SectorParams& params);
double spin_excitation_number(const QuantumState& state, const SectorParams& params);

double energy_expectation(const QuantumState& state, const TridiagonalMatrix& h);

}  // namespace tavis
