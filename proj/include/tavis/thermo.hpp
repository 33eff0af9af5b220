// thermo.hpp: cycle-averaged eigenstate weights and their Boltzmann fit.
#pragma once

#include "tavis/propagator.hpp"
#include "tavis/spectral.hpp"

#include <span>
#include <vector>

namespace tavis {

// One entry per eigenvalue cluster; degenerate eigenvalues are merged and
// their weights are projections onto the whole cluster subspace.
struct WeightDistribution {
    std::vector<double> c;
    std::vector<double> eigenvalues;  // cluster energies (mean of the cluster)
    std::vector<int> multiplicity;
    double mean_energy{0.0};
    long cycles{0};  // P, number of records averaged

    std::size_t size() const noexcept { return c.size(); }
};

struct BoltzmannFit {
    double beta{0.0};  // may be negative or +-infinity (saturated)
    std::vector<double> weights;
    double l1_distance{0.0};
    double kl_divergence{0.0};  // sum c log(c / c^B), diagnostic only
    double fitted_mean_energy{0.0};
    bool saturated{false};
};

struct RunRanking {
    double omega{0.0};
    double l1_distance{0.0};
};

// |<alpha|psi>|^2 / ‖psi‖^2 per cluster.
std::vector<double> instantaneous_weights(const QuantumState& state,
                                          const SpectralDecomposition& spectrum,
                                          std::span<const EigenCluster> clusters);

// c_alpha = (1/P) sum_{p=1..P} |<psi(t_p)|alpha>|^2 using a single eigenbasis,
// valid because Delta(t_p) = Delta_0 at every stroboscopic time. Record p = 0
// (the undriven initial state) is excluded.
WeightDistribution cycle_weights(std::span<const StroboscopicRecord> records,
                                 const SpectralDecomposition& spectrum);

// General path: diagonalizes H(Delta(t)) at each record's own time.
WeightDistribution cycle_weights(std::span<const StroboscopicRecord> records,
                                 const SectorParams& params, const DriveProtocol& drive);

// Mean energy of e^{-beta E}/Z; strictly decreasing in beta.
double boltzmann_mean_energy(std::span<const double> energies, double beta);
std::vector<double> boltzmann_weights(std::span<const double> energies, double beta);

BoltzmannFit fit_boltzmann(const WeightDistribution& weights);

struct FrequencyFit {
    double omega{0.0};
    BoltzmannFit fit;
};

// Sorted by L1 distance, ties broken by ascending frequency.
std::vector<RunRanking> compare_runs(std::span<const FrequencyFit> fits);

}  // namespace tavis
