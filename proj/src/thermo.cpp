#include "tavis/thermo.hpp"

#include "tavis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace tavis {

std::vector<double> instantaneous_weights(const QuantumState& state,
                                          const SpectralDecomposition& spectrum,
                                          std::span<const EigenCluster> clusters) {
    if (state.dimension() != spectrum.size()) {
        throw DimensionError("weights: state and eigenbasis dimensions differ");
    }
    const Eigen::VectorXcd overlaps =
        spectrum.eigenvectors.transpose().cast<cplx>() * state.amplitudes;
    const double norm2 = state.amplitudes.squaredNorm();
    std::vector<double> w;
    w.reserve(clusters.size());
    for (const auto& cl : clusters) {
        double sum = 0.0;
        for (Eigen::Index k = cl.first; k < cl.first + cl.count; ++k) sum += std::norm(overlaps(k));
        w.push_back(sum / norm2);
    }
    return w;
}

namespace {

WeightDistribution start_distribution(std::span<const StroboscopicRecord> records) {
    if (records.size() < 2) {
        throw EmptyAverageError("cycle_weights: no driven cycles to average (P = 0)");
    }
    WeightDistribution out;
    out.cycles = static_cast<long>(records.size()) - 1;
    return out;
}

}  // namespace

WeightDistribution cycle_weights(std::span<const StroboscopicRecord> records,
                                 const SpectralDecomposition& spectrum) {
    auto out = start_distribution(records);
    const auto clusters = degenerate_clusters(spectrum);
    out.c.assign(clusters.size(), 0.0);
    for (const auto& cl : clusters) {
        out.eigenvalues.push_back(spectrum.eigenvalues.segment(cl.first, cl.count).mean());
        out.multiplicity.push_back(static_cast<int>(cl.count));
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto w = instantaneous_weights(records[r].state, spectrum, clusters);
        for (std::size_t a = 0; a < w.size(); ++a) out.c[a] += w[a];
    }
    for (auto& c : out.c) c /= static_cast<double>(out.cycles);
    for (std::size_t a = 0; a < out.c.size(); ++a) out.mean_energy += out.c[a] * out.eigenvalues[a];
    return out;
}

WeightDistribution cycle_weights(std::span<const StroboscopicRecord> records,
                                 const SectorParams& params, const DriveProtocol& drive) {
    auto out = start_distribution(records);
    // Per-time bases may cluster differently; report in the non-merged basis
    // with energies averaged over the records.
    const int d = sector_dimension(params);
    out.c.assign(d, 0.0);
    out.eigenvalues.assign(d, 0.0);
    out.multiplicity.assign(d, 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto spectrum = diagonalize(build_hamiltonian(params, drive.delta(records[r].t)));
        std::vector<EigenCluster> singletons;
        for (int k = 0; k < d; ++k) singletons.push_back({k, 1});
        const auto w = instantaneous_weights(records[r].state, spectrum, singletons);
        for (int a = 0; a < d; ++a) {
            out.c[a] += w[a];
            out.eigenvalues[a] += spectrum.eigenvalues(a);
            out.mean_energy += w[a] * spectrum.eigenvalues(a);
        }
    }
    const double p = static_cast<double>(out.cycles);
    for (int a = 0; a < d; ++a) {
        out.c[a] /= p;
        out.eigenvalues[a] /= p;
    }
    out.mean_energy /= p;
    return out;
}

std::vector<double> boltzmann_weights(std::span<const double> energies, double beta) {
    std::vector<double> w(energies.size(), 0.0);
    if (energies.empty()) return w;
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
    if (std::isinf(beta)) {
        const auto target = beta > 0 ? lo : hi;
        w[static_cast<std::size_t>(target - energies.begin())] = 1.0;
        return w;
    }
    // Shift by the dominant energy so the largest exponent is zero.
    const double ref = beta >= 0.0 ? *lo : *hi;
    double z = 0.0;
    for (std::size_t a = 0; a < energies.size(); ++a) {
        w[a] = std::exp(-beta * (energies[a] - ref));
        z += w[a];
    }
    for (auto& x : w) x /= z;
    return w;
}

double boltzmann_mean_energy(std::span<const double> energies, double beta) {
    const auto w = boltzmann_weights(energies, beta);
    double e = 0.0;
    for (std::size_t a = 0; a < w.size(); ++a) e += w[a] * energies[a];
    return e;
}

namespace {

void finish_fit(BoltzmannFit& fit, const WeightDistribution& dist, std::span<const double> energies) {
    // Multiplicity enters the Boltzmann weight of a merged cluster.
    fit.weights = boltzmann_weights(energies, fit.beta);
    if (!std::isinf(fit.beta)) {
        double z = 0.0;
        for (std::size_t a = 0; a < fit.weights.size(); ++a) {
            fit.weights[a] *= dist.multiplicity[a];
            z += fit.weights[a];
        }
        for (auto& w : fit.weights) w /= z;
    }
    fit.fitted_mean_energy = 0.0;
    fit.l1_distance = 0.0;
    fit.kl_divergence = 0.0;
    for (std::size_t a = 0; a < fit.weights.size(); ++a) {
        fit.fitted_mean_energy += fit.weights[a] * energies[a];
        fit.l1_distance += std::abs(dist.c[a] - fit.weights[a]);
        if (dist.c[a] > 0.0) {
            fit.kl_divergence += fit.weights[a] > 0.0
                                     ? dist.c[a] * std::log(dist.c[a] / fit.weights[a])
                                     : std::numeric_limits<double>::infinity();
        }
    }
}

}  // namespace

BoltzmannFit fit_boltzmann(const WeightDistribution& dist) {
    if (dist.c.empty() || dist.c.size() != dist.eigenvalues.size()) {
        throw DimensionError("fit_boltzmann: empty or inconsistent distribution");
    }
    const std::span<const double> energies = dist.eigenvalues;
    BoltzmannFit fit;
    const double e_min = *std::min_element(energies.begin(), energies.end());
    const double e_max = *std::max_element(energies.begin(), energies.end());
    const double width = e_max - e_min;
    if (width <= 0.0) {  // single level: any beta reproduces the mean
        fit.beta = 0.0;
        finish_fit(fit, dist, energies);
        return fit;
    }
    const double tol = 1e-10 * width;
    const double target = dist.mean_energy;
    if (target <= e_min + tol || target >= e_max - tol) {
        fit.saturated = true;
        fit.beta = target <= e_min + tol ? std::numeric_limits<double>::infinity()
                                         : -std::numeric_limits<double>::infinity();
        finish_fit(fit, dist, energies);
        return fit;
    }

    // Mean and variance of the energy, including cluster multiplicities.
    auto moments = [&](double beta) {
        auto w = boltzmann_weights(energies, beta);
        double z = 0.0, e = 0.0, e2 = 0.0;
        for (std::size_t a = 0; a < w.size(); ++a) {
            w[a] *= dist.multiplicity[a];
            z += w[a];
            e += w[a] * energies[a];
            e2 += w[a] * energies[a] * energies[a];
        }
        e /= z;
        return std::pair{e, std::max(e2 / z - e * e, 0.0)};
    };
    auto mean_at = [&](double beta) { return moments(beta).first; };

    // Bracket: mean_at is decreasing, so grow until it straddles the target.
    double lo = -1.0 / width, hi = 1.0 / width;
    while (mean_at(hi) > target && hi < 1e300) {
        lo = hi;
        hi *= 2.0;
    }
    while (mean_at(lo) < target && lo > -1e300) {
        hi = lo;
        lo *= 2.0;
    }

    // Safeguarded Newton: d(mean)/d(beta) = -Var(E).
    double beta = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const auto [mean, var] = moments(beta);
        const double f = mean - target;
        if (std::abs(f) <= 1e-12 * width) break;
        if (f > 0.0) lo = beta;
        else hi = beta;
        double next = var > 0.0 ? beta + f / var : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        beta = next;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(beta))) break;
    }
    fit.beta = beta;
    finish_fit(fit, dist, energies);
    return fit;
}

std::vector<RunRanking> compare_runs(std::span<const FrequencyFit> fits) {
    std::vector<RunRanking> out;
    out.reserve(fits.size());
    for (const auto& f : fits) out.push_back({f.omega, f.fit.l1_distance});
    std::sort(out.begin(), out.end(), [](const RunRanking& a, const RunRanking& b) {
        return a.omega < b.omega;
    });
    std::stable_sort(out.begin(), out.end(), [](const RunRanking& a, const RunRanking& b) {
        return a.l1_distance < b.l1_distance;
    });
    return out;
}

}  // namespace tavis
