// experiment.hpp: single-frequency simulation pipeline and plot-ready CSV output.
#pragma once

#include "tavis/classical.hpp"
#include "tavis/config.hpp"
#include "tavis/propagator.hpp"
#include "tavis/spectral.hpp"
#include "tavis/thermo.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tavis {

inline constexpr std::string_view kCsvFormat = "tavis-csv/1";

struct FrequencyResult {
    double omega{0.0};
    std::vector<StroboscopicRecord> records;
    std::vector<TimeSample> timeseries;
    SpectralDecomposition spectrum;  // H(Delta_0), the stroboscopic eigenbasis
    WeightDistribution weights;
    BoltzmannFit fit;
    double ground_energy{0.0};
    double absorbed_energy{0.0};  // cycle-averaged mean energy minus ground energy
    double nb_min{0.0};
    double nb_max{0.0};
    double max_norm_defect{0.0};
    long failed_extractions{0};
    std::optional<double> convergence_deviation;
    std::optional<CrosscheckReport> crosscheck;
};

// Propagation, per-cycle rapidities and weights, Boltzmann fit and the
// optional classical cross-check for one frequency. Pure computation.
FrequencyResult simulate_frequency(const ExperimentConfig& config, double omega);

// Extracts roots for every record and orders each cycle's roots to follow the
// previous cycle's (pairing index = track label). Records whose amplitudes do
// not define finite rapidities are left without a set.
long annotate_rapidities(std::vector<StroboscopicRecord>& records, const SectorParams& params);

// Runs the quantum pipeline and the classical flow side by side from the
// ground state at Delta_0.
CrosscheckReport crosscheck_classical(const ExperimentConfig& config, double omega,
                                      long horizon_cycles);

// File writers; each throws IoError when the file cannot be written.
void write_timeseries(const std::filesystem::path& dir, const ExperimentConfig& config,
                      const FrequencyResult& result);
void write_strobe_map(const std::filesystem::path& dir, const ExperimentConfig& config,
                      const FrequencyResult& result);
void write_weights(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const FrequencyResult& result);
void write_crosscheck(const std::filesystem::path& dir, const ExperimentConfig& config,
                      double omega, const CrosscheckReport& report);
void write_summary(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const std::vector<FrequencyResult>& results);

std::string output_filename(std::string_view panel, double omega);

// Simulates all frequencies (in parallel) and writes every requested file.
std::vector<FrequencyResult> run_experiment(const ExperimentConfig& config);

}  // namespace tavis
