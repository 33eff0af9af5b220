#include "tavis/experiment.hpp"

#include "tavis/bethe.hpp"
#include "tavis/errors.hpp"
#include "tavis/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace tavis {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool bethe_available(const SectorParams& p) { return p.m <= p.two_s; }

// Opens `path` and writes the common metadata header.
class CsvFile {
public:
    CsvFile(const std::filesystem::path& path, const ExperimentConfig& config) : path_(path) {
        out_.open(path, std::ios::out | std::ios::trunc);
        if (!out_) throw IoError("cannot open " + path.string() + " for writing");
        out_ << "# format: " << kCsvFormat << '\n';
        std::istringstream cfg(serialize_config(config));
        for (std::string line; std::getline(cfg, line);) out_ << "# config: " << line << '\n';
    }

    void meta(std::string_view key, const std::string& value) {
        out_ << "# " << key << ": " << value << '\n';
    }
    std::ofstream& stream() { return out_; }

    void close() {
        out_.flush();
        if (!out_) throw IoError("failed while writing " + path_.string());
        out_.close();
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace

std::string output_filename(std::string_view panel, double omega) {
    return std::string(panel) + "_" + format_shortest(omega) + ".csv";
}

long annotate_rapidities(std::vector<StroboscopicRecord>& records, const SectorParams& params) {
    long failures = 0;
    const RapiditySet* previous = nullptr;
    for (auto& rec : records) {
        try {
            RapiditySet roots = extract_rapidities(rec.state, params);
            if (previous != nullptr) {
                const auto perm = match_roots(previous->lambdas, roots.lambdas);
                RapiditySet ordered = roots;
                for (std::size_t i = 0; i < perm.size(); ++i) {
                    ordered.lambdas[i] = roots.lambdas[perm[i]];
                    ordered.diverged[i] = roots.diverged[perm[i]];
                }
                roots = std::move(ordered);
            }
            rec.rapidities = std::move(roots);
            previous = &*rec.rapidities;
        } catch (const DegenerateAmplitudeError&) {
            rec.rapidities.reset();
            ++failures;
        }
    }
    return failures;
}

CrosscheckReport crosscheck_classical(const ExperimentConfig& config, double omega,
                                      long horizon_cycles) {
    const SectorParams params = config.params_for(omega);
    if (!bethe_available(params)) {
        throw ParameterError("crosscheck requires M <= 2S");
    }
    const DriveProtocol drive = config.drive_for(omega);
    const QuantumState start = ground_state(params, drive.delta(0.0));
    return crosscheck_flow(start, params, drive, horizon_cycles, config.steps_per_cycle);
}

FrequencyResult simulate_frequency(const ExperimentConfig& config, double omega) {
    validate(config);
    const SectorParams params = config.params_for(omega);
    const DriveProtocol drive = config.drive_for(omega);

    FrequencyResult result;
    result.omega = omega;

    RunOptions options;
    options.cycles = config.cycles;
    options.steps_per_cycle = config.steps_per_cycle;
    if (config.emit.timeseries && config.timeseries_cycles > 0) {
        options.sample_stride = std::max(1, config.steps_per_cycle / config.samples_per_cycle);
        options.sample_cycles = std::min(config.timeseries_cycles, config.cycles);
        options.sampler = [&result](const TimeSample& s) { result.timeseries.push_back(s); };
    }
    result.records = run(params, drive, options);

    result.spectrum = diagonalize(build_hamiltonian(params, drive.delta(0.0)));
    const auto clusters = degenerate_clusters(result.spectrum);
    for (auto& rec : result.records) {
        rec.weights = instantaneous_weights(rec.state, result.spectrum, clusters);
    }
    result.weights = cycle_weights(result.records, result.spectrum);
    result.fit = fit_boltzmann(result.weights);
    result.ground_energy = result.spectrum.eigenvalues(0);
    result.absorbed_energy = result.weights.mean_energy - result.ground_energy;

    result.nb_min = std::numeric_limits<double>::infinity();
    result.nb_max = -std::numeric_limits<double>::infinity();
    for (const auto& rec : result.records) {
        result.nb_min = std::min(result.nb_min, rec.boson_number);
        result.nb_max = std::max(result.nb_max, rec.boson_number);
        result.max_norm_defect = std::max(result.max_norm_defect, rec.norm_defect);
    }
    for (const auto& s : result.timeseries) {
        result.nb_min = std::min(result.nb_min, s.boson_number);
        result.nb_max = std::max(result.nb_max, s.boson_number);
    }

    if (config.emit.strobe_map && bethe_available(params)) {
        result.failed_extractions = annotate_rapidities(result.records, params);
    }
    if (config.convergence_check) {
        const auto fine = run(params, drive, config.cycles, 2 * config.steps_per_cycle);
        double worst = 0.0;
        for (std::size_t i = 0; i < fine.size(); ++i) {
            worst = std::max(worst, (fine[i].state.amplitudes - result.records[i].state.amplitudes).norm());
        }
        result.convergence_deviation = worst;
    }
    if (config.emit.classical_crosscheck && bethe_available(params)) {
        result.crosscheck = crosscheck_classical(config, omega, config.crosscheck_cycles);
    }
    return result;
}

void write_timeseries(const std::filesystem::path& dir, const ExperimentConfig& config,
                      const FrequencyResult& result) {
    CsvFile file(dir / output_filename("timeseries", result.omega), config);
    file.meta("omega", format_shortest(result.omega));
    auto& out = file.stream();
    out << "t,N_b,mean_energy,norm_defect\n";
    for (const auto& s : result.timeseries) {
        out << num(s.t) << ',' << num(s.boson_number) << ',' << num(s.mean_energy) << ','
            << num(s.norm_defect) << '\n';
    }
    file.close();
}

void write_strobe_map(const std::filesystem::path& dir, const ExperimentConfig& config,
                      const FrequencyResult& result) {
    CsvFile file(dir / output_filename("strobe", result.omega), config);
    file.meta("omega", format_shortest(result.omega));
    file.meta("failed_extractions", std::to_string(result.failed_extractions));
    auto& out = file.stream();
    out << "p,alpha,re_lambda,im_lambda,diverged\n";
    for (const auto& rec : result.records) {
        if (!rec.rapidities) continue;
        const auto& r = *rec.rapidities;
        for (std::size_t a = 0; a < r.size(); ++a) {
            out << rec.p << ',' << a << ',' << num(r.lambdas[a].real()) << ','
                << num(r.lambdas[a].imag()) << ',' << (r.diverged[a] ? 1 : 0) << '\n';
        }
    }
    file.close();
}

void write_weights(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const FrequencyResult& result) {
    CsvFile file(dir / output_filename("weights", result.omega), config);
    file.meta("omega", format_shortest(result.omega));
    file.meta("cycles_averaged", std::to_string(result.weights.cycles));
    file.meta("mean_energy", num(result.weights.mean_energy));
    file.meta("beta", num(result.fit.beta));
    file.meta("l1_distance", num(result.fit.l1_distance));
    file.meta("kl_divergence", num(result.fit.kl_divergence));
    file.meta("saturated", result.fit.saturated ? "true" : "false");
    auto& out = file.stream();
    out << "alpha,E_alpha,c_alpha,c_boltzmann,multiplicity\n";
    for (std::size_t a = 0; a < result.weights.size(); ++a) {
        out << a << ',' << num(result.weights.eigenvalues[a]) << ',' << num(result.weights.c[a])
            << ',' << num(result.fit.weights[a]) << ',' << result.weights.multiplicity[a] << '\n';
    }
    file.close();
}

void write_crosscheck(const std::filesystem::path& dir, const ExperimentConfig& config,
                      double omega, const CrosscheckReport& report) {
    CsvFile file(dir / output_filename("crosscheck", omega), config);
    file.meta("omega", format_shortest(omega));
    file.meta("status", to_string(report.status));
    if (report.status != FlowStatus::Completed) {
        file.meta("halt_time", num(report.halt_time));
        file.meta("diagnostic", report.diagnostic);
    }
    file.meta("tolerance", num(report.tolerance));
    file.meta("max_distance", num(report.max_distance));
    file.meta("passed", report.passed() ? "true" : "false");
    auto& out = file.stream();
    out << "p,t,max_paired_distance\n";
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        out << i << ',' << num(report.times[i]) << ',' << num(report.distances[i]) << '\n';
    }
    file.close();
}

void write_summary(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const std::vector<FrequencyResult>& results) {
    CsvFile file(dir / "summary.csv", config);
    auto& out = file.stream();
    out << "omega,nb_min,nb_max,ground_energy,mean_energy,absorbed_energy,beta,l1_distance,"
           "kl_divergence,max_norm_defect,convergence_deviation,crosscheck_max_distance\n";
    for (const auto& r : results) {
        out << format_shortest(r.omega) << ',' << num(r.nb_min) << ',' << num(r.nb_max) << ','
            << num(r.ground_energy) << ',' << num(r.weights.mean_energy) << ','
            << num(r.absorbed_energy) << ',' << num(r.fit.beta) << ',' << num(r.fit.l1_distance)
            << ',' << num(r.fit.kl_divergence) << ',' << num(r.max_norm_defect) << ','
            << (r.convergence_deviation ? num(*r.convergence_deviation) : "") << ','
            << (r.crosscheck ? num(r.crosscheck->max_distance) : "") << '\n';
    }
    file.close();
}

std::vector<FrequencyResult> run_experiment(const ExperimentConfig& config) {
    validate(config);
    const std::filesystem::path dir(config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    auto results = sweep_parallel(config);
    for (const auto& r : results) {
        if (config.emit.timeseries) write_timeseries(dir, config, r);
        if (config.emit.strobe_map) write_strobe_map(dir, config, r);
        if (config.emit.weights) write_weights(dir, config, r);
        if (r.crosscheck) write_crosscheck(dir, config, r.omega, *r.crosscheck);
    }
    write_summary(dir, config, results);
    return results;
}

}  // namespace tavis
