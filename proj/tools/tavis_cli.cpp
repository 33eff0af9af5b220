// tavis: driven Tavis-Cummings experiment runner.
//
//   tavis run <config> [--out DIR] [--convergence-check]
//   tavis crosscheck <config> --cycles N [--out DIR]
//   tavis selftest
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.

#include "tavis/errors.hpp"
#include "tavis/experiment.hpp"
#include "tavis/selftest.hpp"
#include "tavis/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

tavis::ExperimentConfig load(const std::string& path, const std::optional<std::string>& out) {
    auto config = tavis::load_config(path);
    if (out) config.output_dir = *out;
    tavis::validate(config);
    return config;
}

int cmd_run(const std::string& path, const std::optional<std::string>& out, bool convergence) {
    auto config = load(path, out);
    if (convergence) config.convergence_check = true;
    std::printf("running %zu frequencies, P = %ld, %d steps/cycle, %d thread(s)\n",
                config.frequencies.size(), config.cycles, config.steps_per_cycle,
                tavis::sweep_threads());
    const auto results = tavis::run_experiment(config);
    int status = 0;
    for (const auto& r : results) {
        std::printf("omega = %-6g  N_b in [%.4f, %.4f]  absorbed = %.6g  beta = %.6g  L1 = %.6g  KL = %.6g  norm drift = %.2e\n",
                    r.omega, r.nb_min, r.nb_max, r.absorbed_energy, r.fit.beta, r.fit.l1_distance,
                    r.fit.kl_divergence, r.max_norm_defect);
        if (r.convergence_deviation) {
            std::printf("    convergence check: max stroboscopic deviation at 2x resolution = %.3e\n",
                        *r.convergence_deviation);
        }
        if (r.crosscheck) {
            std::printf("    classical crosscheck: %s (max distance %.3e)\n",
                        r.crosscheck->passed() ? "pass" : "FAIL", r.crosscheck->max_distance);
            if (!r.crosscheck->passed()) status = kExitNumerical;
        }
    }
    std::printf("output written to %s\n", config.output_dir.c_str());
    return status;
}

int cmd_crosscheck(const std::string& path, const std::optional<std::string>& out, long cycles) {
    const auto config = load(path, out);
    const std::filesystem::path dir(config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw tavis::IoError("cannot create output directory " + dir.string());
    int status = 0;
    for (double omega : config.frequencies) {
        const auto report = tavis::crosscheck_classical(config, omega, cycles);
        tavis::write_crosscheck(dir, config, omega, report);
        std::printf("omega = %-6g  %s  max paired distance = %.3e over %zu samples",
                    omega, report.passed() ? "pass" : "FAIL", report.max_distance,
                    report.times.size());
        if (report.status != tavis::FlowStatus::Completed) {
            std::printf("  [%s]", report.diagnostic.c_str());
        }
        std::printf("\n");
        if (!report.passed()) status = kExitNumerical;
    }
    return status;
}

int cmd_selftest(std::uint64_t seed) {
    int status = 0;
    for (const auto& r : tavis::run_selftest(seed)) {
        std::printf("[%s] %s (%s)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (!r.passed) status = kExitNumerical;
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven Tavis-Cummings simulator: quantum propagation, Bethe rapidities, "
                 "cycle-averaged weights"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    bool convergence = false;
    long cycles = 5;
    std::uint64_t seed = 12345;

    auto* run_cmd = app.add_subcommand("run", "Run the configured frequency sweep");
    run_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out_dir, "Output directory (overrides the config)");
    run_cmd->add_flag("--convergence-check", convergence,
                      "Repeat each run at twice the resolution and report the deviation");

    auto* cross_cmd = app.add_subcommand("crosscheck", "Compare the classical rapidity flow with the quantum evolution");
    cross_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    cross_cmd->add_option("--cycles", cycles, "Number of drive cycles")->required()->check(CLI::NonNegativeNumber);
    cross_cmd->add_option("--out", out_dir, "Output directory (overrides the config)");

    auto* self_cmd = app.add_subcommand("selftest", "Run the invariant checks");
    self_cmd->add_option("--seed", seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run_cmd) return cmd_run(config_path, out_dir, convergence);
        if (*cross_cmd) return cmd_crosscheck(config_path, out_dir, cycles);
        if (*self_cmd) return cmd_selftest(seed);
    } catch (const tavis::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const tavis::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const tavis::ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
