// config.hpp: experiment configuration and its flat "key = value" file format.
//
//   # comment
//   format = tavis-config/1
//   spin = 6                      # S, integer or half-integer
//   excitations = 4               # M
//   coupling = 1                  # g
//   delta0 = 5                    # drive amplitude
//   frequencies = 3.57, 3.68, 3.75
//   drive = cosine                # cosine | constant
//   cycles = 4000                 # P
//   steps_per_cycle = 20000
//   output = out
//   seed = 12345
//   emit = timeseries, strobe_map, weights, classical_crosscheck
//   timeseries_cycles = 200       # cycles sampled in timeseries_<omega>.csv
//   samples_per_cycle = 50
//   crosscheck_cycles = 5
//   convergence_check = false
//
// Every key except `format` is optional and defaults to the values above
// (emit defaults to timeseries, strobe_map, weights).
#pragma once

#include "tavis/propagator.hpp"
#include "tavis/sector.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tavis {

inline constexpr std::string_view kConfigFormat = "tavis-config/1";

struct EmitFlags {
    bool timeseries{true};
    bool strobe_map{true};
    bool weights{true};
    bool classical_crosscheck{false};

    bool operator==(const EmitFlags&) const = default;
};

struct ExperimentConfig {
    SectorParams sector{12, 4, 1.0, 5.0, 1.0};  // omega is taken per frequency
    std::vector<double> frequencies{3.57, 3.68, 3.75};
    DriveProtocol::Form drive{DriveProtocol::Form::Cosine};
    long cycles{4000};
    int steps_per_cycle{kDefaultStepsPerCycle};
    std::string output_dir{"out"};
    std::uint64_t seed{12345};
    EmitFlags emit;
    long timeseries_cycles{200};
    int samples_per_cycle{50};
    long crosscheck_cycles{5};
    bool convergence_check{false};

    // Sector params with the drive frequency filled in.
    SectorParams params_for(double omega) const;
    DriveProtocol drive_for(double omega) const;
};

// Throws ConfigError on any violated invariant.
void validate(const ExperimentConfig& config);

std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Shortest round-trip decimal form of a double ("3.57", "0.5").
std::string format_shortest(double value);

}  // namespace tavis
