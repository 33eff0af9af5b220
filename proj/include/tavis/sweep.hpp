// sweep.hpp: frequency sweeps. Each frequency is an independent sequential
// run, so the sweep parallelizes over frequencies; the serial version is the
// reference the parallel kernel is tested against.
#pragma once

#include "tavis/experiment.hpp"

#include <vector>

namespace tavis {

std::vector<FrequencyResult> sweep_serial(const ExperimentConfig& config);

// OpenMP parallel-for over frequencies; results are in config order and
// bit-identical to sweep_serial.
std::vector<FrequencyResult> sweep_parallel(const ExperimentConfig& config);

int sweep_threads();

}  // namespace tavis
