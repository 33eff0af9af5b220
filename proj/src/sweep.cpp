#include "tavis/sweep.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tavis {

std::vector<FrequencyResult> sweep_serial(const ExperimentConfig& config) {
    std::vector<FrequencyResult> out;
    out.reserve(config.frequencies.size());
    for (double omega : config.frequencies) out.push_back(simulate_frequency(config, omega));
    return out;
}

std::vector<FrequencyResult> sweep_parallel(const ExperimentConfig& config) {
    const auto n = static_cast<long>(config.frequencies.size());
    std::vector<FrequencyResult> out(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = simulate_frequency(config, config.frequencies[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

int sweep_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace tavis
