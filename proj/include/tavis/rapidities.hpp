#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tavis {

// M rapidities of a Bethe product state. A diverged root (lambda = infinity,
// B(lambda) = b^dag) is stored as (inf, 0) with its flag set.
struct RapiditySet {
    std::vector<std::complex<double>> lambdas;
    std::vector<bool> diverged;
    double condition{1.0};  // 1 + sum |e_k| of the monic root polynomial

    static RapiditySet finite(std::vector<std::complex<double>> values);

    std::size_t size() const noexcept { return lambdas.size(); }
    std::size_t diverged_count() const noexcept;
    bool all_finite() const noexcept { return diverged_count() == 0; }
};

// Optimal assignment of `candidate` onto `reference` (minimal summed distance).
// Returns perm with candidate[perm[i]] paired to reference[i]. Exhaustive for
// up to 8 roots, greedy beyond.
std::vector<std::size_t> match_roots(std::span<const std::complex<double>> reference,
                                     std::span<const std::complex<double>> candidate);

// Largest |reference[i] - candidate[perm[i]]| under the optimal pairing.
double paired_distance(std::span<const std::complex<double>> reference,
                       std::span<const std::complex<double>> candidate);

}  // namespace tavis
