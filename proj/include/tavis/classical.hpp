// classical.hpp: the rapidity flow i dlambda_a/dt / lambda_a = f_a(lambda) and
// its x-variable form (lambda = 2 x^2), a complexified BC-type Inozemtsev system.
//
// Conventions: lambda_dot = 4 x x_dot, and
//     gamma(t) = (M - 1 - S) g^2 + Delta^2 / 4 - i Delta_dot / 2
// is the value for which the second derivative of the first-order x-flow equals
// -dV_a/dx_a.
#pragma once

#include "tavis/bethe.hpp"
#include "tavis/propagator.hpp"
#include "tavis/rapidities.hpp"
#include "tavis/sector.hpp"

#include <string>
#include <vector>

namespace tavis {

std::vector<cplx> rapidity_flow(const RapiditySet& lambdas, const SectorParams& params,
                                double delta_t);

enum class FlowStatus { Completed, Collision, ZeroRapidity, BlowUp, StepUnderflow };

const char* to_string(FlowStatus status);

struct FlowOptions {
    double t_start{0.0};
    double relative_tolerance{1e-12};
    double absolute_tolerance{1e-14};  // in units of g
    double output_interval{0.0};       // uniform grid spacing; 0 disables
    bool stroboscopic_samples{true};   // also sample at every t_p = 2 pi p / omega
    double collision_distance{1e-8};   // in units of g
    double blowup_norm{1e6};           // in units of g
    double initial_step{1e-3};
    long max_steps{50'000'000};
};

struct StepStats {
    long accepted{0};
    long rejected{0};
    double min_step{0.0};
};

struct ClassicalTrajectory {
    std::vector<double> times;
    std::vector<RapiditySet> lambdas_per_time;
    StepStats step_stats;
    FlowStatus status{FlowStatus::Completed};
    double halt_time{0.0};
    std::string diagnostic;

    bool completed() const noexcept { return status == FlowStatus::Completed; }
};

// Adaptive Dormand-Prince 5(4) integration of the rapidity flow. Integrates
// backwards when t_final < options.t_start. Halts (does not throw) on
// collisions, roots reaching zero, blow-up or step underflow.
ClassicalTrajectory integrate_flow(const RapiditySet& initial, const SectorParams& params,
                                   const DriveProtocol& drive, double t_final,
                                   const FlowOptions& options = {});

std::vector<cplx> x_variables(const RapiditySet& lambdas);

std::vector<cplx> x_flow(std::span<const cplx> x, const SectorParams& params, double delta_t);

cplx gamma_coefficient(const SectorParams& params, double delta_t, double delta_dot_t);

// V_alpha of the driven Inozemtsev potential, as a function of all x.
cplx inozemtsev_potential(std::span<const cplx> x, std::size_t alpha, const SectorParams& params,
                          double delta_t, double delta_dot_t);

// -dV_alpha/dx_alpha for every alpha.
std::vector<cplx> inozemtsev_force(std::span<const cplx> x, const SectorParams& params,
                                   double delta_t, double delta_dot_t);

struct CrosscheckReport {
    std::vector<double> times;           // stroboscopic times compared
    std::vector<double> distances;       // max paired-root distance per time
    std::vector<RapiditySet> quantum;    // extracted roots
    std::vector<RapiditySet> classical;  // integrated roots
    double max_distance{0.0};
    double tolerance{1e-4};
    FlowStatus status{FlowStatus::Completed};
    double halt_time{0.0};
    std::string diagnostic;

    bool passed() const noexcept {
        return status == FlowStatus::Completed && max_distance < tolerance;
    }
};

// Propagates `initial` quantum-mechanically and, independently, integrates the
// rapidity flow from its extracted roots; compares the two at t_p for
// p = 0..horizon_cycles.
CrosscheckReport crosscheck_flow(const QuantumState& initial, const SectorParams& params,
                                 const DriveProtocol& drive, long horizon_cycles,
                                 int steps_per_cycle = kDefaultStepsPerCycle,
                                 double tolerance = 1e-4);

}  // namespace tavis
