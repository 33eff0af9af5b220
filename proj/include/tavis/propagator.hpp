// propagator.hpp: fixed-step RK4 integration of i dpsi/dt = H(Delta(t)) psi.
#pragma once

#include "tavis/rapidities.hpp"
#include "tavis/sector.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace tavis {

inline constexpr int kDefaultStepsPerCycle = 20000;

struct DriveProtocol {
    enum class Form { Cosine, Constant };

    double delta0{0.0};
    double omega{1.0};
    Form form{Form::Cosine};

    static DriveProtocol cosine(const SectorParams& params) {
        return {params.delta0, params.omega, Form::Cosine};
    }
    static DriveProtocol constant(double delta, double omega = 1.0) {
        return {delta, omega, Form::Constant};
    }

    double delta(double t) const;
    double delta_dot(double t) const;
    double period() const;
    // t_p = 2 pi p / omega, computed from p directly.
    double cycle_time(long p) const;
};

struct StroboscopicRecord {
    long p{0};
    double t{0.0};
    QuantumState state;
    double boson_number{0.0};
    double mean_energy{0.0};
    double norm_defect{0.0};                 // |‖psi‖ - 1|
    std::optional<RapiditySet> rapidities;   // filled by the Bethe extraction
    std::vector<double> weights;             // filled by the thermo module
};

// In-cycle observation passed to a sampling hook.
struct TimeSample {
    long cycle{0};
    double t{0.0};
    double boson_number{0.0};
    double mean_energy{0.0};
    double norm_defect{0.0};
};

struct RunOptions {
    long cycles{1};
    int steps_per_cycle{kDefaultStepsPerCycle};
    // Hook invoked every `sample_stride` steps during the first `sample_cycles`
    // cycles (including the cycle start); disabled when sample_stride <= 0.
    int sample_stride{0};
    long sample_cycles{0};
    std::function<void(const TimeSample&)> sampler;
    double norm_failure_threshold{1e-6};
};

// RK4 stepper with a reusable workspace; one instance per thread.
class Rk4Propagator {
public:
    explicit Rk4Propagator(const SectorParams& params);

    // Advances `amplitudes` in place from t to t + dt under the given drive.
    void advance(Eigen::VectorXcd& amplitudes, const DriveProtocol& drive, double t,
                 double dt);

private:
    void derivative(const Eigen::VectorXcd& psi, double delta, Eigen::VectorXcd& out) const;

    Eigen::VectorXd spin_z_;   // k - S
    Eigen::VectorXd coupling_; // off-diagonal of the g term
    Eigen::VectorXcd k1_, k2_, k3_, k4_, tmp_;
};

QuantumState step(const QuantumState& state, const SectorParams& params,
                  const DriveProtocol& drive, double t, double dt);

std::vector<StroboscopicRecord> run(const SectorParams& params, const DriveProtocol& drive,
                                    const RunOptions& options);

// Convenience overload without in-cycle sampling.
std::vector<StroboscopicRecord> run(const SectorParams& params, const DriveProtocol& drive,
                                    long cycles, int steps_per_cycle = kDefaultStepsPerCycle);

// Propagates `initial` over the given number of whole cycles and returns the
// final state (no records).
QuantumState propagate_cycles(const QuantumState& initial, const SectorParams& params,
                              const DriveProtocol& drive, long cycles, int steps_per_cycle);

// Max deviation between stroboscopic states at steps_per_cycle and twice that.
double convergence_check(const SectorParams& params, const DriveProtocol& drive, long cycles,
                         int steps_per_cycle);

}  // namespace tavis
