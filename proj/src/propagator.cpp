#include "tavis/propagator.hpp"

#include "tavis/errors.hpp"
#include "tavis/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tavis {

double DriveProtocol::delta(double t) const {
    return form == Form::Cosine ? delta0 * std::cos(omega * t) : delta0;
}

double DriveProtocol::delta_dot(double t) const {
    return form == Form::Cosine ? -delta0 * omega * std::sin(omega * t) : 0.0;
}

double DriveProtocol::period() const { return 2.0 * std::numbers::pi / omega; }

double DriveProtocol::cycle_time(long p) const {
    return 2.0 * std::numbers::pi * static_cast<double>(p) / omega;
}

Rk4Propagator::Rk4Propagator(const SectorParams& params) {
    const auto h = build_hamiltonian(params, 1.0);
    spin_z_ = h.diag;  // Delta = 1 isolates the S^z diagonal
    coupling_ = h.off;
    const auto d = spin_z_.size();
    k1_.resize(d);
    k2_.resize(d);
    k3_.resize(d);
    k4_.resize(d);
    tmp_.resize(d);
}

void Rk4Propagator::derivative(const Eigen::VectorXcd& psi, double delta,
                               Eigen::VectorXcd& out) const {
    // out = -i H psi
    const Eigen::Index n = psi.size();
    for (Eigen::Index k = 0; k < n; ++k) {
        cplx acc = delta * spin_z_(k) * psi(k);
        if (k > 0) acc += coupling_(k - 1) * psi(k - 1);
        if (k + 1 < n) acc += coupling_(k) * psi(k + 1);
        out(k) = cplx{acc.imag(), -acc.real()};
    }
}

void Rk4Propagator::advance(Eigen::VectorXcd& psi, const DriveProtocol& drive, double t,
                            double dt) {
    if (psi.size() != spin_z_.size()) throw DimensionError("advance: dimension mismatch");
    const double d0 = drive.delta(t);
    const double dh = drive.delta(t + 0.5 * dt);
    const double d1 = drive.delta(t + dt);

    derivative(psi, d0, k1_);
    tmp_ = psi + (0.5 * dt) * k1_;
    derivative(tmp_, dh, k2_);
    tmp_ = psi + (0.5 * dt) * k2_;
    derivative(tmp_, dh, k3_);
    tmp_ = psi + dt * k3_;
    derivative(tmp_, d1, k4_);
    psi += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

QuantumState step(const QuantumState& state, const SectorParams& params,
                  const DriveProtocol& drive, double t, double dt) {
    if (!(dt > 0.0)) throw ParameterError("step: dt must be positive");
    Rk4Propagator prop(params);
    QuantumState out = state;
    prop.advance(out.amplitudes, drive, t, dt);
    out.time = t + dt;
    return out;
}

namespace {

StroboscopicRecord make_record(long p, double t, const Eigen::VectorXcd& psi,
                               const SectorParams& params, const TridiagonalMatrix& h_strobe) {
    StroboscopicRecord rec;
    rec.p = p;
    rec.t = t;
    rec.state.amplitudes = psi;
    rec.state.time = t;
    rec.boson_number = boson_number(rec.state, params);
    rec.mean_energy = energy_expectation(rec.state, h_strobe);
    rec.norm_defect = std::abs(psi.norm() - 1.0);
    return rec;
}

void validate_options(const RunOptions& options) {
    if (options.cycles < 0) throw ParameterError("run: cycles must be non-negative");
    if (options.steps_per_cycle < 1) throw ParameterError("run: steps_per_cycle must be >= 1");
}

}  // namespace

std::vector<StroboscopicRecord> run(const SectorParams& params, const DriveProtocol& drive,
                                    const RunOptions& options) {
    params.validate();
    validate_options(options);

    const double delta_start = drive.delta(0.0);
    Eigen::VectorXcd psi = ground_state(params, delta_start).amplitudes;
    // Delta(t_p) = Delta(0) at every stroboscopic time.
    const TridiagonalMatrix h_strobe = build_hamiltonian(params, delta_start);

    std::vector<StroboscopicRecord> records;
    records.reserve(static_cast<std::size_t>(options.cycles) + 1);
    records.push_back(make_record(0, 0.0, psi, params, h_strobe));

    Rk4Propagator prop(params);
    const int n = options.steps_per_cycle;
    const double dt = drive.period() / n;
    const bool sampling = options.sample_stride > 0 && options.sampler;
    QuantumState probe;

    for (long p = 0; p < options.cycles; ++p) {
        const double t0 = drive.cycle_time(p);
        const bool sample_cycle = sampling && p < options.sample_cycles;
        for (int j = 0; j < n; ++j) {
            const double t = t0 + j * dt;
            if (sample_cycle && j % options.sample_stride == 0) {
                probe.amplitudes = psi;
                probe.time = t;
                TimeSample s;
                s.cycle = p;
                s.t = t;
                s.boson_number = boson_number(probe, params);
                s.mean_energy = energy_expectation(probe, build_hamiltonian(params, drive.delta(t)));
                s.norm_defect = std::abs(psi.norm() - 1.0);
                options.sampler(s);
            }
            prop.advance(psi, drive, t, dt);
        }
        const double t_end = drive.cycle_time(p + 1);
        records.push_back(make_record(p + 1, t_end, psi, params, h_strobe));
        if (records.back().norm_defect > options.norm_failure_threshold) {
            throw NormFailure("run: norm deviates by " + std::to_string(records.back().norm_defect) +
                              " after cycle " + std::to_string(p + 1) +
                              "; increase steps_per_cycle");
        }
    }
    return records;
}

std::vector<StroboscopicRecord> run(const SectorParams& params, const DriveProtocol& drive,
                                    long cycles, int steps_per_cycle) {
    RunOptions options;
    options.cycles = cycles;
    options.steps_per_cycle = steps_per_cycle;
    return run(params, drive, options);
}

QuantumState propagate_cycles(const QuantumState& initial, const SectorParams& params,
                              const DriveProtocol& drive, long cycles, int steps_per_cycle) {
    if (steps_per_cycle < 1) throw ParameterError("steps_per_cycle must be >= 1");
    Rk4Propagator prop(params);
    Eigen::VectorXcd psi = initial.amplitudes;
    const double dt = drive.period() / steps_per_cycle;
    for (long p = 0; p < cycles; ++p) {
        const double t0 = drive.cycle_time(p);
        for (int j = 0; j < steps_per_cycle; ++j) prop.advance(psi, drive, t0 + j * dt, dt);
    }
    return {psi, drive.cycle_time(cycles)};
}

double convergence_check(const SectorParams& params, const DriveProtocol& drive, long cycles,
                         int steps_per_cycle) {
    const auto coarse = run(params, drive, cycles, steps_per_cycle);
    const auto fine = run(params, drive, cycles, 2 * steps_per_cycle);
    double worst = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        worst = std::max(worst, (coarse[i].state.amplitudes - fine[i].state.amplitudes).norm());
    }
    return worst;
}

}  // namespace tavis
