#include "tavis/classical.hpp"

#include "tavis/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace tavis {

std::vector<cplx> rapidity_flow(const RapiditySet& lambdas, const SectorParams& params,
                                double delta_t) {
    const auto res = bethe_residual(lambdas, params, delta_t);
    std::vector<cplx> velocity(lambdas.size());
    const cplx minus_i{0.0, -1.0};
    for (std::size_t a = 0; a < velocity.size(); ++a) {
        velocity[a] = minus_i * lambdas.lambdas[a] * res.f[a];
    }
    return velocity;
}

const char* to_string(FlowStatus status) {
    switch (status) {
        case FlowStatus::Completed: return "completed";
        case FlowStatus::Collision: return "collision";
        case FlowStatus::ZeroRapidity: return "zero-rapidity";
        case FlowStatus::BlowUp: return "blow-up";
        case FlowStatus::StepUnderflow: return "step-underflow";
    }
    return "unknown";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5{35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kB4{5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct Halt {
    FlowStatus status;
    std::string message;
};

std::optional<Halt> check_state(const std::vector<cplx>& l, const FlowOptions& opt, double g) {
    const double near = opt.collision_distance * g;
    for (std::size_t a = 0; a < l.size(); ++a) {
        if (!std::isfinite(l[a].real()) || !std::isfinite(l[a].imag()) ||
            std::abs(l[a]) > opt.blowup_norm * g) {
            return Halt{FlowStatus::BlowUp, "rapidity " + std::to_string(a) + " blew up"};
        }
        if (std::abs(l[a]) < near) {
            return Halt{FlowStatus::ZeroRapidity, "rapidity " + std::to_string(a) + " reached zero"};
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (std::abs(l[a] - l[b]) < near) {
                return Halt{FlowStatus::Collision, "rapidities " + std::to_string(b) + " and " +
                                                       std::to_string(a) + " collided"};
            }
        }
    }
    return std::nullopt;
}

std::vector<double> sample_grid(double t0, double t1, const DriveProtocol& drive,
                                const FlowOptions& opt) {
    std::vector<double> grid;
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    const double eps = 1e-12 * std::max(1.0, hi - lo);
    if (opt.output_interval > 0.0) {
        const double dir = t1 >= t0 ? 1.0 : -1.0;
        for (long i = 1;; ++i) {
            const double t = t0 + dir * static_cast<double>(i) * opt.output_interval;
            if (t < lo + eps || t > hi - eps) break;
            grid.push_back(t);
        }
    }
    if (opt.stroboscopic_samples) {
        const double period = drive.period();
        const long first = static_cast<long>(std::ceil(lo / period));
        const long last = static_cast<long>(std::floor(hi / period));
        for (long p = first; p <= last; ++p) {
            const double t = drive.cycle_time(p);
            if (t > lo + eps && t < hi - eps) grid.push_back(t);
        }
    }
    grid.push_back(t1);
    if (t1 >= t0) {
        std::sort(grid.begin(), grid.end());
    } else {
        std::sort(grid.begin(), grid.end(), std::greater<>());
    }
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [eps](double a, double b) { return std::abs(a - b) <= eps; }),
               grid.end());
    return grid;
}

}  // namespace

ClassicalTrajectory integrate_flow(const RapiditySet& initial, const SectorParams& params,
                                   const DriveProtocol& drive, double t_final,
                                   const FlowOptions& opt) {
    require_regular(initial, params);
    const std::size_t m = initial.size();

    ClassicalTrajectory traj;
    traj.step_stats.min_step = std::numeric_limits<double>::infinity();
    traj.times.push_back(opt.t_start);
    traj.lambdas_per_time.push_back(initial);

    RapiditySet work = initial;
    auto rhs = [&](double t, const std::vector<cplx>& y, std::vector<cplx>& out) {
        work.lambdas = y;
        out = rapidity_flow(work, params, drive.delta(t));
    };

    const double dir = t_final >= opt.t_start ? 1.0 : -1.0;
    double t = opt.t_start;
    double h = dir * std::abs(opt.initial_step);
    std::vector<cplx> y = initial.lambdas;
    std::array<std::vector<cplx>, 7> k;
    std::vector<cplx> stage(m), y5(m);

    auto halt = [&](FlowStatus status, std::string message) {
        traj.status = status;
        traj.halt_time = t;
        traj.diagnostic = std::move(message) + " at t = " + std::to_string(t);
        return traj;
    };

    if (auto bad = check_state(y, opt, params.g)) return halt(bad->status, bad->message);
    try {
        rhs(t, y, k[0]);
    } catch (const SingularityError& e) {
        return halt(FlowStatus::Collision, e.what());
    }

    long steps = 0;
    for (const double target : sample_grid(opt.t_start, t_final, drive, opt)) {
        while (dir * (target - t) > 0.0) {
            if (++steps > opt.max_steps) return halt(FlowStatus::StepUnderflow, "step budget exhausted");
            double h_try = h;
            bool clamped = false;
            if (dir * (t + h_try - target) >= 0.0) {
                h_try = target - t;
                clamped = true;
            }
            if (std::abs(h_try) < 1e-14 * std::max(1.0, std::abs(t))) {
                return halt(FlowStatus::StepUnderflow, "step size underflow");
            }

            double err = 0.0;
            try {
                for (int s = 1; s < 7; ++s) {
                    for (std::size_t i = 0; i < m; ++i) {
                        cplx acc{0.0, 0.0};
                        for (int j = 0; j < s; ++j) acc += kA[s][j] * k[j][i];
                        stage[i] = y[i] + h_try * acc;
                    }
                    rhs(t + kC[s] * h_try, stage, k[s]);
                }
            } catch (const SingularityError&) {
                // A trial stage hit a pole; retry with a smaller step.
                ++traj.step_stats.rejected;
                h = 0.25 * h_try;
                continue;
            }
            // The last stage is evaluated at the 5th-order solution (FSAL).
            y5 = stage;
            for (std::size_t i = 0; i < m; ++i) {
                cplx e{0.0, 0.0};
                for (int s = 0; s < 7; ++s) e += (kB5[s] - kB4[s]) * k[s][i];
                e *= h_try;
                const double scale = opt.absolute_tolerance * params.g +
                                     opt.relative_tolerance * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(e) / scale);
            }
            const double factor =
                err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);

            if (err <= 1.0) {
                ++traj.step_stats.accepted;
                traj.step_stats.min_step = std::min(traj.step_stats.min_step, std::abs(h_try));
                t = clamped ? target : t + h_try;
                y = y5;
                k[0] = k[6];
                if (auto bad = check_state(y, opt, params.g)) return halt(bad->status, bad->message);
                // A step shortened to land on a sample keeps the nominal size.
                if (!clamped) h = h_try * factor;
            } else {
                ++traj.step_stats.rejected;
                h = h_try * factor;
            }
        }
        RapiditySet sample = initial;
        sample.lambdas = y;
        traj.times.push_back(t);
        traj.lambdas_per_time.push_back(std::move(sample));
    }
    return traj;
}

std::vector<cplx> x_variables(const RapiditySet& lambdas) {
    if (!lambdas.all_finite()) throw DivergedRootError("x_variables: diverged root present");
    std::vector<cplx> x(lambdas.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
        cplx r = std::sqrt(lambdas.lambdas[a] / 2.0);
        if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
        x[a] = r;
    }
    return x;
}

namespace {

void require_regular_x(std::span<const cplx> x, const SectorParams& params) {
    const double tol = kCollisionTolerance * std::sqrt(params.g);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (std::abs(x[a]) < tol) throw ZeroRapidityError("x variable " + std::to_string(a) + " at zero");
        for (std::size_t b = 0; b < a; ++b) {
            if (std::abs(x[a] - x[b]) < tol || std::abs(x[a] + x[b]) < tol) {
                throw CollisionError("x variables " + std::to_string(b) + " and " +
                                     std::to_string(a) + " collide (x_a = +-x_b)");
            }
        }
    }
}

}  // namespace

std::vector<cplx> x_flow(std::span<const cplx> x, const SectorParams& params, double delta_t) {
    require_regular_x(x, params);
    const double g2 = params.g * params.g;
    const double s = params.spin();
    const cplx i{0.0, 1.0};
    std::vector<cplx> v(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
        const cplx xa = x[a];
        cplx pair{0.0, 0.0};
        for (std::size_t b = 0; b < x.size(); ++b) {
            if (b != a) pair += 1.0 / (xa + x[b]) + 1.0 / (xa - x[b]);
        }
        v[a] = i * (g2 * s / (2.0 * xa) + 0.5 * delta_t * xa - xa * xa * xa - 0.25 * g2 * pair);
    }
    return v;
}

cplx gamma_coefficient(const SectorParams& params, double delta_t, double delta_dot_t) {
    const double g2 = params.g * params.g;
    return cplx{(params.m - 1.0 - params.spin()) * g2 + 0.25 * delta_t * delta_t,
                -0.5 * delta_dot_t};
}

cplx inozemtsev_potential(std::span<const cplx> x, std::size_t alpha, const SectorParams& params,
                          double delta_t, double delta_dot_t) {
    if (alpha >= x.size()) throw DimensionError("inozemtsev_potential: index out of range");
    const double g2 = params.g * params.g;
    const double g4 = g2 * g2;
    const double s = params.spin();
    const cplx xa = x[alpha];
    const cplx x2 = xa * xa;
    cplx pair{0.0, 0.0};
    for (std::size_t b = 0; b < x.size(); ++b) {
        if (b == alpha) continue;
        const cplx dm = xa - x[b], dp = xa + x[b];
        pair += 1.0 / (dm * dm) + 1.0 / (dp * dp);
    }
    const cplx gamma = gamma_coefficient(params, delta_t, delta_dot_t);
    return g4 / 16.0 * pair + 0.5 * x2 * x2 * x2 - 0.5 * delta_t * x2 * x2 + 0.5 * gamma * x2 +
           g4 * s * s / (8.0 * x2);
}

std::vector<cplx> inozemtsev_force(std::span<const cplx> x, const SectorParams& params,
                                   double delta_t, double delta_dot_t) {
    require_regular_x(x, params);
    const double g2 = params.g * params.g;
    const double g4 = g2 * g2;
    const double s = params.spin();
    const cplx gamma = gamma_coefficient(params, delta_t, delta_dot_t);
    std::vector<cplx> force(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
        const cplx xa = x[a];
        const cplx x2 = xa * xa;
        const cplx x3 = x2 * xa;
        cplx pair{0.0, 0.0};
        for (std::size_t b = 0; b < x.size(); ++b) {
            if (b == a) continue;
            const cplx dm = xa - x[b], dp = xa + x[b];
            pair += 1.0 / (dm * dm * dm) + 1.0 / (dp * dp * dp);
        }
        const cplx grad = -g4 / 8.0 * pair + 3.0 * x2 * x3 - 2.0 * delta_t * x3 + gamma * xa -
                          g4 * s * s / (4.0 * x3);
        force[a] = -grad;
    }
    return force;
}

CrosscheckReport crosscheck_flow(const QuantumState& initial, const SectorParams& params,
                                 const DriveProtocol& drive, long horizon_cycles,
                                 int steps_per_cycle, double tolerance) {
    CrosscheckReport report;
    report.tolerance = tolerance;

    const RapiditySet start = extract_rapidities(initial, params);
    FlowOptions opt;
    opt.stroboscopic_samples = true;
    const double t_end = drive.cycle_time(horizon_cycles);
    const auto traj = integrate_flow(start, params, drive, t_end, opt);
    report.status = traj.status;
    report.halt_time = traj.halt_time;
    report.diagnostic = traj.diagnostic;

    Rk4Propagator prop(params);
    Eigen::VectorXcd psi = initial.amplitudes;
    const double dt = drive.period() / steps_per_cycle;
    std::size_t sample = 0;
    for (long p = 0; p <= horizon_cycles; ++p) {
        const double tp = drive.cycle_time(p);
        if (p > 0) {
            const double t0 = drive.cycle_time(p - 1);
            for (int j = 0; j < steps_per_cycle; ++j) prop.advance(psi, drive, t0 + j * dt, dt);
        }
        while (sample < traj.times.size() &&
               traj.times[sample] < tp - 1e-9 * std::max(1.0, tp)) {
            ++sample;
        }
        if (sample >= traj.times.size()) break;  // classical side halted earlier
        const RapiditySet quantum = extract_rapidities({psi, tp}, params);
        const RapiditySet& classical = traj.lambdas_per_time[sample];
        const double dist = paired_distance(classical.lambdas, quantum.lambdas);
        report.times.push_back(tp);
        report.distances.push_back(dist);
        report.quantum.push_back(quantum);
        report.classical.push_back(classical);
        report.max_distance = std::max(report.max_distance, dist);
    }
    return report;
}

}  // namespace tavis
