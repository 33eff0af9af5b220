// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "tavis/bethe.hpp"
#include "tavis/classical.hpp"
#include "tavis/config.hpp"
#include "tavis/experiment.hpp"
#include "tavis/spectral.hpp"
#include "tavis/sweep.hpp"
#include "tavis/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>

using namespace tavis;

namespace {

const SectorParams kPaper = SectorParams::from_spin(6.0, 4, 1.0, 5.0, 3.57);
const std::vector<double> kFrequencies{3.57, 3.68, 3.75};

struct Outcome {
    bool passed;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("[%s] criterion %d: %s (%s)\n", o.passed ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<cplx> random_roots(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> radius(0.5, 5.0), angle(0.0, 2.0 * M_PI);
    std::vector<cplx> l(m);
    for (auto& z : l) z = std::polar(radius(rng), angle(rng));
    return l;
}

// x at t - h, t, t + h along the flow, sign-aligned to a common branch.
std::array<std::vector<cplx>, 3> x_triplet(const RapiditySet& start, const DriveProtocol& drive,
                                           double t, double h) {
    FlowOptions opt;
    opt.stroboscopic_samples = false;
    opt.relative_tolerance = 1e-13;
    opt.absolute_tolerance = 1e-15;
    opt.output_interval = h;
    const auto traj = integrate_flow(start, kPaper, drive, t + h, opt);
    if (!traj.completed()) throw std::runtime_error("flow halted: " + traj.diagnostic);
    // Samples sit at multiples of h; pick the last three.
    const std::size_t n = traj.times.size();
    const RapiditySet& mid = traj.lambdas_per_time[n - 2];
    std::array<std::vector<cplx>, 3> out;
    const std::size_t idx[3] = {n - 3, n - 2, n - 1};
    const auto ref_l = mid.lambdas;
    for (int s = 0; s < 3; ++s) {
        const auto& set = traj.lambdas_per_time[idx[s]];
        const auto perm = match_roots(ref_l, set.lambdas);
        RapiditySet ordered = set;
        for (std::size_t a = 0; a < perm.size(); ++a) ordered.lambdas[a] = set.lambdas[perm[a]];
        out[s] = x_variables(ordered);
    }
    for (int s : {0, 2}) {
        for (std::size_t a = 0; a < out[s].size(); ++a) {
            if (std::abs(out[s][a] + out[1][a]) < std::abs(out[s][a] - out[1][a])) out[s][a] = -out[s][a];
        }
    }
    return out;
}

}  // namespace

int main() {
    std::printf("acceptance suite: %d OpenMP thread(s)\n", sweep_threads());

    report(1, "ground-state boson occupation in [3.1, 3.3]", [] {
        const double nb = boson_number(ground_state(kPaper, 5.0), kPaper);
        return Outcome{nb >= 3.1 && nb <= 3.3, fmt("N_b = %.6f", nb)};
    });

    report(2, "non-resonant N_b range over 200 cycles at 3.57", [] {
        RunOptions opt;
        opt.cycles = 200;
        opt.sample_stride = 200;
        opt.sample_cycles = 200;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        opt.sampler = [&](const TimeSample& s) {
            lo = std::min(lo, s.boson_number);
            hi = std::max(hi, s.boson_number);
        };
        run(kPaper, DriveProtocol::cosine(kPaper), opt);
        const bool ok = lo >= -0.1 && lo <= 0.5 && hi >= 3.0 && hi <= 3.4;
        return Outcome{ok, fmt("min %.4f in [-0.1, 0.5], max %.4f in [3.0, 3.4]", lo, hi)};
    });

    ExperimentConfig sweep_config;
    sweep_config.frequencies = kFrequencies;
    sweep_config.cycles = 4000;
    sweep_config.emit = EmitFlags{false, false, true, false};
    std::vector<FrequencyResult> sweep;
    std::string sweep_error;
    try {
        sweep = sweep_parallel(sweep_config);
    } catch (const std::exception& e) {
        sweep_error = e.what();
    }
    auto need_sweep = [&] {
        if (sweep.size() != kFrequencies.size()) throw std::runtime_error("sweep failed: " + sweep_error);
    };

    report(3, "Boltzmann L1 distance strictly minimal at 3.68 (P = 4000)", [&] {
        need_sweep();
        std::vector<FrequencyFit> fits;
        std::string detail;
        for (const auto& r : sweep) {
            fits.push_back({r.omega, r.fit});
            detail += fmt("L1(%.2f) = %.5f, KL = %.5f; ", r.omega, r.fit.l1_distance, r.fit.kl_divergence);
        }
        const auto ranked = compare_runs(fits);
        const bool strict = ranked[0].omega == 3.68 && ranked[1].l1_distance > ranked[0].l1_distance;
        return Outcome{strict, detail + fmt("argmin = %.2f", ranked[0].omega)};
    });

    report(4, "absorbed energy at 3.75 exceeds 3 x that at 3.57", [&] {
        need_sweep();
        const double low = sweep[0].absorbed_energy, high = sweep[2].absorbed_energy;
        return Outcome{high >= 3.0 * low, fmt("%.5f vs %.5f, ratio %.2f", high, low, high / low)};
    });

    report(5, "off-shell identity defect <= 1e-8 on 100 random sets", [] {
        std::mt19937_64 rng(5);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            worst = std::max(worst, offshell_identity_check(RapiditySet::finite(random_roots(rng, 4)), kPaper, 5.0));
        }
        return Outcome{worst <= 1e-8, fmt("max defect %.3e", worst)};
    });

    report(6, "extract/construct round trip on 1000 random states", [] {
        std::mt19937_64 rng(6);
        std::normal_distribution<double> gauss;
        double worst = 1.0;
        int tested = 0;
        while (tested < 1000) {
            Eigen::VectorXcd v(5);
            for (auto& z : v) z = {gauss(rng), gauss(rng)};
            v.normalize();
            if (std::abs(v(0)) <= 1e-3) continue;
            ++tested;
            const auto roots = extract_rapidities({v, 0.0}, kPaper);
            const auto back = bethe_amplitudes(roots, kPaper).state.amplitudes;
            worst = std::min(worst, std::abs(back.dot(v)));
        }
        return Outcome{worst >= 1.0 - 1e-10, fmt("min overlap 1 - %.3e", 1.0 - worst)};
    });

    report(7, "eigenstates give on-shell roots and their energies", [] {
        const auto spec = diagonalize(build_hamiltonian(kPaper, 5.0));
        double worst_f = 0.0, worst_e = 0.0;
        for (Eigen::Index n = 0; n < spec.size(); ++n) {
            const auto roots = extract_rapidities({spec.eigenvectors.col(n).cast<cplx>(), 0.0}, kPaper);
            worst_f = std::max(worst_f, bethe_residual(roots, kPaper, 5.0).max_abs);
            const double e = spec.eigenvalues(n);
            worst_e = std::max(worst_e, std::abs(bethe_energy(roots, kPaper, 5.0) - e) / std::abs(e));
        }
        return Outcome{worst_f < 1e-6 && worst_e < 1e-8,
                       fmt("max|f| = %.3e, max relative energy error %.3e", worst_f, worst_e)};
    });

    report(8, "classical flow matches quantum roots over 5 cycles", [] {
        ExperimentConfig c;
        std::string detail;
        bool ok = true;
        for (double w : kFrequencies) {
            const auto r = crosscheck_classical(c, w, 5);
            ok = ok && r.passed();
            detail += fmt("%.2f: %.2e [%s]; ", w, r.max_distance, to_string(r.status));
        }
        return Outcome{ok, detail + "tolerance 1e-4"};
    });

    report(9, "force is -grad V and x'' follows it along the flow", [] {
        std::mt19937_64 rng(9);
        double worst_grad = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto x = x_variables(RapiditySet::finite(random_roots(rng, 4)));
            const double delta = 5.0 * std::cos(0.3 * i), ddot = -17.85 * std::sin(0.3 * i);
            const auto force = inozemtsev_force(x, kPaper, delta, ddot);
            for (std::size_t a = 0; a < x.size(); ++a) {
                double r = std::abs(x[a]);
                for (std::size_t b = 0; b < x.size(); ++b) {
                    if (b != a) r = std::min({r, std::abs(x[a] - x[b]), std::abs(x[a] + x[b])});
                }
                const double h = 1e-5 * r;
                auto xp = x, xm = x;
                xp[a] += h;
                xm[a] -= h;
                const cplx grad = (inozemtsev_potential(xp, a, kPaper, delta, ddot) -
                                   inozemtsev_potential(xm, a, kPaper, delta, ddot)) / (2.0 * h);
                worst_grad = std::max(worst_grad, std::abs(-grad - force[a]) / std::abs(force[a]));
            }
        }
        // Quench: ground-state roots at Delta = 5 evolved at constant Delta = 3.
        const auto start = extract_rapidities(ground_state(kPaper, 5.0), kPaper);
        const auto drive = DriveProtocol::constant(3.0, kPaper.omega);
        std::array<double, 2> err{};
        const double t = 0.8;
        const double steps[2] = {2e-3, 1e-3};
        for (int k = 0; k < 2; ++k) {
            const double h = steps[k];
            const auto xs = x_triplet(start, drive, t, h);
            const auto force = inozemtsev_force(xs[1], kPaper, 3.0, 0.0);
            double num = 0.0, den = 0.0;
            for (std::size_t a = 0; a < force.size(); ++a) {
                const cplx acc = (xs[2][a] - 2.0 * xs[1][a] + xs[0][a]) / (h * h);
                num = std::max(num, std::abs(acc - force[a]));
                den = std::max(den, std::abs(force[a]));
            }
            err[k] = num / den;
        }
        const double ratio = err[0] / err[1];
        const bool ok = worst_grad <= 1e-6 && err[1] < 1e-3 && ratio > 3.0 && ratio < 5.0;
        return Outcome{ok, fmt("gradient rel err %.2e; x'' rel err %.2e / %.2e, ratio %.2f (h^2 -> 4)",
                               worst_grad, err[0], err[1], ratio)};
    });

    report(10, "norm drift < 1e-9 over 4000 cycles and RK4 order factor in [12, 20]", [&] {
        need_sweep();
        double drift = 0.0;
        for (const auto& r : sweep) drift = std::max(drift, r.max_norm_defect);
        const auto drive = DriveProtocol::cosine(kPaper);
        const auto gs = ground_state(kPaper, 5.0);
        const auto coarse = propagate_cycles(gs, kPaper, drive, 10, 500);
        const auto fine = propagate_cycles(gs, kPaper, drive, 10, 1000);
        const auto ref = propagate_cycles(gs, kPaper, drive, 10, 4000);
        const double ratio = (coarse.amplitudes - ref.amplitudes).norm() /
                             (fine.amplitudes - ref.amplitudes).norm();
        return Outcome{drift < 1e-9 && ratio >= 12.0 && ratio <= 20.0,
                       fmt("drift %.2e, order factor %.2f", drift, ratio)};
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
