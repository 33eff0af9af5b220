#include "tavis/selftest.hpp"

#include "tavis/bethe.hpp"
#include "tavis/classical.hpp"
#include "tavis/propagator.hpp"
#include "tavis/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace tavis {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

const SectorParams kPaper = SectorParams::from_spin(6.0, 4, 1.0, 5.0, 3.57);

}  // namespace

std::vector<SelfTestResult> run_selftest(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss;
    std::vector<SelfTestResult> out;

    {
        double worst = 0.0;
        for (int two_s = 0; two_s <= 8; ++two_s) {
            for (int m = 0; m <= 6; ++m) {
                SectorParams p{two_s, m, 1.0, 0.0, 1.0};
                const auto h = build_hamiltonian(p, 0.7).dense();
                worst = std::max(worst, (h - h.transpose()).cwiseAbs().maxCoeff());
                Eigen::VectorXcd v(sector_dimension(p));
                for (auto& z : v) z = {gauss(rng), gauss(rng)};
                v.normalize();
                QuantumState s{v, 0.0};
                worst = std::max(worst, std::abs(boson_number(s, p) + spin_excitation_number(s, p) - m));
            }
        }
        out.push_back({"hamiltonian symmetry and excitation count", worst < 1e-12, sci(worst)});
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<cplx> l(4);
            for (auto& z : l) z = std::polar(0.5 + 4.5 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
            worst = std::max(worst, offshell_identity_check(RapiditySet::finite(l), kPaper, 1.3));
        }
        out.push_back({"off-shell Bethe identity", worst <= 1e-8, sci(worst)});
    }
    {
        double worst_gap = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            Eigen::VectorXcd v(5);
            for (auto& z : v) z = {gauss(rng), gauss(rng)};
            v.normalize();
            if (std::abs(v(0)) <= 1e-3) continue;
            const auto back = bethe_amplitudes(extract_rapidities({v, 0.0}, kPaper), kPaper);
            worst_gap = std::max(worst_gap, 1.0 - std::abs(v.dot(back.state.amplitudes)));
        }
        out.push_back({"extract/construct round trip", worst_gap <= 1e-10, sci(worst_gap)});
    }
    {
        const auto decomp = diagonalize(build_hamiltonian(kPaper, kPaper.delta0));
        double worst_f = 0.0, worst_e = 0.0;
        for (Eigen::Index a = 0; a < decomp.size(); ++a) {
            const auto roots = extract_rapidities({decomp.eigenvectors.col(a).cast<cplx>(), 0.0}, kPaper);
            worst_f = std::max(worst_f, bethe_residual(roots, kPaper, kPaper.delta0).max_abs);
            const double e = decomp.eigenvalues(a);
            worst_e = std::max(worst_e, std::abs(bethe_energy(roots, kPaper, kPaper.delta0) - e) / std::abs(e));
        }
        out.push_back({"eigenstate roots are on-shell", worst_f < 1e-6 && worst_e < 1e-8,
                       "max|f| " + sci(worst_f) + ", energy rel " + sci(worst_e)});
    }
    {
        double worst = 0.0;
        const double h = 1e-5;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<cplx> x(4);
            for (auto& z : x) z = std::polar(0.6 + unit(rng), 2.0 * std::numbers::pi * unit(rng));
            const auto force = inozemtsev_force(x, kPaper, 1.1, 0.4);
            for (std::size_t a = 0; a < x.size(); ++a) {
                auto xp = x, xm = x;
                xp[a] += h;
                xm[a] -= h;
                const cplx fd = -(inozemtsev_potential(xp, a, kPaper, 1.1, 0.4) -
                                  inozemtsev_potential(xm, a, kPaper, 1.1, 0.4)) / (2.0 * h);
                worst = std::max(worst, std::abs(fd - force[a]) / std::abs(force[a]));
            }
        }
        out.push_back({"Inozemtsev force vs finite difference", worst <= 1e-6, sci(worst)});
    }
    {
        const auto drive = DriveProtocol::cosine(kPaper);
        const auto records = run(kPaper, drive, 20, kDefaultStepsPerCycle);
        double worst = 0.0;
        for (const auto& r : records) worst = std::max(worst, r.norm_defect);
        out.push_back({"RK4 norm drift (20 cycles)", worst < 1e-11, sci(worst)});
    }
    {
        const auto drive = DriveProtocol::cosine(kPaper);
        const auto report = crosscheck_flow(ground_state(kPaper, kPaper.delta0), kPaper, drive, 1);
        out.push_back({"classical flow vs quantum extraction (1 cycle)", report.passed(),
                       sci(report.max_distance)});
    }
    return out;
}

}  // namespace tavis
