#include "oracles.hpp"
#include "tavis/errors.hpp"
#include "tavis/propagator.hpp"
#include "tavis/spectral.hpp"
#include "tavis/thermo.hpp"

#include <doctest.h>

#include <numeric>

using namespace tavis;

namespace {

StroboscopicRecord record(long p, Eigen::VectorXcd amplitudes, double t = 0.0) {
    StroboscopicRecord r;
    r.p = p;
    r.t = t;
    r.state = {std::move(amplitudes), t};
    return r;
}

SpectralDecomposition diagonal_spectrum(std::vector<double> energies) {
    SpectralDecomposition s;
    s.eigenvalues = Eigen::Map<Eigen::VectorXd>(energies.data(), energies.size());
    s.eigenvectors = Eigen::MatrixXd::Identity(energies.size(), energies.size());
    return s;
}

WeightDistribution distribution(std::vector<double> c, std::vector<double> e) {
    WeightDistribution w;
    w.c = std::move(c);
    w.eigenvalues = std::move(e);
    w.multiplicity.assign(w.c.size(), 1);
    w.cycles = 1;
    for (std::size_t a = 0; a < w.c.size(); ++a) w.mean_energy += w.c[a] * w.eigenvalues[a];
    return w;
}

}  // namespace

TEST_CASE("single-cycle average of an eigenstate is an indicator") {
    const SectorParams p = SectorParams::from_spin(6.0, 4, 1.0, 5.0, 1.0);
    const auto spec = diagonalize(build_hamiltonian(p, 5.0));
    for (Eigen::Index n = 0; n < spec.size(); ++n) {
        const std::vector<StroboscopicRecord> recs{record(0, spec.eigenvectors.col(0).cast<cplx>()),
                                                   record(1, spec.eigenvectors.col(n).cast<cplx>())};
        const auto w = cycle_weights(recs, spec);
        CHECK(w.cycles == 1);
        for (Eigen::Index a = 0; a < spec.size(); ++a) {
            CHECK(w.c[a] == doctest::Approx(a == n ? 1.0 : 0.0).epsilon(1e-12));
        }
        CHECK(w.mean_energy == doctest::Approx(spec.eigenvalues(n)));
    }
}

TEST_CASE("weights sum to one and ignore global phases and norm") {
    const SectorParams p = SectorParams::from_spin(6.0, 4, 1.0, 5.0, 1.0);
    const auto spec = diagonalize(build_hamiltonian(p, 5.0));
    std::mt19937_64 rng(53);
    std::vector<StroboscopicRecord> recs;
    for (long k = 0; k < 20; ++k) recs.push_back(record(k, oracle::random_state(rng, 5)));
    const auto w = cycle_weights(recs, spec);
    CHECK(std::accumulate(w.c.begin(), w.c.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w.cycles == 19);

    auto rotated = recs;
    for (auto& r : rotated) r.state.amplitudes *= 3.0 * std::exp(cplx{0.0, 0.4 * r.p});
    const auto w2 = cycle_weights(rotated, spec);
    for (std::size_t a = 0; a < w.size(); ++a) CHECK(w2.c[a] == doctest::Approx(w.c[a]).epsilon(1e-13));

    // Flipping eigenvector signs does not change populations.
    auto flipped = spec;
    flipped.eigenvectors.col(1) *= -1.0;
    const auto w3 = cycle_weights(recs, flipped);
    for (std::size_t a = 0; a < w.size(); ++a) CHECK(w3.c[a] == doctest::Approx(w.c[a]).epsilon(1e-13));
}

TEST_CASE("weight errors") {
    const auto spec = diagonal_spectrum({0.0, 1.0});
    const std::vector<StroboscopicRecord> only{record(0, Eigen::VectorXcd::Ones(2))};
    CHECK_THROWS_AS(cycle_weights(only, spec), EmptyAverageError);
    CHECK_THROWS_AS(cycle_weights(std::span<const StroboscopicRecord>{}, spec), EmptyAverageError);
    const std::vector<StroboscopicRecord> wrong{record(0, Eigen::VectorXcd::Ones(3)),
                                                record(1, Eigen::VectorXcd::Ones(3))};
    CHECK_THROWS_AS(cycle_weights(wrong, spec), DimensionError);
}

TEST_CASE("degenerate levels are merged and basis independent") {
    const auto spec = diagonal_spectrum({-1.0, 0.5, 0.5, 2.0});
    std::mt19937_64 rng(59);
    std::vector<StroboscopicRecord> recs;
    for (long k = 0; k < 6; ++k) recs.push_back(record(k, oracle::random_state(rng, 4)));
    const auto w = cycle_weights(recs, spec);
    REQUIRE(w.size() == 3);
    CHECK(w.multiplicity == std::vector<int>{1, 2, 1});
    CHECK(w.eigenvalues[1] == 0.5);

    auto rotated = spec;
    const double th = 0.7;
    rotated.eigenvectors.block(1, 1, 2, 2) << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const auto w2 = cycle_weights(recs, rotated);
    for (std::size_t a = 0; a < w.size(); ++a) CHECK(w2.c[a] == doctest::Approx(w.c[a]).epsilon(1e-13));
}

TEST_CASE("boltzmann weights") {
    const std::vector<double> e{0.0, 1.0, 2.0};
    const auto flat = boltzmann_weights(e, 0.0);
    for (double w : flat) CHECK(w == doctest::Approx(1.0 / 3.0));
    const auto cold = boltzmann_weights(e, std::numeric_limits<double>::infinity());
    CHECK(cold == std::vector<double>{1.0, 0.0, 0.0});
    const auto hot = boltzmann_weights(e, -1e4);
    CHECK(hot[2] == doctest::Approx(1.0));
    double prev = 10.0;
    for (double beta = -5.0; beta <= 5.0; beta += 0.25) {
        const double m = boltzmann_mean_energy(e, beta);
        CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("boltzmann fit examples") {
    SUBCASE("uniform weights give infinite temperature") {
        const auto fit = fit_boltzmann(distribution({0.25, 0.25, 0.25, 0.25}, {0.0, 1.0, 2.0, 3.0}));
        CHECK(std::abs(fit.beta) < 1e-10);
        CHECK(fit.l1_distance < 1e-10);
        CHECK(fit.kl_divergence < 1e-12);
    }
    SUBCASE("exact two-level ratio") {
        const auto fit = fit_boltzmann(distribution({0.75, 0.25}, {0.0, 1.0}));
        CHECK(fit.beta == doctest::Approx(std::log(3.0)).epsilon(1e-10));
        CHECK(fit.fitted_mean_energy == doctest::Approx(0.25));
        CHECK(!fit.saturated);
    }
    SUBCASE("inverted population gives negative beta") {
        const auto fit = fit_boltzmann(distribution({0.1, 0.3, 0.6}, {-1.0, 0.0, 1.0}));
        CHECK(fit.beta < 0.0);
        CHECK(fit.fitted_mean_energy == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("ground-state population saturates") {
        const auto fit = fit_boltzmann(distribution({1.0, 0.0, 0.0}, {0.0, 1.0, 2.0}));
        CHECK(fit.saturated);
        CHECK(fit.beta == std::numeric_limits<double>::infinity());
        CHECK(fit.l1_distance == 0.0);
    }
    SUBCASE("single level") {
        const auto fit = fit_boltzmann(distribution({1.0}, {3.0}));
        CHECK(fit.beta == 0.0);
        CHECK(fit.weights == std::vector<double>{1.0});
    }
    SUBCASE("multiplicity enters the fit") {
        auto d = distribution({0.2, 0.8}, {0.0, 1.0});
        d.multiplicity = {1, 4};
        const auto fit = fit_boltzmann(d);
        CHECK(std::abs(fit.beta) < 1e-10);
        CHECK(fit.l1_distance < 1e-10);
    }
    CHECK_THROWS_AS(fit_boltzmann(WeightDistribution{}), DimensionError);
}

TEST_CASE("fitted mean reproduces the target and beta is monotone") {
    const std::vector<double> e{-2.0, -0.5, 0.3, 1.0, 4.0};
    double prev_beta = std::numeric_limits<double>::infinity();
    for (double target = -1.9; target < 3.9; target += 0.2) {
        // A two-point distribution with the requested mean.
        const double x = (target - (-2.0)) / 6.0;
        const auto fit = fit_boltzmann(distribution({1.0 - x, 0.0, 0.0, 0.0, x}, e));
        CHECK(fit.fitted_mean_energy == doctest::Approx(target).epsilon(1e-9));
        CHECK(fit.beta < prev_beta);
        prev_beta = fit.beta;
    }
}

TEST_CASE("run ranking") {
    std::vector<FrequencyFit> fits(3);
    fits[0].omega = 3.75;
    fits[0].fit.l1_distance = 0.2;
    fits[1].omega = 3.68;
    fits[1].fit.l1_distance = 0.01;
    fits[2].omega = 3.57;
    fits[2].fit.l1_distance = 0.2;
    const auto ranked = compare_runs(fits);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].omega == 3.68);
    CHECK(ranked[1].omega == 3.57);
    CHECK(ranked[2].omega == 3.75);
}

TEST_CASE("per-time bases agree with the stroboscopic basis") {
    const SectorParams p = SectorParams::from_spin(6.0, 4, 1.0, 5.0, 3.57);
    const auto drive = DriveProtocol::cosine(p);
    const auto recs = run(p, drive, 8, 4000);
    const auto single = cycle_weights(recs, diagonalize(build_hamiltonian(p, 5.0)));
    const auto general = cycle_weights(recs, p, drive);
    REQUIRE(single.size() == general.size());
    for (std::size_t a = 0; a < single.size(); ++a) {
        CHECK(general.c[a] == doctest::Approx(single.c[a]).epsilon(1e-10));
        CHECK(general.eigenvalues[a] == doctest::Approx(single.eigenvalues[a]).epsilon(1e-10));
    }
    CHECK(general.mean_energy == doctest::Approx(single.mean_energy).epsilon(1e-10));
}
