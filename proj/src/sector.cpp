#include "tavis/sector.hpp"

#include "tavis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tavis {

SectorParams SectorParams::from_spin(double spin, int m, double g, double delta0, double omega) {
    const double twice = 2.0 * spin;
    if (!(twice >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
        throw ParameterError("spin must be a non-negative multiple of 1/2, got " +
                             std::to_string(spin));
    }
    SectorParams p;
    p.two_s = static_cast<int>(std::lround(twice));
    p.m = m;
    p.g = g;
    p.delta0 = delta0;
    p.omega = omega;
    p.validate();
    return p;
}

void SectorParams::validate() const {
    if (two_s < 0) throw ParameterError("2S must be non-negative");
    if (m < 0) throw ParameterError("M must be non-negative");
    if (!(g > 0.0) || !std::isfinite(g)) throw ParameterError("g must be positive and finite");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError("omega must be positive");
    if (!std::isfinite(delta0)) throw ParameterError("delta0 must be finite");
}

int sector_dimension(const SectorParams& params) {
    return std::min(params.m, params.two_s) + 1;
}

Eigen::MatrixXd TridiagonalMatrix::dense() const {
    const Eigen::Index n = size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out(k, k) = diag(k);
        if (k + 1 < n) {
            out(k, k + 1) = off(k);
            out(k + 1, k) = off(k);
        }
    }
    return out;
}

Eigen::VectorXcd TridiagonalMatrix::apply(const Eigen::VectorXcd& v) const {
    if (v.size() != size()) throw DimensionError("tridiagonal apply: dimension mismatch");
    const Eigen::Index n = size();
    Eigen::VectorXcd out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        cplx acc = diag(k) * v(k);
        if (k > 0) acc += off(k - 1) * v(k - 1);
        if (k + 1 < n) acc += off(k) * v(k + 1);
        out(k) = acc;
    }
    return out;
}

double TridiagonalMatrix::norm_bound() const {
    const Eigen::Index n = size();
    double best = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double row = std::abs(diag(k));
        if (k > 0) row += std::abs(off(k - 1));
        if (k + 1 < n) row += std::abs(off(k));
        best = std::max(best, row);
    }
    return best;
}

TridiagonalMatrix build_hamiltonian(const SectorParams& params, double delta) {
    params.validate();
    const int d = sector_dimension(params);
    const double s = params.spin();
    TridiagonalMatrix h;
    h.diag.resize(d);
    h.off.resize(std::max(d - 1, 0));
    for (int k = 0; k < d; ++k) {
        h.diag(k) = delta * (k - s);
        if (k + 1 < d) {
            // <k+1| b S^+ |k> = sqrt(M-k) * sqrt((k+1)(2S-k))
            const double n_b = params.m - k;
            h.off(k) = params.g * std::sqrt(n_b * (k + 1.0) * (params.two_s - k));
        }
    }
    return h;
}

namespace {

void check_dimension(const QuantumState& state, const SectorParams& params) {
    if (state.dimension() != sector_dimension(params)) {
        throw DimensionError("state dimension " + std::to_string(state.dimension()) +
                             " does not match sector dimension " +
                             std::to_string(sector_dimension(params)));
    }
}

}  // namespace

double boson_number(const QuantumState& state, const SectorParams& params) {
    check_dimension(state, params);
    double n = 0.0;
    for (Eigen::Index k = 0; k < state.dimension(); ++k) {
        n += std::norm(state.amplitudes(k)) * static_cast<double>(params.m - k);
    }
    return n;
}

double spin_excitation_number(const QuantumState& state, const SectorParams& params) {
    check_dimension(state, params);
    double n = 0.0;
    for (Eigen::Index k = 0; k < state.dimension(); ++k) {
        n += std::norm(state.amplitudes(k)) * static_cast<double>(k);
    }
    return n;
}

double energy_expectation(const QuantumState& state, const TridiagonalMatrix& h) {
    if (state.dimension() != h.size()) throw DimensionError("energy: dimension mismatch");
    // <psi|H|psi> for real symmetric H: diagonal part plus 2 Re of the upper band.
    const auto& a = state.amplitudes;
    double e = 0.0;
    for (Eigen::Index k = 0; k < h.size(); ++k) {
        e += h.diag(k) * std::norm(a(k));
        if (k + 1 < h.size()) e += 2.0 * h.off(k) * std::real(std::conj(a(k)) * a(k + 1));
    }
    return e;
}

}  // namespace tavis
