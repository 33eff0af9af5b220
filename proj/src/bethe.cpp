#include "tavis/bethe.hpp"

#include "tavis/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tavis {

namespace {

// log of sqrt((M-k)!) * sqrt(k! (2S)! / (2S-k)!)
double log_basis_weight(int k, int m, int two_s) {
    return 0.5 * (std::lgamma(m - k + 1.0) + std::lgamma(k + 1.0) + std::lgamma(two_s + 1.0) -
                  std::lgamma(two_s - k + 1.0));
}

void require_invertible_sector(const SectorParams& params) {
    params.validate();
    if (params.m > params.two_s) {
        throw ParameterError("Bethe representation requires M <= 2S (M=" +
                             std::to_string(params.m) + ", 2S=" + std::to_string(params.two_s) +
                             ")");
    }
}

// Unnormalized Bethe vector in the sector with `m` excitations, scaled by exp(-log_scale).
Eigen::VectorXcd raw_bethe_vector(std::span<const cplx> lambdas, int m, int two_s, double g,
                                  double log_scale) {
    std::vector<cplx> inverse(lambdas.size());
    std::transform(lambdas.begin(), lambdas.end(), inverse.begin(),
                   [](cplx l) { return 1.0 / l; });
    const auto e = elementary_symmetric(inverse);
    const int d = std::min(m, two_s) + 1;
    Eigen::VectorXcd v(d);
    for (int k = 0; k < d; ++k) {
        const double weight = std::exp(log_basis_weight(k, m, two_s) - log_scale);
        v(k) = std::pow(-g, k) * e[k] * weight;
    }
    return v;
}

double pair_distance(cplx a, cplx b) {
    const bool fa = std::isfinite(a.real()) && std::isfinite(a.imag());
    const bool fb = std::isfinite(b.real()) && std::isfinite(b.imag());
    if (!fa && !fb) return 0.0;
    if (!fa || !fb) return std::numeric_limits<double>::max() / 16;
    return std::abs(a - b);
}

}  // namespace

RapiditySet RapiditySet::finite(std::vector<std::complex<double>> values) {
    RapiditySet set;
    set.diverged.assign(values.size(), false);
    set.lambdas = std::move(values);
    return set;
}

std::size_t RapiditySet::diverged_count() const noexcept {
    return static_cast<std::size_t>(std::count(diverged.begin(), diverged.end(), true));
}

std::vector<std::size_t> match_roots(std::span<const std::complex<double>> reference,
                                     std::span<const std::complex<double>> candidate) {
    if (reference.size() != candidate.size()) {
        throw DimensionError("match_roots: root counts differ");
    }
    const std::size_t n = reference.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (n <= 1) return perm;

    if (n <= 8) {
        std::vector<std::size_t> best = perm;
        double best_cost = std::numeric_limits<double>::infinity();
        do {
            double cost = 0.0;
            for (std::size_t i = 0; i < n && cost < best_cost; ++i) {
                cost += pair_distance(reference[i], candidate[perm[i]]);
            }
            if (cost < best_cost) {
                best_cost = cost;
                best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    // Greedy: repeatedly take the globally closest unassigned pair.
    std::vector<bool> ref_used(n, false), cand_used(n, false);
    for (std::size_t round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (ref_used[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (cand_used[j]) continue;
                const double dist = pair_distance(reference[i], candidate[j]);
                if (dist < best) {
                    best = dist;
                    bi = i;
                    bj = j;
                }
            }
        }
        ref_used[bi] = cand_used[bj] = true;
        perm[bi] = bj;
    }
    return perm;
}

double paired_distance(std::span<const std::complex<double>> reference,
                       std::span<const std::complex<double>> candidate) {
    const auto perm = match_roots(reference, candidate);
    double worst = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        worst = std::max(worst, pair_distance(reference[i], candidate[perm[i]]));
    }
    return worst;
}

double BetheState::norm() const { return std::exp(log_norm); }

std::vector<cplx> elementary_symmetric(std::span<const cplx> values) {
    // Coefficients of prod (1 + x_j t): e_k accumulates from the top down.
    std::vector<cplx> e(values.size() + 1, cplx{0.0, 0.0});
    e[0] = 1.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        for (std::size_t k = j + 1; k >= 1; --k) e[k] += values[j] * e[k - 1];
    }
    return e;
}

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
    if (coeffs.empty() || coeffs[0] == cplx{0.0, 0.0}) {
        throw ParameterError("polynomial_roots: leading coefficient must be nonzero");
    }
    const std::size_t n = coeffs.size() - 1;
    if (n == 0) return {};

    std::vector<cplx> monic(coeffs.begin(), coeffs.end());
    for (auto& c : monic) c /= coeffs[0];

    std::vector<cplx> roots(n);
    if (n == 1) {
        roots[0] = -monic[1];
    } else {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t j = 0; j < n; ++j) companion(0, j) = -monic[j + 1];
        for (std::size_t i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        if (solver.info() != Eigen::Success) {
            throw ConvergenceError("polynomial_roots: companion eigenvalue iteration failed");
        }
        for (std::size_t i = 0; i < n; ++i) roots[i] = solver.eigenvalues()(i);
    }

    auto eval = [&](cplx z, cplx& deriv) {
        cplx p = monic[0];
        deriv = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            deriv = deriv * z + p;
            p = p * z + monic[k];
        }
        return p;
    };
    for (auto& z : roots) {
        for (int pass = 0; pass < 2; ++pass) {
            cplx dp;
            const cplx p = eval(z, dp);
            if (std::abs(dp) == 0.0) break;
            const cplx trial = z - p / dp;
            cplx unused;
            if (std::abs(eval(trial, unused)) < std::abs(p)) z = trial;
        }
    }
    return roots;
}

BetheState bethe_amplitudes(const RapiditySet& lambdas, const SectorParams& params) {
    require_invertible_sector(params);
    if (lambdas.size() != static_cast<std::size_t>(params.m)) {
        throw DimensionError("bethe_amplitudes: expected M rapidities");
    }
    if (!lambdas.all_finite()) throw DivergedRootError("bethe_amplitudes: diverged root present");
    for (const auto& l : lambdas.lambdas) {
        if (l == cplx{0.0, 0.0}) throw ZeroRapidityError("bethe_amplitudes: rapidity at zero");
    }
    const double log_scale = log_basis_weight(0, params.m, params.two_s);
    Eigen::VectorXcd raw =
        raw_bethe_vector(lambdas.lambdas, params.m, params.two_s, params.g, log_scale);
    const double n = raw.norm();
    BetheState out;
    out.state.amplitudes = raw / n;
    out.log_norm = std::log(n) + log_scale;
    return out;
}

RapiditySet extract_rapidities(const QuantumState& state, const SectorParams& params) {
    require_invertible_sector(params);
    const int m = params.m;
    if (state.dimension() != m + 1) throw DimensionError("extract_rapidities: dimension mismatch");

    const auto& psi = state.amplitudes;
    const double scale = psi.norm();
    if (!(std::abs(psi(0)) >= 1e-12 * scale)) {
        throw DegenerateAmplitudeError(
            "extract_rapidities: psi_0 vanishes (rapidities at zero are not representable)");
    }

    // Monic polynomial in mu = 1/lambda: sum_k (-1)^k e_k mu^(M-k).
    const double log_w0 = log_basis_weight(0, m, params.two_s);
    std::vector<cplx> coeffs(m + 1);
    double condition = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double ratio = std::exp(log_basis_weight(k, m, params.two_s) - log_w0);
        const cplx e_k = (psi(k) / psi(0)) / (std::pow(-params.g, k) * ratio);
        coeffs[k] = (k % 2 == 0 ? 1.0 : -1.0) * e_k;
        condition += std::abs(e_k);
    }

    const auto mu = polynomial_roots(coeffs);
    double mu_max = 0.0;
    for (const auto& z : mu) mu_max = std::max(mu_max, std::abs(z));
    const double threshold = 1e-8 * (mu_max + 1.0);

    RapiditySet out;
    out.condition = condition;
    out.lambdas.reserve(m);
    out.diverged.reserve(m);
    for (const auto& z : mu) {
        if (std::abs(z) < threshold) {
            out.lambdas.emplace_back(std::numeric_limits<double>::infinity(), 0.0);
            out.diverged.push_back(true);
        } else {
            out.lambdas.push_back(1.0 / z);
            out.diverged.push_back(false);
        }
    }
    return out;
}

void require_regular(const RapiditySet& lambdas, const SectorParams& params) {
    if (lambdas.size() != static_cast<std::size_t>(params.m)) {
        throw DimensionError("expected M rapidities");
    }
    if (!lambdas.all_finite()) throw DivergedRootError("diverged root present");
    const double tol = kCollisionTolerance * params.g;
    const auto& l = lambdas.lambdas;
    for (std::size_t a = 0; a < l.size(); ++a) {
        if (std::abs(l[a]) < tol) {
            throw ZeroRapidityError("rapidity " + std::to_string(a) + " at zero");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (std::abs(l[a] - l[b]) < tol) {
                throw CollisionError("rapidities " + std::to_string(b) + " and " +
                                     std::to_string(a) + " collide");
            }
        }
    }
}

BetheResidual bethe_residual(const RapiditySet& lambdas, const SectorParams& params,
                             double delta) {
    require_regular(lambdas, params);
    const double g2 = params.g * params.g;
    const double s = params.spin();
    const auto& l = lambdas.lambdas;
    BetheResidual out;
    out.f.resize(l.size());
    for (std::size_t a = 0; a < l.size(); ++a) {
        cplx f = -2.0 * g2 * s / l[a] + l[a] - delta;
        for (std::size_t b = 0; b < l.size(); ++b) {
            if (b != a) f += 2.0 * g2 / (l[a] - l[b]);
        }
        out.f[a] = f;
        out.max_abs = std::max(out.max_abs, std::abs(f));
    }
    return out;
}

cplx bethe_energy(const RapiditySet& lambdas, const SectorParams& params, double delta) {
    if (!lambdas.all_finite()) throw DivergedRootError("bethe_energy: diverged root present");
    cplx sum{0.0, 0.0};
    for (const auto& l : lambdas.lambdas) sum += l;
    return delta * (params.m - params.spin()) - sum;
}

double offshell_identity_check(const RapiditySet& lambdas, const SectorParams& params,
                               double delta) {
    require_invertible_sector(params);
    const auto residual = bethe_residual(lambdas, params, delta);
    const int m = params.m;
    const int two_s = params.two_s;
    const double log_scale = log_basis_weight(0, m, two_s);

    const Eigen::VectorXcd state = raw_bethe_vector(lambdas.lambdas, m, two_s, params.g, log_scale);
    const Eigen::VectorXcd lhs = build_hamiltonian(params, delta).apply(state);

    cplx f_sum{0.0, 0.0};
    for (const auto& f : residual.f) f_sum += f;
    Eigen::VectorXcd rhs = (bethe_energy(lambdas, params, delta) + f_sum) * state;

    std::vector<cplx> others;
    for (int a = 0; a < m; ++a) {
        others.clear();
        for (int b = 0; b < m; ++b) {
            if (b != a) others.push_back(lambdas.lambdas[b]);
        }
        const Eigen::VectorXcd reduced = raw_bethe_vector(others, m - 1, two_s, params.g, log_scale);
        const cplx coeff = params.g * residual.f[a] / lambdas.lambdas[a];
        // S^+ takes spin excitation k of the M-1 sector to k+1 of the M sector.
        for (Eigen::Index k = 0; k < reduced.size(); ++k) {
            rhs(k + 1) += coeff * std::sqrt((k + 1.0) * (two_s - k)) * reduced(k);
        }
    }
    const double scale = lhs.norm();
    const double defect = (lhs - rhs).norm();
    return scale > 0.0 ? defect / scale : defect;
}

RefinedRoots refine_static_roots(const RapiditySet& lambdas, const SectorParams& params,
                                 double delta, int max_iterations) {
    const double g2 = params.g * params.g;
    const double s = params.spin();
    const double tol = 1e-12 * params.g;
    const int m = params.m;

    RefinedRoots out;
    out.roots = lambdas;
    for (int iter = 0;; ++iter) {
        const auto res = bethe_residual(out.roots, params, delta);
        out.max_residual = res.max_abs;
        out.iterations = iter;
        if (res.max_abs < tol) return out;
        if (iter >= max_iterations) {
            throw ConvergenceError("refine_static_roots: no convergence after " +
                                   std::to_string(max_iterations) + " iterations (max|f| = " +
                                   std::to_string(res.max_abs) + ")");
        }

        const auto& l = out.roots.lambdas;
        Eigen::MatrixXcd jac(m, m);
        Eigen::VectorXcd rhs(m);
        for (int a = 0; a < m; ++a) {
            cplx diag = 2.0 * g2 * s / (l[a] * l[a]) + 1.0;
            for (int b = 0; b < m; ++b) {
                if (b == a) continue;
                const cplx inv = 1.0 / (l[a] - l[b]);
                const cplx coupling = 2.0 * g2 * inv * inv;
                diag -= coupling;
                jac(a, b) = coupling;
            }
            jac(a, a) = diag;
            rhs(a) = -res.f[a];
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(jac);
        if (!lu.isInvertible()) {
            throw ConvergenceError("refine_static_roots: singular Jacobian");
        }
        const Eigen::VectorXcd step = lu.solve(rhs);
        double step_size = 0.0, root_size = 0.0;
        for (int a = 0; a < m; ++a) {
            out.roots.lambdas[a] += step(a);
            step_size = std::max(step_size, std::abs(step(a)));
            root_size = std::max(root_size, std::abs(out.roots.lambdas[a]));
        }
        // Roundoff floor: the update no longer changes the roots.
        if (step_size <= 4.0 * std::numeric_limits<double>::epsilon() * root_size) {
            const auto final_res = bethe_residual(out.roots, params, delta);
            out.max_residual = final_res.max_abs;
            out.iterations = iter + 1;
            return out;
        }
    }
}

}  // namespace tavis
