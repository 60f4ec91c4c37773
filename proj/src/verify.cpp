#include "predprey/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "predprey/hopf.hpp"
#include "predprey/spectral.hpp"

namespace predprey {

ModelParams random_feasible_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    const double eta = uniform(0.5, 2.0);
    const double ae = uniform(1.05, 4.0);  // alpha * eta
    const double alpha = ae / eta;

    // existence needs mre > ae - 1; the Hopf margin caps mre from above
    const double lo = ae - 1.0;
    const double hi = (3.0 * ae + 1.0) * (ae - 1.0) / (3.0 * ae - 1.0);
    const double mre = lo + uniform(0.1, 0.9) * (hi - lo);

    const double r = uniform(0.5, 2.0);
    const double m = mre / (r * eta);
    const double sigma = uniform(0.2, 1.0);
    const double mu = uniform(0.1, 1.0);
    const double K = uniform(50.0, 500.0);

    return validate(RawParams{mu + r, mu, K, alpha, m, sigma, eta, {}});
}

std::vector<VerifyCheck> run_verify(const ModelParams& p, std::uint64_t seed, int samples) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    std::vector<VerifyCheck> checks;
    const CharCoeffs c = char_coeffs(p);

    {  // (a) f~(tau zeta) = tau^2 g(zeta)
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double tau = uniform(1e-3, 5.0);
            const Complex zeta(uniform(-2.0, 2.0), uniform(-2.0, 2.0));
            const Complex lhs = f_tilde(c, tau * zeta, tau);
            const Complex rhs = tau * tau * g_eval(c, zeta, tau);
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-12});
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        checks.push_back({"scaling identity f~(tau zeta) = tau^2 g(zeta)", worst < 1e-12, worst,
                          1e-12});
    }

    {  // (b) determinant equivalence on the resolvent set
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double tau = uniform(0.1, 5.0);
            const Complex lambda(uniform(-0.9 * p.nu * tau, 3.0), uniform(-4.0, 4.0));
            const Complex lhs = det_delta(p, tau, lambda);
            const Complex gt = (lambda + p.sigma * tau) * (lambda + p.mu * tau);
            const Complex rhs = f_tilde(c, lambda, tau) / gt;
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-12});
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        checks.push_back({"determinant equals f~/g~ on Omega", worst < 1e-10, worst, 1e-10});
    }

    std::vector<ModelParams> draws;
    draws.reserve(samples);
    for (int i = 0; i < samples; ++i) draws.push_back(random_feasible_params(rng));

    {  // (c) closed-form equilibria satisfy the steady-state relations
        double worst = 0.0;
        for (const ModelParams& q : draws) {
            const double tau = uniform(0.1, 5.0);
            worst = std::max(worst,
                             equilibrium_residual(q, tau, positive_equilibrium(q, tau, Form::rescaled)));
            worst = std::max(worst,
                             equilibrium_residual(q, tau, positive_equilibrium(q, tau, Form::original)));
        }
        checks.push_back({"equilibrium residuals", worst < 1e-10, worst, 1e-10});
    }

    {  // (d) p0 + q0 closed form
        double worst = 0.0;
        for (const ModelParams& q : draws) {
            const CharCoeffs cq = char_coeffs(q);
            const double ae = q.alpha * q.eta;
            const double mre = q.m * q.r * q.eta;
            const double closed =
                q.sigma * (ae - 1.0) * (mre - (ae - 1.0)) / (q.m * q.alpha * q.eta * q.eta);
            worst = std::max(worst, std::abs(cq.p0 + cq.q0 - closed) / std::abs(closed));
        }
        checks.push_back({"p0 + q0 identity", worst < 1e-12, worst, 1e-12});
    }

    {  // (e) transversality and simple-root margins positive on feasible draws
        double worst_t = std::numeric_limits<double>::infinity();
        double worst_m = std::numeric_limits<double>::infinity();
        for (const ModelParams& q : draws) {
            const CharCoeffs cq = char_coeffs(q);
            const double w = omega0(cq);
            worst_t = std::min(worst_t, transversality(cq, w));
            worst_m = std::min(worst_m, simple_root_check(cq, w, tau_k(cq, w, 0)));
        }
        checks.push_back({"transversality > 0 on feasible draws", worst_t > 0.0, worst_t, 0.0});
        checks.push_back({"simple-root margin > 0 on feasible draws", worst_m > 0.0, worst_m, 0.0});
    }

    {  // (f) ladder gap 2 pi / omega0
        double worst = 0.0;
        for (const ModelParams& q : draws) {
            const CharCoeffs cq = char_coeffs(q);
            const double w = omega0(cq);
            const double gap = tau_k(cq, w, 1) - tau_k(cq, w, 0);
            const double expected = 2.0 * std::numbers::pi / w;
            worst = std::max(worst, std::abs(gap - expected) / expected);
        }
        checks.push_back({"tau_k ladder gap = 2 pi / omega0", worst < 1e-12, worst, 1e-12});
    }

    return checks;
}

}  // namespace predprey
