#include "predprey/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace predprey {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// Root modulus bound for Re(zeta) >= 0: |zeta|^2 <= (|p1|+|q1|)|zeta| + |p0|+|q0|.
double root_bound(const CharCoeffs& c) {
    return std::abs(c.p1) + std::abs(c.q1) + std::sqrt(std::abs(c.p0) + std::abs(c.q0)) + 1.0;
}

}  // namespace

SearchRegion SearchRegion::make(double re_min, double re_max, double im_max, double nu) {
    if (!(re_min < re_max) || !(im_max > 0.0)) {
        throw UsageError("InvalidRegion", "need re_min < re_max and im_max > 0");
    }
    if (!(re_min > -nu)) {
        throw UsageError("OutsideOmega", "re_min = " + std::to_string(re_min) +
                                             " must exceed -nu = " + std::to_string(-nu));
    }
    return SearchRegion{re_min, re_max, im_max};
}

CharCoeffs char_coeffs(const ModelParams& p) {
    const AssumptionReport rep = check_assumptions(p);
    if (!rep.positive_equilibrium_exists) {
        throw AssumptionError("NoPositiveEquilibrium",
                              "characteristic coefficients need the positive equilibrium");
    }
    const double a = p.alpha, e = p.eta, m = p.m, r = p.r, s = p.sigma;
    const double mae2 = m * a * e * e;

    CharCoeffs c;
    c.p1 = (mae2 * (r + 2.0 * s) - a * a * e * e - m * s * e + 1.0) / mae2;
    c.p0 = s * (m * r * (2.0 * a * e - 1.0) - 2.0 * a * (a * e - 1.0)) / (m * a * e);
    c.q1 = -s;
    c.q0 = s * (-m * r * a * e * e + a * a * e * e - 1.0) / mae2;
    return c;
}

Complex g_eval(const CharCoeffs& c, Complex zeta, double tau) {
    return zeta * zeta + c.p1 * zeta + c.p0 + (c.q1 * zeta + c.q0) * std::exp(-tau * zeta);
}

Complex g_prime(const CharCoeffs& c, Complex zeta, double tau) {
    return 2.0 * zeta + c.p1 +
           (c.q1 - tau * (c.q1 * zeta + c.q0)) * std::exp(-tau * zeta);
}

Complex f_tilde(const CharCoeffs& c, Complex lambda, double tau) {
    return lambda * lambda + tau * c.p1 * lambda + tau * tau * c.p0 +
           (tau * c.q1 * lambda + tau * tau * c.q0) * std::exp(-lambda);
}

Complex det_delta(const ModelParams& p, double tau, Complex lambda) {
    if (!(lambda.real() > -p.nu * tau)) {
        throw UsageError("OutsideOmega", "Re(lambda) must exceed -nu*tau = " +
                                             std::to_string(-p.nu * tau));
    }
    const Complex pole1 = lambda + p.sigma * tau;
    const Complex pole2 = lambda + p.mu * tau;
    const double scale = std::max(1.0, std::abs(lambda));
    if (std::abs(pole1) < 1e-14 * scale || std::abs(pole2) < 1e-14 * scale) {
        throw UsageError("PoleAtLambda", "lambda coincides with a kernel pole");
    }

    // Equilibrium quantities entering the linearization. xi is the
    // fertility-weighted predator integral; the total predator integral is
    // xi / sigma. Both are independent of tau.
    const EquilibriumProfile eq = positive_equilibrium(p, tau, Form::original);
    const double xi = eq.coef;
    const double U_bar = xi / p.sigma;
    const double V_bar = eq.V_bar;
    const double D = p.m * U_bar + V_bar;

    // d/du and d/dV entries of the boundary operator's derivative.
    const double a11 = -p.m * p.alpha * p.eta * V_bar * xi / (D * D);
    const double a12 = p.alpha * p.eta * xi / D - p.alpha * p.eta * V_bar * xi / (D * D);
    const double a21 = -p.alpha * V_bar / D + p.alpha * p.m * V_bar * U_bar / (D * D);
    const double a22 = p.lambda_birth - 2.0 * p.r * V_bar / p.K - p.alpha * U_bar / D +
                       p.alpha * V_bar * U_bar / (D * D);
    const double b11 = p.alpha * p.eta * V_bar / D;

    // Column kernels: plain exponential and fertility-weighted;
    // beta* e^{-(lambda+sigma tau)} collapses to sigma e^{-lambda}.
    const Complex d1 = 1.0 / pole1;
    const Complex d2 = 1.0 / pole2;
    const Complex e1 = p.sigma * std::exp(-lambda) * d1;

    const Complex m11 = 1.0 - tau * a11 * d1 - tau * b11 * e1;
    const Complex m12 = -tau * a12 * d2;
    const Complex m21 = -tau * a21 * d1;
    const Complex m22 = 1.0 - tau * a22 * d2;
    return m11 * m22 - m12 * m21;
}

RootSearch find_roots(const CharCoeffs& c, double tau, const SearchRegion& region,
                      const RootSearchOptions& opts) {
    if (!(tau > 0.0)) throw UsageError("NonPositiveParameter", "tau must be positive");

    const double escape = 10.0 * (root_bound(c) + std::abs(region.re_min) +
                                  std::abs(region.re_max) + region.im_max);

    RootSearch out;
    std::vector<Complex> hits;
    std::vector<int> hit_counts;

    const auto record = [&](Complex z) {
        for (std::size_t i = 0; i < hits.size(); ++i) {
            if (std::abs(hits[i] - z) < opts.dedup_tol) {
                ++hit_counts[i];
                if (std::abs(g_eval(c, z, tau)) < std::abs(g_eval(c, hits[i], tau))) hits[i] = z;
                return;
            }
        }
        hits.push_back(z);
        hit_counts.push_back(1);
    };

    const int n_re = std::max(1, static_cast<int>(
                                      std::round((region.re_max - region.re_min) / opts.grid_step)));
    const int n_im = std::max(1, static_cast<int>(std::round(2.0 * region.im_max / opts.grid_step)));
    for (int i = 0; i <= n_re; ++i) {
        const double re = region.re_min + (region.re_max - region.re_min) * i / n_re;
        for (int j = 0; j <= n_im; ++j) {
            const double im = -region.im_max + 2.0 * region.im_max * j / n_im;
            ++out.seeds_total;

            Complex z(re, im);
            bool converged = false;
            for (int it = 0; it < opts.max_iterations; ++it) {
                const Complex gz = g_eval(c, z, tau);
                const Complex gpz = g_prime(c, z, tau);
                if (std::abs(gpz) < 1e-290) break;
                const Complex step = gz / gpz;
                z -= step;
                if (std::abs(z) > escape) break;
                if (std::abs(step) < 1e-13 * (1.0 + std::abs(z))) {
                    converged = true;
                    break;
                }
            }
            if (!converged || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                ++out.seeds_failed;
                continue;
            }
            if (!region.contains(z) || std::abs(g_eval(c, z, tau)) >= opts.residual_tol) continue;
            record(z);
        }
    }

    // Real coefficients: pair roots with their conjugates, snapping tiny
    // imaginary parts onto the axis.
    std::vector<ComplexRoot> roots;
    std::vector<bool> used(hits.size(), false);
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        Complex z = hits[i];
        int count = hit_counts[i];

        if (std::abs(z.imag()) < opts.dedup_tol) {
            const Complex snapped(z.real(), 0.0);
            if (std::abs(g_eval(c, snapped, tau)) < opts.residual_tol) z = snapped;
            roots.push_back({z, std::abs(g_eval(c, z, tau)), count});
            continue;
        }
        // find the recorded conjugate partner, if any
        for (std::size_t j = i + 1; j < hits.size(); ++j) {
            if (!used[j] && std::abs(hits[j] - std::conj(z)) < opts.dedup_tol) {
                used[j] = true;
                z = 0.5 * (z + std::conj(hits[j]));
                count += hit_counts[j];
                break;
            }
        }
        const Complex upper(z.real(), std::abs(z.imag()));
        const double res = std::abs(g_eval(c, upper, tau));
        if (res >= opts.residual_tol) continue;
        if (region.contains(std::conj(upper))) {
            roots.push_back({std::conj(upper), res, count});
        }
        roots.push_back({upper, res, count});
    }

    std::sort(roots.begin(), roots.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    out.roots = std::move(roots);
    return out;
}

namespace {

struct ContourScan {
    double winding;
    double min_abs_g;
};

ContourScan winding_number(const CharCoeffs& c, double tau, double eps, double R, double M,
                           int segments_per_edge) {
    const std::array<Complex, 4> corners = {Complex(eps, -M), Complex(R, -M), Complex(R, M),
                                            Complex(eps, M)};
    Complex total = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    for (int e = 0; e < 4; ++e) {
        const Complex a = corners[e];
        const Complex b = corners[(e + 1) % 4];
        const Complex d = (b - a) / static_cast<double>(segments_per_edge);
        for (int s = 0; s < segments_per_edge; ++s) {
            const Complex za = a + d * static_cast<double>(s);
            for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
                const Complex z = za + d * (0.5 * (kGlNodes[q] + 1.0));
                const Complex gz = g_eval(c, z, tau);
                min_abs = std::min(min_abs, std::abs(gz));
                total += kGlWeights[q] * (0.5 * d) * (g_prime(c, z, tau) / gz);
            }
        }
    }
    const double winding = (total / Complex(0.0, 2.0 * std::numbers::pi)).real();
    return {winding, min_abs};
}

}  // namespace

int count_unstable_roots(const CharCoeffs& c, double tau) {
    if (!(tau > 0.0)) throw UsageError("NonPositiveParameter", "tau must be positive");

    const double R = root_bound(c);
    const double M = R;
    const double g_scale = std::max(1.0, std::abs(c.p0) + std::abs(c.q0));

    bool suspected_root_on_contour = false;
    for (const double eps : {1e-4, 3e-4, 1e-3}) {
        int prev_int = -1;
        for (int segments = 8; segments <= 4096; segments *= 2) {
            const ContourScan scan = winding_number(c, tau, eps, R, M, segments);
            if (scan.min_abs_g < 1e-9 * g_scale) {
                suspected_root_on_contour = true;
                break;  // retry with a shifted contour
            }
            const double nearest = std::round(scan.winding);
            if (std::abs(scan.winding - nearest) < 1e-3) {
                const int w = static_cast<int>(nearest);
                if (w == prev_int) {
                    if (w < 0) {
                        throw NumericError("QuadratureFailure",
                                           "negative winding number " + std::to_string(w));
                    }
                    return w;
                }
                prev_int = w;
            } else {
                prev_int = -1;
            }
        }
    }
    if (suspected_root_on_contour) {
        throw NumericError("ContourThroughRoot",
                           "a characteristic root lies on every candidate contour");
    }
    throw NumericError("QuadratureFailure",
                       "winding number did not settle to an integer at tau = " +
                           std::to_string(tau));
}

}  // namespace predprey
