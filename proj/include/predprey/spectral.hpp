#ifndef PREDPREY_SPECTRAL_HPP
#define PREDPREY_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "predprey/model.hpp"

namespace predprey {

using Complex = std::complex<double>;

// Coefficients of the characteristic quasi-polynomial
//   g(z) = z^2 + p1 z + p0 + (q1 z + q0) e^(-tau z).
// Produced from ModelParams they satisfy q1 = -sigma and
// p0 + q0 = sigma(ae-1)[mre-(ae-1)]/(m alpha eta^2) > 0.
struct CharCoeffs {
    double p1;
    double p0;
    double q1;
    double q0;
};

struct ComplexRoot {
    Complex value;
    double residual;         // |g(value)|
    int multiplicity_hint;   // number of grid seeds that converged here
};

// Rectangle [re_min, re_max] x [-im_max, im_max] in zeta coordinates.
struct SearchRegion {
    double re_min;
    double re_max;
    double im_max;

    // Validated constructor: basic shape plus the resolvent half-plane
    // restriction Re(zeta) > -nu.
    static SearchRegion make(double re_min, double re_max, double im_max, double nu);

    bool contains(const Complex& z) const {
        return z.real() >= re_min && z.real() <= re_max && std::abs(z.imag()) <= im_max;
    }
};

struct RootSearchOptions {
    double grid_step = 0.05;    // Newton seed spacing, both axes
    double residual_tol = 1e-10;
    double dedup_tol = 1e-6;
    int max_iterations = 60;
};

struct RootSearch {
    std::vector<ComplexRoot> roots;   // conjugate-symmetric, deduplicated
    std::size_t seeds_total = 0;
    std::size_t seeds_failed = 0;     // Newton runs that did not converge
};

// Closed-form quasi-polynomial coefficients at the positive equilibrium.
// Throws NoPositiveEquilibrium when the existence margins fail.
CharCoeffs char_coeffs(const ModelParams& p);

// g(zeta) at delay tau.
Complex g_eval(const CharCoeffs& c, Complex zeta, double tau);

// dg/dzeta at fixed tau: 2 zeta + p1 + [q1 - tau (q1 zeta + q0)] e^(-tau zeta).
Complex g_prime(const CharCoeffs& c, Complex zeta, double tau);

// Unscaled characteristic function
//   f~(lambda) = lambda^2 + tau p1 lambda + tau^2 p0 + (tau q1 lambda + tau^2 q0) e^(-lambda),
// related to g by f~(tau zeta) = tau^2 g(zeta).
Complex f_tilde(const CharCoeffs& c, Complex lambda, double tau);

// Characteristic determinant evaluated from the 2x2 linearization entries and
// integral kernels at the positive equilibrium; equals
// f~(lambda) / [(lambda + sigma tau)(lambda + mu tau)] on the resolvent set.
// Throws OutsideOmega for Re(lambda) <= -nu*tau and PoleAtLambda at the
// kernel poles -sigma*tau, -mu*tau.
Complex det_delta(const ModelParams& p, double tau, Complex lambda);

// Newton search for zeros of g over the region, seeded on a uniform grid.
// Returned roots have residual below opts.residual_tol, are deduplicated at
// opts.dedup_tol and closed under conjugation (or lie on the real axis).
RootSearch find_roots(const CharCoeffs& c, double tau, const SearchRegion& region,
                      const RootSearchOptions& opts = {});

// Number of zeros of g with Re(zeta) > 0 (counted with multiplicity) via the
// winding number of g around a rectangle enclosing the a-priori root bound.
// Throws ContourThroughRoot / QuadratureFailure when no reliable contour is
// found.
int count_unstable_roots(const CharCoeffs& c, double tau);

}  // namespace predprey

#endif
