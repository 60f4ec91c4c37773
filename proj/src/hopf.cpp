#include "predprey/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace predprey {

std::vector<double> theta_roots(const CharCoeffs& c) {
    const double b = c.p1 * c.p1 - 2.0 * c.p0 - c.q1 * c.q1;
    const double cc = c.p0 * c.p0 - c.q0 * c.q0;
    const double disc = b * b - 4.0 * cc;
    if (disc < 0.0) return {};

    // cancellation-free quadratic: compute the large-magnitude root first
    const double sd = std::sqrt(disc);
    double hi, lo;
    if (b >= 0.0) {
        lo = 0.5 * (-b - sd);
        hi = (lo != 0.0 && cc != 0.0) ? cc / lo : 0.5 * (-b + sd);
    } else {
        hi = 0.5 * (-b + sd);
        lo = (hi != 0.0 && cc != 0.0) ? cc / hi : 0.5 * (-b - sd);
    }
    return {hi, lo};
}

double omega0(const CharCoeffs& c) {
    const auto roots = theta_roots(c);
    int positives = 0;
    double theta0 = 0.0;
    for (double th : roots) {
        if (th > 0.0) {
            ++positives;
            theta0 = std::max(theta0, th);
        }
    }
    if (positives == 0) {
        throw AssumptionError("NoPositiveTheta",
                              "the frequency quadratic has no positive real root");
    }
    if (positives == 2 && roots[0] != roots[1]) {
        throw AssumptionError("AmbiguousTheta",
                              "two positive frequency candidates: theta = " +
                                  std::to_string(roots[0]) + ", " + std::to_string(roots[1]));
    }
    return std::sqrt(theta0);
}

namespace {

struct LadderAngles {
    double cos_value;   // clamped to [-1, 1]
    bool branch_upper;  // sin expression >= 0
};

LadderAngles ladder_angles(const CharCoeffs& c, double w) {
    const double w2 = w * w;
    const double den = c.q1 * c.q1 * w2 + c.q0 * c.q0;
    double cos_v = ((c.q0 - c.p1 * c.q1) * w2 - c.p0 * c.q0) / den;
    const double sin_v = w * (c.q1 * w2 + c.p1 * c.q0 - c.p0 * c.q1) / den;
    if (std::abs(cos_v) > 1.0) {
        if (std::abs(cos_v) - 1.0 > 1e-10) {
            throw NumericError("CosineOutOfRange",
                               "cos expression = " + std::to_string(cos_v) +
                                   "; omega0 does not belong to this coefficient set");
        }
        cos_v = std::copysign(1.0, cos_v);
    }
    return {cos_v, sin_v >= 0.0};
}

}  // namespace

double tau_k(const CharCoeffs& c, double omega0, int k) {
    if (!(omega0 > 0.0)) throw UsageError("NonPositiveParameter", "omega0 must be positive");
    if (k < 0) throw UsageError("NonPositiveParameter", "k must be nonnegative");
    const LadderAngles ang = ladder_angles(c, omega0);
    const double two_pi = 2.0 * std::numbers::pi;
    const double base = ang.branch_upper ? std::acos(ang.cos_value)
                                         : two_pi - std::acos(ang.cos_value);
    return (base + two_pi * k) / omega0;
}

double transversality(const CharCoeffs& c, double omega0) {
    const double w2 = omega0 * omega0;
    return (2.0 * w2 + c.p1 * c.p1 - 2.0 * c.p0 - c.q1 * c.q1) /
           (c.q1 * c.q1 * w2 + c.q0 * c.q0);
}

double simple_root_check(const CharCoeffs& c, double omega0, double tau) {
    return std::abs(g_prime(c, Complex(0.0, omega0), tau));
}

namespace {

HopfResult build_result(const CharCoeffs& c, double w, std::vector<double> thetas, int k_max) {
    HopfResult res;
    res.omega0 = w;
    res.theta_roots = std::move(thetas);
    res.tau_ks.reserve(k_max + 1);
    for (int k = 0; k <= k_max; ++k) res.tau_ks.push_back(tau_k(c, w, k));
    res.branch_upper = ladder_angles(c, w).branch_upper;
    res.transversality_value = transversality(c, w);
    res.simple_root_margin = simple_root_check(c, w, res.tau_ks.front());
    return res;
}

}  // namespace

HopfResult hopf_analysis(const CharCoeffs& c, int k_max) {
    return build_result(c, omega0(c), theta_roots(c), k_max);
}

std::vector<HopfResult> hopf_branches(const CharCoeffs& c, int k_max) {
    const auto thetas = theta_roots(c);
    std::vector<double> positive;
    for (double th : thetas) {
        if (th > 0.0 && (positive.empty() || positive.back() != th)) positive.push_back(th);
    }
    if (positive.empty()) {
        throw AssumptionError("NoPositiveTheta",
                              "the frequency quadratic has no positive real root");
    }
    std::vector<HopfResult> out;
    for (double th : positive) out.push_back(build_result(c, std::sqrt(th), thetas, k_max));
    return out;
}

StabilityVerdict classify(const ModelParams& p, double tau, int k_max) {
    if (!(tau > 0.0)) throw UsageError("NonPositiveParameter", "tau must be positive");
    const CharCoeffs c = char_coeffs(p);

    StabilityVerdict v;
    v.tau = tau;
    v.k = -1;
    v.distance = 0.0;

    bool have_ladder = true;
    std::vector<HopfResult> branches;
    try {
        branches = hopf_branches(c, k_max);
    } catch (const AssumptionError&) {
        have_ladder = false;  // no crossings: fall through to root counting
    }
    if (have_ladder) {
        for (const auto& br : branches) {
            for (int k = 0; k < static_cast<int>(br.tau_ks.size()); ++k) {
                const double dist = std::abs(tau - br.tau_ks[k]);
                if (dist < 1e-3) {
                    v.regime = Regime::near_critical;
                    v.k = k;
                    v.distance = dist;
                    v.unstable_count = -1;
                    return v;
                }
            }
        }
    }

    v.unstable_count = count_unstable_roots(c, tau);
    v.regime = (v.unstable_count == 0) ? Regime::stable_focus_or_node : Regime::unstable;
    return v;
}

}  // namespace predprey
