#ifndef PREDPREY_HOPF_HPP
#define PREDPREY_HOPF_HPP

#include <vector>

#include "predprey/spectral.hpp"

namespace predprey {

// Closed-form Hopf data for one crossing frequency: omega0, its ladder of
// critical delays tau_k (gap 2 pi / omega0), the arccos branch used, the
// transversality value (positive: roots cross rightward) and the simple-root
// margin |g'(i omega0)| at tau_0.
struct HopfResult {
    double omega0;
    std::vector<double> theta_roots;  // real roots of the theta quadratic, descending
    std::vector<double> tau_ks;       // k = 0 .. k_max
    bool branch_upper;                // arccos branch (sin expression >= 0)
    double transversality_value;
    double simple_root_margin;
};

enum class Regime { stable_focus_or_node, unstable, near_critical };

struct StabilityVerdict {
    Regime regime;
    double tau;
    int unstable_count;  // meaningful for stable/unstable regimes
    int k;               // nearest ladder index when near-critical, else -1
    double distance;     // |tau - tau_k| when near-critical
};

// Real roots of theta^2 + (p1^2 - 2 p0 - q1^2) theta + (p0^2 - q0^2) = 0 in
// descending order; empty when the discriminant is negative.
std::vector<double> theta_roots(const CharCoeffs& c);

// The unique positive crossing frequency omega0 = sqrt(theta0).
// Throws NoPositiveTheta when no positive root exists and AmbiguousTheta when
// two distinct positive roots exist (outside the single-frequency regime).
double omega0(const CharCoeffs& c);

// k-th critical delay from the arccos ladder; the branch is selected by the
// sign of the sin expression (ties take the upper branch).
double tau_k(const CharCoeffs& c, double omega0, int k);

// (2 omega0^2 + p1^2 - 2 p0 - q1^2) / ((q1 omega0)^2 + q0^2); its sign is the
// crossing direction of Re(zeta) at each tau_k.
double transversality(const CharCoeffs& c, double omega0);

// |g'(i omega0)| at the given delay; positive iff i omega0 is a simple root.
double simple_root_check(const CharCoeffs& c, double omega0, double tau);

// Full ladder analysis assuming the single-frequency regime.
HopfResult hopf_analysis(const CharCoeffs& c, int k_max = 5);

// One HopfResult per positive theta root (graceful handling of the
// two-frequency case); empty input regime throws NoPositiveTheta.
std::vector<HopfResult> hopf_branches(const CharCoeffs& c, int k_max = 5);

// Stability classification at a given delay: near-critical when tau is within
// 1e-3 of some tau_k (k <= k_max), otherwise by the unstable root count.
StabilityVerdict classify(const ModelParams& p, double tau, int k_max = 5);

}  // namespace predprey

#endif
