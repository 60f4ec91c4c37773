#ifndef PREDPREY_MODEL_HPP
#define PREDPREY_MODEL_HPP

#include <optional>

#include "predprey/errors.hpp"

namespace predprey {

// Which time/age normalization a quantity lives in. In the rescaled system
// age and time are measured in units of the maturation period tau, and the
// predator density picks up a factor tau.
enum class Form { original, rescaled };

// Biological constants of the age-structured ratio-dependent model.
//
//   lambda_birth  prey birth rate (Lambda)
//   mu            prey mortality rate
//   r             intrinsic prey growth rate, always Lambda - mu
//   K             prey carrying capacity
//   alpha         capturing rate
//   m             half-saturation constant (dimensionless)
//   sigma         predator mortality rate
//   eta           conversion efficiency (dimensionless)
//   nu            min(sigma, mu); decay bound for the resolvent half-plane
struct ModelParams {
    double lambda_birth;
    double mu;
    double r;
    double K;
    double alpha;
    double m;
    double sigma;
    double eta;
    double nu;
};

// Raw parameter record before validation; r may be omitted (derived).
struct RawParams {
    double lambda_birth;
    double mu;
    double K;
    double alpha;
    double m;
    double sigma;
    double eta;
    std::optional<double> r;
};

// Sign report for the existence and Hopf-feasibility inequalities.
// Both inequalities are strict; zero margins count as failures.
struct AssumptionReport {
    bool positive_equilibrium_exists;
    bool hopf_feasible;
    double margin_existence_upper;  // m*r*eta - (alpha*eta - 1)
    double margin_existence_lower;  // alpha*eta - 1
    double margin_hopf;             // (3ae+1)(ae-1) - m*r*eta*(3ae-1), ae = alpha*eta
};

// Which steady-state branch an EquilibriumProfile describes.
enum class EquilibriumBranch { positive, trivial };

// Exponential age profile c * exp(-rho a) of one equilibrium.
// For the positive branch (coef, rate) describe the predator density and
// V_bar is the prey level. For the trivial branch the predator is
// identically zero and (coef, rate) describe the prey age profile.
struct EquilibriumProfile {
    double coef;
    double rate;
    double V_bar;
    Form form;
    double tau;
    EquilibriumBranch branch;

    // Total population carried by the exponential profile.
    double total() const { return coef / rate; }
};

// Validates a raw record: positivity, r = Lambda - mu (> 0), nu = min(sigma, mu).
// A supplied r must agree with Lambda - mu to 1e-12 relative.
ModelParams validate(const RawParams& raw);

// Fertility plateau level beta* = sigma * e^(sigma tau); normalizes the
// survival-weighted fertility integral over [tau, inf) to one.
double beta_star(double sigma, double tau);

AssumptionReport check_assumptions(const ModelParams& p);

// Unique coexistence steady state (Lemma-level closed form). Throws
// NoPositiveEquilibrium when the existence margins are not both positive.
EquilibriumProfile positive_equilibrium(const ModelParams& p, double tau, Form form);

// Predator-free steady state; prey profile tau*mu*K * e^(-tau*mu*a),
// total prey exactly K. Always exists. Rescaled coordinates.
EquilibriumProfile trivial_equilibrium(const ModelParams& p, double tau);

// Max relative residual of the two steady-state relations (boundary renewal
// and prey balance) evaluated on the given profile.
double equilibrium_residual(const ModelParams& p, double tau, const EquilibriumProfile& prof);

// State tuple (t, a, u, V) in one coordinate form.
struct StatePoint {
    double t;
    double a;
    double u;
    double V;
};

// Original -> rescaled coordinates: (t, a, u, V) -> (t/tau, a/tau, tau*u, V).
StatePoint rescale_state(const StatePoint& s, double tau);

// Rescaled -> original coordinates; exact inverse of rescale_state.
StatePoint unscale_state(const StatePoint& s, double tau);

}  // namespace predprey

#endif
