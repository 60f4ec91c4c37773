#ifndef PREDPREY_SIMULATE_HPP
#define PREDPREY_SIMULATE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "predprey/model.hpp"

namespace predprey {

// Node-based age discretization on [0, a_max]; node j sits at a = j * da.
// da is adjusted from the requested value so that the fertility threshold
// (1 rescaled, tau original) falls exactly on a node, and a_max is large
// enough that exp(-decay_rate * a_max) < 1e-12.
struct AgeGrid {
    double a_max;
    double da;
    std::size_t n_cells;         // a_max = n_cells * da; nodes 0..n_cells
    std::size_t threshold_cell;  // first fertile node
    double decay_rate;           // sigma (original) or tau*sigma (rescaled)
};

struct PdeState {
    double t;
    std::vector<double> u;  // predator density at the grid nodes
    double V;               // prey
};

// Exponential initial data u(0, a) = u0_coef * exp(-u0_rate * a), V(0) = V0.
struct InitialData {
    double u0_coef;
    double u0_rate;
    double V0;
};

struct TrajectorySample {
    double t;
    double U;  // total predators
    double V;
};

struct AgeSnapshot {
    double t;
    std::vector<double> u;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<AgeSnapshot> snapshots;
    std::vector<double> snapshot_ages;  // node coordinates for snapshot rows

    // provenance
    std::string solver;  // "pde" or "dde"
    Form form;
    double tau;
    double dt;
    double sample_dt;
    ModelParams params;
};

struct OscillationMetrics {
    double amplitude_U;
    double amplitude_V;
    double mean_U;
    double mean_V;
    std::optional<double> period;  // mean peak spacing of V; needs >= 3 peaks
    bool converged;                // amplitude_V < 1e-3 * mean_V
};

AgeGrid build_grid(const ModelParams& p, double tau, Form form, double da);

// One step of size dt = da: exact characteristic transport, renewal boundary
// from trapezoid quadrature of the shifted density, midpoint (RK2) prey update
// with the predator integral frozen at the step start.
PdeState step_pde(const PdeState& s, const ModelParams& p, double tau, Form form,
                  const AgeGrid& grid);

struct PdeRunOptions {
    double t_end;
    double sample_every = 0.1;
    bool keep_snapshots = false;
    double snapshot_every = 1.0;
};

Trajectory simulate_pde(const ModelParams& p, double tau, Form form, const AgeGrid& grid,
                        const std::function<double(double)>& u0, double V0,
                        const PdeRunOptions& opts);

Trajectory simulate_pde(const ModelParams& p, double tau, Form form, const AgeGrid& grid,
                        const InitialData& init, const PdeRunOptions& opts);

// Closed three-variable delay reduction of the age-structured system:
//   b = eta alpha V P / (m U + V)
//   U' = b - sigma U
//   P' = sigma b(t - delay) - sigma P
//   V' = r V (1 - V/K) - alpha V U / (m U + V)
// with every right-hand side multiplied by tau (and delay 1) in rescaled form.
struct DdeSystem {
    ModelParams p;
    double tau;
    Form form;

    double delay() const { return form == Form::rescaled ? 1.0 : tau; }
    double time_factor() const { return form == Form::rescaled ? tau : 1.0; }

    double birth(double U, double P, double V) const;
    // derivative of (U, P, V) given the delayed birth value
    void rhs(double U, double P, double V, double birth_delayed, double& dU, double& dP,
             double& dV) const;
};

DdeSystem reduce_to_dde(const ModelParams& p, double tau, Form form);

// State at t = 0 plus the prenatal birth history b(s), s <= 0.
struct DdeHistory {
    double U0;
    double P0;
    double V0;
    std::function<double(double)> birth;
};

// Constant history equal to b(0) computed from the exponential initial data.
DdeHistory dde_history_constant(const DdeSystem& sys, const InitialData& init);

// Renewal-consistent history reconstructed from the initial age density along
// characteristics: b(s) = u0(-s) e^(-rho s) / time-scale.
DdeHistory dde_history_from_density(const DdeSystem& sys, const InitialData& init);

struct DdeRunOptions {
    double dt;  // must divide the delay exactly, delay/dt >= 100
    double t_end;
    double sample_every = 0.1;
};

// Method of steps: classical RK4 with the delayed birth taken from the
// history function over the first delay interval and from the stored birth
// sequence afterwards (cubic interpolation at stage midpoints). The history
// is consumed on [-delay, 0].
Trajectory simulate_dde(const DdeSystem& sys, const DdeHistory& history,
                        const DdeRunOptions& opts);

// Post-transient oscillation summary. Peaks are strict local maxima of V
// filtered at relative prominence 1e-3 of the mean.
OscillationMetrics metrics(const Trajectory& traj, double t_transient);

// Max over samples of |U_a - U_b| / (1 + |U_a|) and |V_a - V_b| / (1 + |V_a|).
// Requires the same sampling cadence and span.
double compare(const Trajectory& a, const Trajectory& b);

}  // namespace predprey

#endif
