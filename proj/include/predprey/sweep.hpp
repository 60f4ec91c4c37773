#ifndef PREDPREY_SWEEP_HPP
#define PREDPREY_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "predprey/simulate.hpp"

namespace predprey {

enum class SweepSolver { pde, dde };

// One-at-a-time parameter sweep: substitute each value into the base
// parameter set, recompute feasibility and tau_0, simulate at the fixed
// delay, and summarize the oscillation.
struct SweepSpec {
    ModelParams base;
    double tau;
    std::string vary;  // one of K, alpha, m, eta, sigma
    std::vector<double> values;
    double t_end;
    double t_transient;
    SweepSolver solver = SweepSolver::pde;
    InitialData initial{};
    Form form = Form::rescaled;
    double da = 0.01;          // PDE resolution
    int steps_per_delay = 200; // DDE resolution
    double sample_every = 0.1;
};

struct SweepRow {
    double value;
    bool feasible;                            // positive equilibrium exists
    std::optional<double> tau0;               // first critical delay, if Hopf-feasible
    std::optional<OscillationMetrics> metrics;
    std::string error;                        // per-row failure, empty on success
};

// Rows come back in input order; per-row failures never abort the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct HopfCurvePoint {
    double value;
    std::optional<double> tau0;
    std::string note;  // reason when tau0 is absent
};

// tau_0 as a function of one parameter.
std::vector<HopfCurvePoint> hopf_curve(const ModelParams& base, const std::string& vary,
                                       const std::vector<double>& values);

// Substitute one named parameter and re-validate.
ModelParams substitute_parameter(const ModelParams& base, const std::string& name, double value);

}  // namespace predprey

#endif
