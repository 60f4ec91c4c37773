#include "predprey/sweep.hpp"

#include "predprey/hopf.hpp"

namespace predprey {

ModelParams substitute_parameter(const ModelParams& base, const std::string& name, double value) {
    RawParams raw{base.lambda_birth, base.mu, base.K, base.alpha, base.m, base.sigma, base.eta, {}};
    if (name == "K") {
        raw.K = value;
    } else if (name == "alpha") {
        raw.alpha = value;
    } else if (name == "m") {
        raw.m = value;
    } else if (name == "eta") {
        raw.eta = value;
    } else if (name == "sigma") {
        raw.sigma = value;
    } else {
        throw UsageError("SchemaError", "unknown sweep parameter '" + name +
                                            "' (expected K, alpha, m, eta or sigma)");
    }
    return validate(raw);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    std::vector<SweepRow> rows;
    rows.reserve(spec.values.size());

    for (double value : spec.values) {
        SweepRow row;
        row.value = value;
        row.feasible = false;
        try {
            const ModelParams p = substitute_parameter(spec.base, spec.vary, value);
            const AssumptionReport rep = check_assumptions(p);
            row.feasible = rep.positive_equilibrium_exists;

            if (rep.hopf_feasible) {
                const CharCoeffs c = char_coeffs(p);
                row.tau0 = tau_k(c, omega0(c), 0);
            }
            if (row.feasible) {
                Trajectory traj;
                if (spec.solver == SweepSolver::pde) {
                    const AgeGrid grid = build_grid(p, spec.tau, spec.form, spec.da);
                    traj = simulate_pde(p, spec.tau, spec.form, grid, spec.initial,
                                        {spec.t_end, spec.sample_every, false, 1.0});
                } else {
                    const DdeSystem sys = reduce_to_dde(p, spec.tau, spec.form);
                    const DdeRunOptions opts{sys.delay() / spec.steps_per_delay, spec.t_end,
                                             spec.sample_every};
                    traj = simulate_dde(sys, dde_history_constant(sys, spec.initial), opts);
                }
                row.metrics = metrics(traj, spec.t_transient);
            } else {
                row.error = "no positive equilibrium at this value";
            }
        } catch (const Error& e) {
            row.metrics.reset();
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<HopfCurvePoint> hopf_curve(const ModelParams& base, const std::string& vary,
                                       const std::vector<double>& values) {
    std::vector<HopfCurvePoint> points;
    points.reserve(values.size());
    for (double value : values) {
        HopfCurvePoint pt;
        pt.value = value;
        try {
            const ModelParams p = substitute_parameter(base, vary, value);
            const AssumptionReport rep = check_assumptions(p);
            if (!rep.hopf_feasible) {
                pt.note = rep.positive_equilibrium_exists
                              ? "Hopf margin not positive"
                              : "no positive equilibrium";
            } else {
                const CharCoeffs c = char_coeffs(p);
                pt.tau0 = tau_k(c, omega0(c), 0);
            }
        } catch (const Error& e) {
            pt.note = e.what();
        }
        points.push_back(std::move(pt));
    }
    return points;
}

}  // namespace predprey
