#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "predprey/config.hpp"
#include "predprey/csv.hpp"
#include "predprey/hopf.hpp"
#include "predprey/verify.hpp"

namespace {

using namespace predprey;

struct CommonArgs {
    std::string config_path;
    double tau_override = -1.0;

    RunConfig load() const {
        RunConfig cfg = load_config(config_path);
        if (tau_override > 0.0) cfg.tau = tau_override;
        return cfg;
    }
};

// "--out -" selects standard output
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("SyntaxError", "cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void print_profile(const char* label, const EquilibriumProfile& prof, const ModelParams& p,
                   double tau) {
    std::cout << label << ": coef = " << format_human(prof.coef)
              << ", decay rate = " << format_human(prof.rate)
              << ", total = " << format_human(prof.total())
              << ", V = " << format_human(prof.V_bar)
              << ", residual = " << format_human(equilibrium_residual(p, tau, prof)) << "\n";
}

int cmd_equilibria(const CommonArgs& args) {
    const RunConfig cfg = args.load();
    const AssumptionReport rep = check_assumptions(cfg.params);
    std::cout << "tau = " << format_human(cfg.tau) << "\n";
    print_profile("trivial equilibrium (rescaled prey profile)",
                  trivial_equilibrium(cfg.params, cfg.tau), cfg.params, cfg.tau);
    if (rep.positive_equilibrium_exists) {
        print_profile("positive equilibrium (rescaled)",
                      positive_equilibrium(cfg.params, cfg.tau, Form::rescaled), cfg.params,
                      cfg.tau);
        print_profile("positive equilibrium (original)",
                      positive_equilibrium(cfg.params, cfg.tau, Form::original), cfg.params,
                      cfg.tau);
    } else {
        std::cout << "no positive equilibrium: existence margins "
                  << format_human(rep.margin_existence_upper) << ", "
                  << format_human(rep.margin_existence_lower) << "\n";
    }
    return 0;
}

int cmd_coeffs(const CommonArgs& args) {
    const RunConfig cfg = args.load();
    const ModelParams& p = cfg.params;
    const CharCoeffs c = char_coeffs(p);
    const AssumptionReport rep = check_assumptions(p);

    std::cout << "p1 = " << format_human(c.p1) << "\n"
              << "p0 = " << format_human(c.p0) << "\n"
              << "q1 = " << format_human(c.q1) << "\n"
              << "q0 = " << format_human(c.q0) << "\n";

    const double ae = p.alpha * p.eta;
    const double mre = p.m * p.r * p.eta;
    const double closed = p.sigma * (ae - 1.0) * (mre - (ae - 1.0)) / (p.m * p.alpha * p.eta * p.eta);
    std::cout << "p0 + q0 = " << format_human(c.p0 + c.q0) << " (closed form "
              << format_human(closed) << ")\n"
              << "existence margins: " << format_human(rep.margin_existence_upper) << ", "
              << format_human(rep.margin_existence_lower) << "\n"
              << "Hopf margin: " << format_human(rep.margin_hopf) << "\n";
    return 0;
}

int cmd_hopf(const CommonArgs& args) {
    const RunConfig cfg = args.load();
    const AssumptionReport rep = check_assumptions(cfg.params);
    if (!rep.hopf_feasible) {
        throw AssumptionError("NoPositiveTheta",
                              rep.positive_equilibrium_exists
                                  ? "the Hopf margin is not positive"
                                  : "no positive equilibrium");
    }
    const CharCoeffs c = char_coeffs(cfg.params);
    const auto branches = hopf_branches(c, cfg.hopf.k_max);
    for (const auto& br : branches) {
        std::cout << "omega0 = " << format_human(br.omega0) << "\n";
        for (std::size_t k = 0; k < br.tau_ks.size(); ++k) {
            std::cout << "tau_" << k << " = " << format_human(br.tau_ks[k]) << "\n";
        }
        std::cout << "arccos branch: " << (br.branch_upper ? "upper" : "lower") << "\n"
                  << "transversality = " << format_human(br.transversality_value) << "\n"
                  << "simple-root margin |g'(i omega0)| = "
                  << format_human(br.simple_root_margin) << "\n";
    }
    return 0;
}

int cmd_roots(const CommonArgs& args, const std::vector<double>& region_spec) {
    const RunConfig cfg = args.load();
    const CharCoeffs c = char_coeffs(cfg.params);

    SearchRegion region{};
    if (region_spec.empty()) {
        const double bound =
            std::abs(c.p1) + std::abs(c.q1) + std::sqrt(std::abs(c.p0) + std::abs(c.q0)) + 1.0;
        region = SearchRegion::make(-0.9 * cfg.params.nu, bound, bound, cfg.params.nu);
    } else if (region_spec.size() == 3) {
        region = SearchRegion::make(region_spec[0], region_spec[1], region_spec[2],
                                    cfg.params.nu);
    } else {
        throw UsageError("SchemaError", "--region needs exactly three numbers");
    }

    const RootSearch search = find_roots(c, cfg.tau, region);
    std::cout << "roots in [" << format_human(region.re_min) << ", "
              << format_human(region.re_max) << "] x [-" << format_human(region.im_max) << ", "
              << format_human(region.im_max) << "] at tau = " << format_human(cfg.tau) << ":\n";
    for (const auto& root : search.roots) {
        std::cout << "  " << format_human(root.value.real()) << " + "
                  << format_human(root.value.imag()) << "i  (|g| = "
                  << format_human(root.residual) << ")\n";
    }
    if (search.roots.empty()) std::cout << "  none\n";
    std::cout << "unstable count (Re > 0): " << count_unstable_roots(c, cfg.tau) << "\n";
    return 0;
}

InitialData required_initial(const RunConfig& cfg) {
    if (!cfg.sim.initial) {
        throw UsageError("SchemaError", "missing key 'initial' in 'sim' (required to simulate)");
    }
    return *cfg.sim.initial;
}

int cmd_simulate(const CommonArgs& args, const std::string& solver, const std::string& out,
                 const std::string& snapshots_out) {
    const RunConfig cfg = args.load();
    const InitialData init = required_initial(cfg);

    Trajectory traj;
    if (solver == "pde") {
        const AgeGrid grid = build_grid(cfg.params, cfg.tau, cfg.sim.form, cfg.sim.da);
        PdeRunOptions opts{cfg.sim.t_end, cfg.sim.sample_every,
                           cfg.output.snapshot_toggle || !snapshots_out.empty(),
                           cfg.sim.snapshot_every};
        traj = simulate_pde(cfg.params, cfg.tau, cfg.sim.form, grid, init, opts);
    } else if (solver == "dde") {
        const DdeSystem sys = reduce_to_dde(cfg.params, cfg.tau, cfg.sim.form);
        const DdeRunOptions opts{sys.delay() / cfg.sim.dt_divisor, cfg.sim.t_end,
                                 cfg.sim.sample_every};
        traj = simulate_dde(sys, dde_history_constant(sys, init), opts);
    } else {
        throw UsageError("SchemaError", "--solver must be pde or dde");
    }

    OutputTarget target(out);
    write_trajectory_csv(target.stream(), traj);
    if (!snapshots_out.empty()) {
        OutputTarget snap(snapshots_out);
        write_snapshots_csv(snap.stream(), traj);
    }
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& param, const std::string& values_csv,
              const std::string& solver, const std::string& out) {
    const RunConfig cfg = args.load();

    SweepSpec spec;
    spec.base = cfg.params;
    spec.tau = cfg.tau;
    spec.vary = param;
    spec.t_end = cfg.sim.t_end;
    spec.t_transient = cfg.sim.t_transient;
    spec.solver = solver == "dde" ? SweepSolver::dde : SweepSolver::pde;
    spec.initial = required_initial(cfg);
    spec.form = cfg.sim.form;
    spec.da = cfg.sim.da;
    spec.steps_per_delay = cfg.sim.dt_divisor;
    spec.sample_every = cfg.sim.sample_every;

    std::stringstream ss(values_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            spec.values.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw UsageError("SchemaError", "--values entry '" + tok + "' is not a number");
        }
    }
    if (spec.values.empty()) throw UsageError("SchemaError", "--values must be nonempty");

    const auto rows = run_sweep(spec);
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            std::cerr << "note: " << param << " = " << format_human(row.value) << ": "
                      << row.error << "\n";
        }
    }
    OutputTarget target(out);
    write_sweep_csv(target.stream(), param, rows);
    return 0;
}

int cmd_verify(const CommonArgs& args) {
    const RunConfig cfg = args.load();
    const auto checks = run_verify(cfg.params);
    bool all_pass = true;
    for (const auto& chk : checks) {
        std::cout << (chk.pass ? "PASS" : "FAIL") << "  " << chk.name
                  << "  (worst = " << format_human(chk.worst)
                  << ", tolerance = " << format_human(chk.tolerance) << ")\n";
        all_pass = all_pass && chk.pass;
    }
    if (!all_pass) {
        throw NumericError("QuadratureFailure", "identity suite reported failures");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Age-structured ratio-dependent predator-prey model: equilibria, Hopf analysis, "
                 "simulation and parameter sweeps"};
    app.require_subcommand(1);

    CommonArgs common;
    std::vector<double> region_spec;
    std::string solver = "pde";
    std::string out = "-";
    std::string snapshots_out;
    std::string sweep_param;
    std::string sweep_values;

    const auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "JSON configuration file")->required();
        sub->add_option("--tau", common.tau_override, "override the delay from the config");
    };

    auto* equilibria = app.add_subcommand("equilibria", "print the trivial and positive equilibria");
    add_common(equilibria);

    auto* coeffs = app.add_subcommand("coeffs", "print quasi-polynomial coefficients and margins");
    add_common(coeffs);

    auto* hopf = app.add_subcommand("hopf", "print omega0, the critical-delay ladder and margins");
    add_common(hopf);

    auto* roots = app.add_subcommand("roots", "locate characteristic roots and count unstable ones");
    add_common(roots);
    roots->add_option("--region", region_spec,
                      "search rectangle: re_min re_max im_max (zeta coordinates)")
        ->expected(3);

    auto* simulate = app.add_subcommand("simulate", "integrate the system and write trajectory CSV");
    add_common(simulate);
    simulate->add_option("--solver", solver, "pde or dde")->check(CLI::IsMember({"pde", "dde"}));
    simulate->add_option("--out", out, "trajectory CSV path, - for stdout");
    simulate->add_option("--snapshots", snapshots_out, "age-density snapshot CSV path");

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter and write metrics CSV");
    add_common(sweep);
    sweep->add_option("--param", sweep_param, "parameter to vary: K, alpha, m, eta, sigma")
        ->required();
    sweep->add_option("--values", sweep_values, "comma-separated list of values")->required();
    sweep->add_option("--solver", solver, "pde or dde")->check(CLI::IsMember({"pde", "dde"}));
    sweep->add_option("--out", out, "sweep CSV path, - for stdout");

    auto* verify = app.add_subcommand("verify", "run the internal identity suite");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: UsageError: " << e.what() << "\n";
        return 2;
    }

    try {
        if (equilibria->parsed()) return cmd_equilibria(common);
        if (coeffs->parsed()) return cmd_coeffs(common);
        if (hopf->parsed()) return cmd_hopf(common);
        if (roots->parsed()) return cmd_roots(common, region_spec);
        if (simulate->parsed()) return cmd_simulate(common, solver, out, snapshots_out);
        if (sweep->parsed()) return cmd_sweep(common, sweep_param, sweep_values, solver, out);
        if (verify->parsed()) return cmd_verify(common);
    } catch (const predprey::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: InternalError: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
