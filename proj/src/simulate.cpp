#include "predprey/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace predprey {

namespace {

double fertility_threshold(double tau, Form form) {
    return form == Form::rescaled ? 1.0 : tau;
}

double boundary_factor(double tau, Form form) {
    return form == Form::rescaled ? tau : 1.0;
}

// trapezoid over all nodes
double trapz(const std::vector<double>& u, double da) {
    double sum = 0.0;
    for (double v : u) sum += v;
    sum -= 0.5 * (u.front() + u.back());
    return sum * da;
}

// trapezoid over nodes [first, end)
double trapz_from(const std::vector<double>& u, std::size_t first, double da) {
    double sum = 0.0;
    for (std::size_t j = first; j < u.size(); ++j) sum += u[j];
    sum -= 0.5 * (u[first] + u.back());
    return sum * da;
}

double predation(const ModelParams& p, double V, double U) {
    const double den = p.m * U + V;
    return den > 0.0 ? p.alpha * V * U / den : 0.0;
}

// Population integrals of the discrete density. Initial data that violates
// the renewal condition carries a jump along the characteristic a = t; with
// dt = da it sits exactly on node round(t/da), where the stored value is the
// right-side limit. The split-trapezoid correction reconstructs the left
// limit by flowing the neighbor one cell forward; it vanishes identically on
// exponential equilibrium profiles.
struct DensityIntegrals {
    double U;  // total population
    double P;  // fertility-weighted population, beta* included
};

DensityIntegrals integrate_density(const std::vector<double>& u, double t, const AgeGrid& grid,
                                   double bstar) {
    DensityIntegrals out;
    out.U = trapz(u, grid.da);
    out.P = bstar * trapz_from(u, grid.threshold_cell, grid.da);

    const auto jump = static_cast<std::size_t>(std::llround(t / grid.da));
    if (jump >= 1 && jump <= grid.n_cells) {
        const double left = u[jump - 1] * std::exp(-grid.decay_rate * grid.da);
        const double corr = 0.5 * grid.da * (left - u[jump]);
        out.U += corr;
        if (jump > grid.threshold_cell) out.P += bstar * corr;
    }
    return out;
}

double prey_rhs(const ModelParams& p, double V, double U, double factor) {
    return factor * (p.r * V * (1.0 - V / p.K) - predation(p, V, U));
}

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw NumericError("BlowUp", std::string(what) + " became non-finite");
    }
}

}  // namespace

AgeGrid build_grid(const ModelParams& p, double tau, Form form, double da) {
    if (!(tau > 0.0)) throw UsageError("NonPositiveParameter", "tau must be positive");
    if (!(da > 0.0)) throw UsageError("NonPositiveParameter", "da must be positive");

    const double threshold = fertility_threshold(tau, form);
    if (da > threshold / 10.0) {
        throw UsageError("GridTooCoarse", "da = " + std::to_string(da) +
                                              " exceeds a tenth of the delay " +
                                              std::to_string(threshold));
    }

    // Put the fertility threshold exactly on a node.
    const auto threshold_cell = static_cast<std::size_t>(std::llround(threshold / da));
    const double da_eff = threshold / static_cast<double>(threshold_cell);

    const double rho = form == Form::rescaled ? tau * p.sigma : p.sigma;
    const double a_target = std::ceil(30.0 / rho);  // exp(-30) < 1e-12
    auto n_cells = static_cast<std::size_t>(std::ceil(a_target / da_eff - 1e-12));
    n_cells = std::max(n_cells, threshold_cell + 10);

    return AgeGrid{static_cast<double>(n_cells) * da_eff, da_eff, n_cells, threshold_cell, rho};
}

namespace {

void step_pde_inplace(PdeState& s, const ModelParams& p, double tau, Form form,
                      const AgeGrid& grid) {
    const double da = grid.da;
    const double factor = boundary_factor(tau, form);
    const double bstar = beta_star(p.sigma, tau);
    std::vector<double>& u = s.u;

    const double U_start = integrate_density(u, s.t, grid, bstar).U;

    // exact transport along characteristics; the oldest node falls off
    const double decay = std::exp(-grid.decay_rate * da);
    for (std::size_t j = u.size() - 1; j >= 1; --j) u[j] = u[j - 1] * decay;

    // prey update: midpoint rule, predator integral frozen at the step start
    const double k1 = prey_rhs(p, s.V, U_start, factor);
    const double v_mid = s.V + 0.5 * da * k1;
    const double k2 = prey_rhs(p, v_mid, U_start, factor);
    s.V += da * k2;
    s.t += da;

    // renewal boundary at the new time; node 0 enters the total with
    // trapezoid weight da/2, so solve u0 (m (U' + da/2 u0) + V) = R P
    // for u0 in closed form
    const DensityIntegrals shifted = integrate_density(u, s.t, grid, bstar);
    const double P = shifted.P;
    const double U_rest = shifted.U - 0.5 * da * u[0];

    const double rhs = factor * p.eta * p.alpha * s.V * P;
    const double b_lin = p.m * U_rest + s.V;
    double u0 = 0.0;
    if (rhs > 0.0) {
        const double a_quad = 0.5 * p.m * da;
        u0 = 2.0 * rhs / (b_lin + std::sqrt(b_lin * b_lin + 4.0 * a_quad * rhs));
    }
    u[0] = u0;

    check_finite(u0, "boundary density");
    check_finite(s.V, "prey density");
    if (u0 < -1e-12 || s.V < -1e-12) {
        throw NumericError("NegativeDensity", "scheme produced a negative density at t = " +
                                                  std::to_string(s.t));
    }
}

}  // namespace

PdeState step_pde(const PdeState& s, const ModelParams& p, double tau, Form form,
                  const AgeGrid& grid) {
    if (s.u.size() != grid.n_cells + 1) {
        throw UsageError("GridTooCoarse", "state has " + std::to_string(s.u.size()) +
                                              " nodes but the grid expects " +
                                              std::to_string(grid.n_cells + 1));
    }
    PdeState next = s;
    step_pde_inplace(next, p, tau, form, grid);
    return next;
}

Trajectory simulate_pde(const ModelParams& p, double tau, Form form, const AgeGrid& grid,
                        const std::function<double(double)>& u0, double V0,
                        const PdeRunOptions& opts) {
    if (!(opts.t_end > 0.0)) throw UsageError("NonPositiveParameter", "t_end must be positive");

    PdeState state;
    state.t = 0.0;
    state.V = V0;
    state.u.resize(grid.n_cells + 1);
    for (std::size_t j = 0; j < state.u.size(); ++j) {
        state.u[j] = u0(static_cast<double>(j) * grid.da);
    }

    const auto n_steps = static_cast<std::size_t>(std::ceil(opts.t_end / grid.da - 1e-9));
    const auto stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(opts.sample_every / grid.da)));
    const auto snap_stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(opts.snapshot_every / grid.da)));

    Trajectory traj;
    traj.solver = "pde";
    traj.form = form;
    traj.tau = tau;
    traj.dt = grid.da;
    traj.sample_dt = static_cast<double>(stride) * grid.da;
    traj.params = p;
    traj.samples.reserve(n_steps / stride + 2);
    if (opts.keep_snapshots) {
        traj.snapshot_ages.resize(grid.n_cells + 1);
        for (std::size_t j = 0; j <= grid.n_cells; ++j) {
            traj.snapshot_ages[j] = static_cast<double>(j) * grid.da;
        }
    }

    const double bstar = beta_star(p.sigma, tau);
    for (std::size_t step = 0; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * grid.da;
        if (step % stride == 0) {
            traj.samples.push_back({t, integrate_density(state.u, t, grid, bstar).U, state.V});
        }
        if (opts.keep_snapshots && step % snap_stride == 0) {
            traj.snapshots.push_back({t, state.u});
        }
        if (step < n_steps) step_pde_inplace(state, p, tau, form, grid);
    }
    return traj;
}

Trajectory simulate_pde(const ModelParams& p, double tau, Form form, const AgeGrid& grid,
                        const InitialData& init, const PdeRunOptions& opts) {
    return simulate_pde(
        p, tau, form, grid,
        [&init](double a) { return init.u0_coef * std::exp(-init.u0_rate * a); }, init.V0,
        opts);
}

double DdeSystem::birth(double U, double P, double V) const {
    const double den = p.m * U + V;
    return den > 0.0 ? p.eta * p.alpha * V * P / den : 0.0;
}

void DdeSystem::rhs(double U, double P, double V, double birth_delayed, double& dU, double& dP,
                    double& dV) const {
    const double f = time_factor();
    const double b = birth(U, P, V);
    dU = f * (b - p.sigma * U);
    dP = f * (p.sigma * birth_delayed - p.sigma * P);
    dV = prey_rhs(p, V, U, f);
}

DdeSystem reduce_to_dde(const ModelParams& p, double tau, Form form) {
    if (!(tau > 0.0)) throw UsageError("NonPositiveParameter", "tau must be positive");
    return DdeSystem{p, tau, form};
}

namespace {

struct DdeInit {
    double U0;
    double P0;
};

DdeInit dde_initial_integrals(const DdeSystem& sys, const InitialData& init) {
    if (init.u0_coef == 0.0) return {0.0, 0.0};
    if (!(init.u0_rate > 0.0)) {
        throw UsageError("NonPositiveParameter",
                         "u0_rate must be positive for a normalizable age profile");
    }
    const double threshold = sys.form == Form::rescaled ? 1.0 : sys.tau;
    const double bstar = beta_star(sys.p.sigma, sys.tau);
    const double U0 = init.u0_coef / init.u0_rate;
    const double P0 = bstar * init.u0_coef * std::exp(-init.u0_rate * threshold) / init.u0_rate;
    return {U0, P0};
}

}  // namespace

DdeHistory dde_history_constant(const DdeSystem& sys, const InitialData& init) {
    const DdeInit d = dde_initial_integrals(sys, init);
    const double b0 = sys.birth(d.U0, d.P0, init.V0);
    return DdeHistory{d.U0, d.P0, init.V0, [b0](double) { return b0; }};
}

DdeHistory dde_history_from_density(const DdeSystem& sys, const InitialData& init) {
    const DdeInit d = dde_initial_integrals(sys, init);
    const double rho = sys.form == Form::rescaled ? sys.tau * sys.p.sigma : sys.p.sigma;
    const double scale = sys.time_factor();
    const double coef = init.u0_coef;
    const double rate = init.u0_rate;
    return DdeHistory{d.U0, d.P0, init.V0, [coef, rate, rho, scale](double s) {
                          // u0(-s) e^(-rho s) / scale, s <= 0
                          return coef * std::exp((rate - rho) * s) / scale;
                      }};
}

Trajectory simulate_dde(const DdeSystem& sys, const DdeHistory& history,
                        const DdeRunOptions& opts) {
    if (!(opts.t_end > 0.0)) throw UsageError("NonPositiveParameter", "t_end must be positive");
    const double delay = sys.delay();
    const double ratio = delay / opts.dt;
    const auto N = static_cast<long long>(std::llround(ratio));
    if (N < 100 || std::abs(ratio - static_cast<double>(N)) > 1e-6) {
        throw UsageError("StepNotDividingDelay",
                         "dt must equal delay/N with integer N >= 100; delay/dt = " +
                             std::to_string(ratio));
    }
    const double dt = delay / static_cast<double>(N);

    // Births at grid times for t >= 0; births[j] = b(j dt) from the evolved
    // state. For delayed times in the first interval the history function is
    // evaluated directly. Boundary-incompatible initial data makes b jump at
    // t = 0; the jump sits exactly on the step seam t = delay, so each side
    // only ever reads its own limit.
    std::vector<double> births;
    const auto n_steps = static_cast<std::size_t>(std::ceil(opts.t_end / dt - 1e-9));
    births.reserve(n_steps + 2);
    births.push_back(sys.birth(history.U0, history.P0, history.V0));

    const auto stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(opts.sample_every / dt)));

    Trajectory traj;
    traj.solver = "dde";
    traj.form = sys.form;
    traj.tau = sys.tau;
    traj.dt = dt;
    traj.sample_dt = static_cast<double>(stride) * dt;
    traj.params = sys.p;
    traj.samples.reserve(n_steps / stride + 2);

    double U = history.U0, P = history.P0, V = history.V0;
    for (std::size_t step = 0; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        if (step % stride == 0) traj.samples.push_back({t, U, V});
        if (step == n_steps) break;

        // delayed births for the RK4 stages: grid values at t - delay and
        // t + dt - delay, cubic interpolation at the half step
        double bd0, bdh, bd1;
        if (step < static_cast<std::size_t>(N)) {
            // the whole delayed window lies in the history (s <= 0)
            const double s0 = (static_cast<double>(step) - static_cast<double>(N)) * dt;
            bd0 = history.birth(s0);
            bdh = history.birth(s0 + 0.5 * dt);
            bd1 = history.birth(s0 + dt);
        } else {
            const std::size_t j = step - static_cast<std::size_t>(N);
            bd0 = births[j];
            bd1 = births[j + 1];
            bdh = (j >= 1) ? (-births[j - 1] + 9.0 * births[j] + 9.0 * births[j + 1] -
                              births[j + 2]) /
                                 16.0
                           : (5.0 * births[0] + 15.0 * births[1] - 5.0 * births[2] +
                              births[3]) /
                                 16.0;
        }

        double k1U, k1P, k1V, k2U, k2P, k2V, k3U, k3P, k3V, k4U, k4P, k4V;
        sys.rhs(U, P, V, bd0, k1U, k1P, k1V);
        sys.rhs(U + 0.5 * dt * k1U, P + 0.5 * dt * k1P, V + 0.5 * dt * k1V, bdh, k2U, k2P, k2V);
        sys.rhs(U + 0.5 * dt * k2U, P + 0.5 * dt * k2P, V + 0.5 * dt * k2V, bdh, k3U, k3P, k3V);
        sys.rhs(U + dt * k3U, P + dt * k3P, V + dt * k3V, bd1, k4U, k4P, k4V);

        U += dt / 6.0 * (k1U + 2.0 * k2U + 2.0 * k3U + k4U);
        P += dt / 6.0 * (k1P + 2.0 * k2P + 2.0 * k3P + k4P);
        V += dt / 6.0 * (k1V + 2.0 * k2V + 2.0 * k3V + k4V);
        check_finite(U, "U");
        check_finite(P, "P");
        check_finite(V, "V");
        births.push_back(sys.birth(U, P, V));
    }
    return traj;
}

OscillationMetrics metrics(const Trajectory& traj, double t_transient) {
    std::size_t first = 0;
    while (first < traj.samples.size() && traj.samples[first].t < t_transient) ++first;
    if (traj.samples.empty() || first + 2 > traj.samples.size()) {
        throw UsageError("InsufficientData",
                         "fewer than two samples after t_transient = " +
                             std::to_string(t_transient));
    }

    double minU = traj.samples[first].U, maxU = minU;
    double minV = traj.samples[first].V, maxV = minV;
    double sumU = 0.0, sumV = 0.0;
    const std::size_t n = traj.samples.size() - first;
    for (std::size_t i = first; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        minU = std::min(minU, s.U);
        maxU = std::max(maxU, s.U);
        minV = std::min(minV, s.V);
        maxV = std::max(maxV, s.V);
        sumU += s.U;
        sumV += s.V;
    }

    OscillationMetrics m;
    m.amplitude_U = maxU - minU;
    m.amplitude_V = maxV - minV;
    m.mean_U = sumU / static_cast<double>(n);
    m.mean_V = sumV / static_cast<double>(n);
    m.converged = m.amplitude_V < 1e-3 * m.mean_V;

    // strict local maxima of V, filtered at relative prominence 1e-3 * mean
    const double prominence_floor = 1e-3 * m.mean_V;
    std::vector<double> peak_times;
    for (std::size_t i = first + 1; i + 1 < traj.samples.size(); ++i) {
        const double v = traj.samples[i].V;
        if (!(v > traj.samples[i - 1].V && v > traj.samples[i + 1].V)) continue;

        // prominence: drop to the lowest valley before a higher sample,
        // on each side; the peak stands above the higher of the two bases
        double left_base = v;
        for (std::size_t j = i; j-- > first;) {
            left_base = std::min(left_base, traj.samples[j].V);
            if (traj.samples[j].V > v) break;
        }
        double right_base = v;
        for (std::size_t j = i + 1; j < traj.samples.size(); ++j) {
            right_base = std::min(right_base, traj.samples[j].V);
            if (traj.samples[j].V > v) break;
        }
        if (v - std::max(left_base, right_base) >= prominence_floor) {
            peak_times.push_back(traj.samples[i].t);
        }
    }
    if (peak_times.size() >= 3) {
        m.period = (peak_times.back() - peak_times.front()) /
                   static_cast<double>(peak_times.size() - 1);
    }
    return m;
}

double compare(const Trajectory& a, const Trajectory& b) {
    if (a.samples.size() != b.samples.size() || a.samples.empty()) {
        throw UsageError("MismatchedSampling",
                         "trajectories hold " + std::to_string(a.samples.size()) + " vs " +
                             std::to_string(b.samples.size()) + " samples");
    }
    const double cadence = std::max(a.sample_dt, b.sample_dt);
    if (std::abs(a.sample_dt - b.sample_dt) > 1e-9 * cadence) {
        throw UsageError("MismatchedSampling", "sampling cadences differ");
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        if (std::abs(a.samples[i].t - b.samples[i].t) > 1e-6 * cadence * (1.0 + a.samples[i].t)) {
            throw UsageError("MismatchedSampling", "sample times diverge at index " +
                                                       std::to_string(i));
        }
        const double du = std::abs(a.samples[i].U - b.samples[i].U) /
                          (1.0 + std::abs(a.samples[i].U));
        const double dv = std::abs(a.samples[i].V - b.samples[i].V) /
                          (1.0 + std::abs(a.samples[i].V));
        worst = std::max({worst, du, dv});
    }
    return worst;
}

}  // namespace predprey
