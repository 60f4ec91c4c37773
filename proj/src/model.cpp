#include "predprey/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace predprey {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw UsageError("NonPositiveParameter",
                         std::string(name) + " must be strictly positive, got " +
                             std::to_string(value));
    }
}

}  // namespace

ModelParams validate(const RawParams& raw) {
    require_positive(raw.lambda_birth, "lambda");
    require_positive(raw.mu, "mu");
    require_positive(raw.K, "K");
    require_positive(raw.alpha, "alpha");
    require_positive(raw.m, "m");
    require_positive(raw.sigma, "sigma");
    require_positive(raw.eta, "eta");

    const double r = raw.lambda_birth - raw.mu;
    if (!(r > 0.0)) {
        throw UsageError("InconsistentGrowthRate",
                         "lambda - mu = " + std::to_string(r) +
                             " but the intrinsic growth rate must be positive");
    }
    if (raw.r) {
        const double rel = std::abs(*raw.r - r) / std::max(std::abs(r), 1e-300);
        if (rel > 1e-12) {
            throw UsageError("InconsistentGrowthRate",
                             "supplied r = " + std::to_string(*raw.r) +
                                 " does not equal lambda - mu = " + std::to_string(r));
        }
    }

    return ModelParams{raw.lambda_birth, raw.mu,    r,       raw.K, raw.alpha,
                       raw.m,            raw.sigma, raw.eta, std::min(raw.sigma, raw.mu)};
}

double beta_star(double sigma, double tau) {
    if (!(sigma > 0.0)) throw UsageError("NonPositiveParameter", "sigma must be positive");
    if (tau < 0.0) throw UsageError("NonPositiveParameter", "tau must be nonnegative");
    return sigma * std::exp(sigma * tau);
}

AssumptionReport check_assumptions(const ModelParams& p) {
    const double ae = p.alpha * p.eta;
    const double mre = p.m * p.r * p.eta;

    AssumptionReport rep;
    rep.margin_existence_lower = ae - 1.0;
    rep.margin_existence_upper = mre - (ae - 1.0);
    rep.margin_hopf = (3.0 * ae + 1.0) * (ae - 1.0) - mre * (3.0 * ae - 1.0);
    rep.positive_equilibrium_exists =
        rep.margin_existence_upper > 0.0 && rep.margin_existence_lower > 0.0;
    rep.hopf_feasible = rep.positive_equilibrium_exists && rep.margin_hopf > 0.0;
    return rep;
}

EquilibriumProfile positive_equilibrium(const ModelParams& p, double tau, Form form) {
    const AssumptionReport rep = check_assumptions(p);
    if (!rep.positive_equilibrium_exists) {
        throw AssumptionError("NoPositiveEquilibrium",
                              "existence margins: m*r*eta - (alpha*eta - 1) = " +
                                  std::to_string(rep.margin_existence_upper) +
                                  ", alpha*eta - 1 = " +
                                  std::to_string(rep.margin_existence_lower));
    }
    if (form == Form::rescaled && !(tau > 0.0)) {
        throw UsageError("NonPositiveParameter", "tau must be positive for the rescaled form");
    }

    const double ae = p.alpha * p.eta;
    const double mre = p.m * p.r * p.eta;
    const double base = p.K * p.sigma * (ae - 1.0) * (mre - (ae - 1.0)) / (p.m * p.m * p.r * p.eta);
    const double V_bar = p.K * (mre - (ae - 1.0)) / mre;

    EquilibriumProfile prof;
    prof.form = form;
    prof.tau = tau;
    prof.branch = EquilibriumBranch::positive;
    prof.V_bar = V_bar;
    if (form == Form::rescaled) {
        prof.coef = base * tau;
        prof.rate = tau * p.sigma;
    } else {
        prof.coef = base;
        prof.rate = p.sigma;
    }
    return prof;
}

EquilibriumProfile trivial_equilibrium(const ModelParams& p, double tau) {
    if (!(tau > 0.0)) throw UsageError("NonPositiveParameter", "tau must be positive");
    EquilibriumProfile prof;
    prof.coef = tau * p.mu * p.K;
    prof.rate = tau * p.mu;
    prof.V_bar = p.K;
    prof.form = Form::rescaled;
    prof.tau = tau;
    prof.branch = EquilibriumBranch::trivial;
    return prof;
}

double equilibrium_residual(const ModelParams& p, double tau, const EquilibriumProfile& prof) {
    // relative residual of x = y, scaled by the largest term involved
    const auto rel = [](double lhs, double rhs) {
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
        return std::abs(lhs - rhs) / scale;
    };

    const double boundary_factor = (prof.form == Form::rescaled) ? tau : 1.0;
    const double threshold = (prof.form == Form::rescaled) ? 1.0 : tau;
    const double bstar = beta_star(p.sigma, tau);

    double U_star, V_bar, renewal_lhs, renewal_rhs;
    if (prof.branch == EquilibriumBranch::positive) {
        U_star = prof.total();
        V_bar = prof.V_bar;
        // fertility-weighted population of the exponential predator profile
        const double P_star = bstar * prof.coef * std::exp(-prof.rate * threshold) / prof.rate;
        renewal_lhs = prof.coef;
        renewal_rhs = boundary_factor * p.eta * p.alpha * V_bar * P_star /
                      (p.m * U_star + V_bar);
    } else {
        U_star = 0.0;
        V_bar = prof.total();
        // prey renewal: v(0) = tau * (Lambda V - (r/K) V^2 - predation)
        renewal_lhs = prof.coef;
        renewal_rhs = boundary_factor *
                      (p.lambda_birth * V_bar - (p.r / p.K) * V_bar * V_bar);
    }

    const double predation =
        (U_star > 0.0 || V_bar > 0.0)
            ? p.alpha * V_bar * U_star / (p.m * U_star + V_bar)
            : 0.0;
    const double balance = p.r * V_bar - (p.r / p.K) * V_bar * V_bar - predation;
    const double balance_scale =
        std::max({p.r * V_bar, (p.r / p.K) * V_bar * V_bar, std::abs(predation), 1e-30});

    return std::max(rel(renewal_lhs, renewal_rhs), std::abs(balance) / balance_scale);
}

StatePoint rescale_state(const StatePoint& s, double tau) {
    if (!(tau > 0.0)) throw UsageError("NonPositiveParameter", "tau must be positive");
    return StatePoint{s.t / tau, s.a / tau, tau * s.u, s.V};
}

StatePoint unscale_state(const StatePoint& s, double tau) {
    if (!(tau > 0.0)) throw UsageError("NonPositiveParameter", "tau must be positive");
    return StatePoint{s.t * tau, s.a * tau, s.u / tau, s.V};
}

}  // namespace predprey
