#include "itm/solver.hpp"

#include <cmath>
#include <sstream>

namespace itm {
namespace {

constexpr double kNewtonSlopeFloor = 1e-14;

struct Probe {
    GammaEvaluation eval;
    Trajectory star;  // three-component starred trajectory
};

IvpSpec starred_ivp(double eta_inf, StateVector ic, OdeSystem system) {
    return {0.0, eta_inf, std::move(ic), std::move(system)};
}

Probe probe_plain(double h_star, const ItmConfig& config) {
    const IvpSpec spec = starred_ivp(config.eta_inf_star, sakiadis_star_ic({h_star, config.sign}), boundary_layer_system());
    Trajectory star = integrate_adaptive(spec, config.step_control);
    GammaEvaluation ev = evaluate_transformation(h_star, star.back()[1]);
    return {ev, std::move(star)};
}

Probe probe_augmented(double h_star, const ItmConfig& config) {
    const IvpSpec spec = starred_ivp(config.eta_inf_star, augmented_ic(h_star), augmented_system());
    const Trajectory full = integrate_adaptive(spec, config.step_control);
    const StateVector& far = full.back();
    GammaEvaluation ev = evaluate_transformation(h_star, far[1], far[4]);
    return {ev, leading_components(full, 3)};
}

ItmIterate make_row(int j, const GammaEvaluation& ev, SecondDerivativeSign sign) {
    const double l = ev.lambda;
    return {j, ev.h_star, l, ev.gamma, value(sign) / (l * l * l)};
}

// Proposed h* <= 0 falls back to half the current positive iterate.
double keep_positive(double proposed, double current) {
    return (proposed > 0.0 && std::isfinite(proposed)) ? proposed : 0.5 * current;
}

}  // namespace

void ItmConfig::validate() const {
    if (!(h0 > 0.0) || !std::isfinite(h0)) throw InvalidArgument("h0 must be positive");
    if (!(eta_inf_star > 0.0)) throw InvalidArgument("truncated boundary must be positive");
    if (!(gamma_tol > 0.0)) throw InvalidArgument("gamma tolerance must be positive");
    if (max_iterations < 1) throw InvalidArgument("max_iterations must be positive");
    if (root_finder == RootFinder::secant) {
        if (!h1) throw InvalidArgument("secant needs a second seed h1");
        if (!(*h1 > 0.0) || !std::isfinite(*h1)) throw InvalidArgument("h1 must be positive");
        if (*h1 == h0) throw InvalidArgument("secant seeds must differ");
        if (max_iterations < 2) throw InvalidArgument("secant needs at least two evaluations");
    } else if (sign != SecondDerivativeSign::minus) {
        throw InvalidArgument("Newton mode requires the negative starred curvature");
    }
    step_control.validate(eta_inf_star);
}

GammaEvaluation evaluate_gamma_at(double h_star, const ItmConfig& config) {
    return probe_plain(h_star, config).eval;
}

GammaEvaluation evaluate_gamma_with_derivative(double h_star, const ItmConfig& config) {
    if (config.sign != SecondDerivativeSign::minus)
        throw InvalidArgument("the sensitivity system is defined for negative starred curvature only");
    return probe_augmented(h_star, config).eval;
}

Trajectory starred_trajectory(double h_star, const ItmConfig& config) {
    return probe_plain(h_star, config).star;
}

ItmResult solve_sakiadis(const ItmConfig& config) {
    config.validate();
    const bool newton = config.root_finder == RootFinder::newton;

    ItmResult result;
    Probe last;
    auto record = [&](double h) {
        last = newton ? probe_augmented(h, config) : probe_plain(h, config);
        result.iterates.push_back(make_row(static_cast<int>(result.iterates.size()), last.eval, config.sign));
    };
    auto finish = [&](bool converged) {
        const ItmIterate& row = result.iterates.back();
        result.converged = converged;
        result.final_h_star = row.h_star;
        result.final_lambda = row.lambda;
        result.final_wall_shear = row.wall_shear;
        if (converged) result.rescaled_solution = rescale_trajectory(ExtendedGroup(row.lambda), last.star);
        return result;
    };
    auto budget_left = [&] { return static_cast<int>(result.iterates.size()) < config.max_iterations; };

    if (newton) {
        record(config.h0);
        for (;;) {
            if (std::abs(last.eval.gamma) <= config.gamma_tol) return finish(true);
            if (!budget_left()) return finish(false);
            const double slope = *last.eval.dgamma_dh;
            if (!(std::abs(slope) >= kNewtonSlopeFloor))
                throw RootFinderBreakdown("Newton breakdown: dGamma/dh* vanished", result.iterates);
            record(keep_positive(last.eval.h_star - last.eval.gamma / slope, last.eval.h_star));
        }
    }

    record(config.h0);
    record(*config.h1);
    for (;;) {
        if (std::abs(last.eval.gamma) <= config.gamma_tol) return finish(true);
        if (!budget_left()) return finish(false);
        const ItmIterate& cur = result.iterates[result.iterates.size() - 1];
        const ItmIterate& prev = result.iterates[result.iterates.size() - 2];
        if (cur.gamma == prev.gamma)
            throw RootFinderBreakdown("secant breakdown: equal Gamma at successive iterates", result.iterates);
        const double next = cur.h_star - cur.gamma * (cur.h_star - prev.h_star) / (cur.gamma - prev.gamma);
        record(keep_positive(next, cur.h_star));
    }
}

TopferResult solve_blasius_topfer(std::span<const double> eta_checks, double agreement_tol,
                                  const StepControl& step_control) {
    if (eta_checks.size() < 2) throw InvalidArgument("Töpfer's procedure needs at least two truncated boundaries");
    if (!(eta_checks.front() > 0.0)) throw InvalidArgument("truncated boundaries must be positive");
    for (std::size_t i = 1; i < eta_checks.size(); ++i)
        if (!(eta_checks[i] > eta_checks[i - 1])) throw InvalidArgument("truncated boundaries must increase strictly");
    if (!(agreement_tol >= 0.0)) throw InvalidArgument("agreement tolerance must be non-negative");

    const IvpSpec spec{0.0, eta_checks.back(), blasius_star_ic(), boundary_layer_system()};
    const Trajectory star = integrate_adaptive(spec, step_control);

    TopferResult result;
    for (std::size_t j = 0; j < eta_checks.size(); ++j) {
        const double eta = eta_checks[j];
        const TopferReduction r = topfer_reduce(state_at(star, eta)[1]);
        result.lambda_checks.push_back({eta, r.lambda, r.wall_shear});
        if (j == 0) continue;
        if (std::abs(r.lambda - result.lambda_checks[j - 1].lambda) <= agreement_tol) {
            result.accepted_eta_star = eta;
            result.accepted_lambda = r.lambda;
            result.wall_shear = r.wall_shear;
            result.rescaled_solution = rescale_trajectory(BlasiusGroup(r.lambda), truncate(star, eta));
            return result;
        }
    }
    std::ostringstream os;
    os << "no two subsequent lambda values agree within " << agreement_tol;
    throw TopferNonConvergence(os.str(), result.lambda_checks);
}

}  // namespace itm
