#pragma once

// Transformation-method drivers: the iterative method (secant or Newton on
// the transformation function) for the Sakiadis problem and Töpfer's
// non-iterative rescaling for the Blasius problem.

#include <optional>
#include <span>
#include <vector>

#include "itm/errors.hpp"
#include "itm/models.hpp"
#include "itm/ode.hpp"
#include "itm/transform.hpp"

namespace itm {

enum class RootFinder { secant, newton };

struct ItmConfig {
    RootFinder root_finder = RootFinder::secant;
    double h0 = 2.5;
    std::optional<double> h1 = 3.5;  ///< second secant seed; ignored by Newton
    SecondDerivativeSign sign = SecondDerivativeSign::minus;
    double eta_inf_star = 10.0;
    double gamma_tol = 1e-9;
    int max_iterations = 50;  ///< transformation-function evaluations
    StepControl step_control;

    /// Throws InvalidArgument on bad seeds, tolerances, or Newton with sign +1.
    void validate() const;
};

/// One row of the iteration table.
struct ItmIterate {
    int j = 0;
    double h_star = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
    double wall_shear = 0.0;  ///< lambda^-3 * sign
};

struct ItmResult {
    std::vector<ItmIterate> iterates;
    bool converged = false;
    double final_h_star = 0.0;
    double final_lambda = 0.0;
    double final_wall_shear = 0.0;
    Trajectory rescaled_solution;  ///< empty unless converged
};

struct TopferCheck {
    double eta_star = 0.0;
    double lambda = 0.0;
    double wall_shear = 0.0;
};

struct TopferResult {
    std::vector<TopferCheck> lambda_checks;
    double accepted_eta_star = 0.0;
    double accepted_lambda = 0.0;
    double wall_shear = 0.0;
    Trajectory rescaled_solution;
};

/// Secant denominator vanished or Newton derivative too small. Keeps the
/// iterates computed so far.
class RootFinderBreakdown : public Error {
public:
    RootFinderBreakdown(const std::string& what, std::vector<ItmIterate> iterates)
        : Error(what), iterates_(std::move(iterates)) {}
    const std::vector<ItmIterate>& iterates() const noexcept { return iterates_; }

private:
    std::vector<ItmIterate> iterates_;
};

/// No two subsequent Töpfer checks agreed.
class TopferNonConvergence : public Error {
public:
    TopferNonConvergence(const std::string& what, std::vector<TopferCheck> checks)
        : Error(what), checks_(std::move(checks)) {}
    const std::vector<TopferCheck>& checks() const noexcept { return checks_; }

private:
    std::vector<TopferCheck> checks_;
};

/// Integrates the three-component starred IVP at h* and evaluates Gamma.
GammaEvaluation evaluate_gamma_at(double h_star, const ItmConfig& config);

/// Same, through the six-component sensitivity system; fills dgamma_dh.
GammaEvaluation evaluate_gamma_with_derivative(double h_star, const ItmConfig& config);

/// The starred trajectory behind evaluate_gamma_at.
Trajectory starred_trajectory(double h_star, const ItmConfig& config);

ItmResult solve_sakiadis(const ItmConfig& config);

inline constexpr double kDefaultAgreementTol = 1e-5;

/// Integrates the Blasius starred IVP once to the last check and accepts the
/// first pair of subsequent checks whose lambda values agree within
/// agreement_tol.
TopferResult solve_blasius_topfer(std::span<const double> eta_checks, double agreement_tol,
                                  const StepControl& step_control = {});

}  // namespace itm
