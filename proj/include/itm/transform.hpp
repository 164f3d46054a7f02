#pragma once

// Scaling-group algebra. The extended group acting on the Sakiadis family is
//   f* = lambda f,  eta* = eta / lambda,  h* = lambda^4 h,
// and the Blasius group (alpha fixed to 1) is
//   f* = f / lambda,  eta* = lambda eta.

#include <optional>

#include "itm/ode.hpp"

namespace itm {

class ExtendedGroup {
public:
    explicit ExtendedGroup(double lambda);
    double lambda() const noexcept { return lambda_; }

private:
    double lambda_;
};

/// alpha only reparametrizes lambda, so it stays at 1.
class BlasiusGroup {
public:
    explicit BlasiusGroup(double lambda);
    double lambda() const noexcept { return lambda_; }
    static constexpr double alpha = 1.0;

private:
    double lambda_;
};

/// One evaluation of the transformation function at h*.
struct GammaEvaluation {
    double h_star = 0.0;
    double far_slope = 0.0;  ///< u2*(eta*_inf)
    double lambda = 0.0;
    double gamma = 0.0;
    std::optional<double> dgamma_dh;
};

/// [far_slope + sqrt(h*)]^(1/2). Throws DegenerateFarFieldError when the
/// radicand is not positive.
double lambda_from_far_field(double far_slope, double h_star);

/// h* lambda^-4 - 1, with lambda from lambda_from_far_field.
double gamma(double h_star, double far_slope);

/// dGamma/dh* from the far slope u2* and its sensitivity u5*.
double gamma_derivative(double h_star, double far_slope, double far_slope_sensitivity);

/// Builds the evaluation record; dgamma_dh is filled when a sensitivity is given.
GammaEvaluation evaluate_transformation(double h_star, double far_slope,
                                        std::optional<double> far_slope_sensitivity = std::nullopt);

/// f''(0) = lambda^-3 f*''(0).
double rescale_missing_ic(const ExtendedGroup& group, double star_curvature);

/// (eta*, f*, f*', f*'') -> (lambda eta*, f*/lambda, f*'/lambda^2, f*''/lambda^3).
Trajectory rescale_trajectory(const ExtendedGroup& group, const Trajectory& star);

/// (eta*, f*, f*', f*'') -> (eta*/lambda, lambda f*, lambda^2 f*', lambda^3 f*'').
Trajectory rescale_trajectory(const BlasiusGroup& group, const Trajectory& star);

struct TopferReduction {
    double lambda = 0.0;
    double wall_shear = 0.0;
};

/// Maps the starred Blasius far slope to the group parameter that restores
/// f'(inf) = 1: lambda = s^(-1/2), f''(0) = s^(-3/2).
TopferReduction topfer_reduce(double far_slope);

}  // namespace itm
