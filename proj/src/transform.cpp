#include "itm/transform.hpp"

#include <cmath>
#include <sstream>

#include "itm/errors.hpp"

namespace itm {
namespace {

void require_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("group parameter must be positive and finite");
}

double radicand(double far_slope, double h_star) {
    if (!(h_star > 0.0)) throw InvalidArgument("h* must be positive");
    const double r = far_slope + std::sqrt(h_star);
    if (!(r > 0.0) || !std::isfinite(r)) {
        std::ostringstream os;
        os << "degenerate far field: u2* + sqrt(h*) = " << r << " at h* = " << h_star;
        throw DegenerateFarFieldError(os.str());
    }
    return r;
}

// Component c (0-based) of the state scales by `base^(c+1)`; eta scales by
// `eta_scale`. Slopes follow from the chain rule.
Trajectory power_rescale(const Trajectory& star, double base, double eta_scale) {
    if (star.dim() != 3) throw InvalidArgument("rescaling expects the three-component (f, f', f'') state");
    const double factor[3] = {base, base * base, base * base * base};
    Trajectory out;
    out.reserve(star.size());
    for (std::size_t i = 0; i < star.size(); ++i) {
        StateVector s(3), d(3);
        for (std::size_t c = 0; c < 3; ++c) {
            s[c] = factor[c] * star.state(i)[c];
            d[c] = factor[c] / eta_scale * star.slope(i)[c];
        }
        out.push_back(eta_scale * star.eta(i), std::move(s), std::move(d));
    }
    return out;
}

}  // namespace

ExtendedGroup::ExtendedGroup(double lambda) : lambda_(lambda) { require_lambda(lambda); }

BlasiusGroup::BlasiusGroup(double lambda) : lambda_(lambda) { require_lambda(lambda); }

double lambda_from_far_field(double far_slope, double h_star) {
    return std::sqrt(radicand(far_slope, h_star));
}

double gamma(double h_star, double far_slope) {
    const double lambda = lambda_from_far_field(far_slope, h_star);
    const double l2 = lambda * lambda;
    return h_star / (l2 * l2) - 1.0;
}

double gamma_derivative(double h_star, double far_slope, double far_slope_sensitivity) {
    const double r = radicand(far_slope, h_star);
    const double dr = far_slope_sensitivity + 0.5 / std::sqrt(h_star);
    return (1.0 - 2.0 * dr / r * h_star) / (r * r);
}

GammaEvaluation evaluate_transformation(double h_star, double far_slope, std::optional<double> far_slope_sensitivity) {
    GammaEvaluation ev;
    ev.h_star = h_star;
    ev.far_slope = far_slope;
    ev.lambda = lambda_from_far_field(far_slope, h_star);
    const double l2 = ev.lambda * ev.lambda;
    ev.gamma = h_star / (l2 * l2) - 1.0;
    if (far_slope_sensitivity) ev.dgamma_dh = gamma_derivative(h_star, far_slope, *far_slope_sensitivity);
    return ev;
}

double rescale_missing_ic(const ExtendedGroup& group, double star_curvature) {
    const double l = group.lambda();
    return star_curvature / (l * l * l);
}

Trajectory rescale_trajectory(const ExtendedGroup& group, const Trajectory& star) {
    return power_rescale(star, 1.0 / group.lambda(), group.lambda());
}

Trajectory rescale_trajectory(const BlasiusGroup& group, const Trajectory& star) {
    return power_rescale(star, group.lambda(), 1.0 / group.lambda());
}

TopferReduction topfer_reduce(double far_slope) {
    if (!(far_slope > 0.0) || !std::isfinite(far_slope))
        throw DegenerateFarFieldError("Blasius starred far slope must be positive");
    const double lambda = 1.0 / std::sqrt(far_slope);
    return {lambda, lambda * lambda * lambda};
}

}  // namespace itm
