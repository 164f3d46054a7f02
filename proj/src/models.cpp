#include "itm/models.hpp"

#include <cmath>

#include "itm/errors.hpp"

namespace itm {
namespace {

void boundary_layer_kernel(double, std::span<const double> u, std::span<double> du) {
    du[0] = u[1];
    du[1] = u[2];
    du[2] = -0.5 * u[0] * u[2];
}

void augmented_kernel(double, std::span<const double> u, std::span<double> du) {
    du[0] = u[1];
    du[1] = u[2];
    du[2] = -0.5 * u[0] * u[2];
    du[3] = u[4];
    du[4] = u[5];
    du[5] = -0.5 * (u[3] * u[2] + u[0] * u[5]);
}

void require_dim(const StateVector& s, std::size_t n) {
    if (s.dim() != n) throw InvalidArgument("state has the wrong dimension for this model");
}

void require_positive_h(double h_star) {
    if (!(h_star > 0.0) || !std::isfinite(h_star)) throw InvalidArgument("h* must be positive and finite");
}

}  // namespace

SecondDerivativeSign sign_from_int(int v) {
    if (v == 1) return SecondDerivativeSign::plus;
    if (v == -1) return SecondDerivativeSign::minus;
    throw InvalidArgument("curvature sign must be +1 or -1");
}

StateVector boundary_layer_rhs(const StateVector& state) {
    require_dim(state, 3);
    StateVector out(3);
    boundary_layer_kernel(0.0, state.values(), out.values());
    return out;
}

StateVector blasius_star_ic() { return {0.0, 0.0, 1.0}; }

StateVector sakiadis_star_ic(const SakiadisStarIc& ic) {
    require_positive_h(ic.h_star);
    return {0.0, std::sqrt(ic.h_star), value(ic.sign)};
}

StateVector augmented_rhs(const StateVector& state) {
    require_dim(state, 6);
    StateVector out(6);
    augmented_kernel(0.0, state.values(), out.values());
    return out;
}

StateVector augmented_ic(double h_star) {
    require_positive_h(h_star);
    const double root = std::sqrt(h_star);
    return {0.0, root, -1.0, 0.0, 0.5 / root, 0.0};
}

OdeSystem boundary_layer_system() { return {3, &boundary_layer_kernel}; }

OdeSystem augmented_system() { return {6, &augmented_kernel}; }

}  // namespace itm
