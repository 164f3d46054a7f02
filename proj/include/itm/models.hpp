#pragma once

// Starred IVPs for the Blasius and Sakiadis similarity equation
// f''' + f f'' / 2 = 0, and the six-equation system that carries the
// h*-sensitivities needed by Newton's method.

#include "itm/ode.hpp"

namespace itm {

/// Sign of the starred curvature f*''(0); only +1 or -1.
enum class SecondDerivativeSign : int { plus = 1, minus = -1 };

constexpr double value(SecondDerivativeSign s) noexcept { return static_cast<int>(s); }

/// Throws InvalidArgument unless v is +1 or -1.
SecondDerivativeSign sign_from_int(int v);

struct SakiadisStarIc {
    double h_star = 1.0;
    SecondDerivativeSign sign = SecondDerivativeSign::minus;
};

/// (f, f', f'') -> (f', f'', -f f'' / 2). Shared by both flows.
StateVector boundary_layer_rhs(const StateVector& state);

inline StateVector blasius_rhs(const StateVector& state) { return boundary_layer_rhs(state); }
inline StateVector sakiadis_rhs(const StateVector& state) { return boundary_layer_rhs(state); }

/// (0, 0, 1): unit starred curvature.
StateVector blasius_star_ic();

/// (0, sqrt(h*), sign). Throws InvalidArgument for h* <= 0.
StateVector sakiadis_star_ic(const SakiadisStarIc& ic);

/// u1..u3 as the plain system; u4..u6 are their h*-derivatives.
StateVector augmented_rhs(const StateVector& state);

/// (0, sqrt(h*), -1, 0, 1/(2 sqrt(h*)), 0). Negative curvature only.
StateVector augmented_ic(double h_star);

OdeSystem boundary_layer_system();
OdeSystem augmented_system();

}  // namespace itm
