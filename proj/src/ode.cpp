#include "itm/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "itm/errors.hpp"

namespace itm {
namespace {

constexpr double kGrowthCap = 5.0;
constexpr double kShrinkFloor = 0.1;

std::string at_eta(const char* what, double eta) {
    std::ostringstream os;
    os << what << " at eta = " << eta;
    return os.str();
}

void require_finite(const StateVector& v, double eta) {
    if (!v.all_finite()) throw BlowUpError(at_eta("non-finite state or derivative", eta), eta);
}

// y + a * k
StateVector axpy(const StateVector& y, double a, const StateVector& k) {
    StateVector out(y.dim());
    for (std::size_t i = 0; i < y.dim(); ++i) out[i] = y[i] + a * k[i];
    return out;
}

}  // namespace

bool StateVector::all_finite() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](double x) { return std::isfinite(x); });
}

StateVector OdeSystem::operator()(double eta, const StateVector& y) const {
    StateVector dydt(dim);
    rhs(eta, y.values(), dydt.values());
    return dydt;
}

void IvpSpec::validate() const {
    if (!(end > start)) throw InvalidArgument("IVP end must exceed start");
    if (!system.rhs || system.dim == 0) throw InvalidArgument("IVP has no right-hand side");
    if (initial_state.dim() != system.dim)
        throw InvalidArgument("initial state dimension does not match the system");
    if (!initial_state.all_finite()) throw InvalidArgument("initial state is not finite");
}

void StepControl::validate(double span) const {
    const double hmax = max_step.value_or(span / 4.0);
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidArgument("tolerances must be positive");
    if (!(safety > 0.0 && safety < 1.0)) throw InvalidArgument("safety factor must lie in (0, 1)");
    if (max_steps == 0) throw InvalidArgument("max_steps must be positive");
    if (!(min_step > 0.0) || !(hmax > 0.0)) throw InvalidArgument("step bounds must be positive");
    const double h0 = max_step ? initial_step : std::min(initial_step, hmax);
    if (!(min_step <= h0 && h0 <= hmax))
        throw InvalidArgument("step bounds must satisfy min_step <= initial_step <= max_step");
}

void Trajectory::push_back(double eta, StateVector state, StateVector slope) {
    eta_.push_back(eta);
    state_.push_back(std::move(state));
    slope_.push_back(std::move(slope));
}

void Trajectory::reserve(std::size_t n) {
    eta_.reserve(n);
    state_.reserve(n);
    slope_.reserve(n);
}

StateVector rk4_step(const OdeSystem& system, double eta, const StateVector& state, double h) {
    if (!(h > 0.0)) throw InvalidArgument("RK4 step size must be positive");
    require_finite(state, eta);

    const StateVector k1 = system(eta, state);
    require_finite(k1, eta);
    const StateVector k2 = system(eta + 0.5 * h, axpy(state, 0.5 * h, k1));
    require_finite(k2, eta);
    const StateVector k3 = system(eta + 0.5 * h, axpy(state, 0.5 * h, k2));
    require_finite(k3, eta);
    const StateVector k4 = system(eta + h, axpy(state, h, k3));
    require_finite(k4, eta);

    StateVector next(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i)
        next[i] = state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    require_finite(next, eta + h);
    return next;
}

Trajectory integrate_fixed(const IvpSpec& spec, double h, std::size_t max_steps) {
    spec.validate();
    if (!(h > 0.0)) throw InvalidArgument("fixed step must be positive");

    const double span = spec.end - spec.start;
    const double ratio = span / h;
    // A ratio within rounding of an integer means no partial step.
    const double nearest = std::round(ratio);
    const bool whole = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio);
    const double full = whole ? nearest : std::floor(ratio);
    const double total = whole ? full : full + 1.0;
    if (total > static_cast<double>(max_steps))
        throw StepLimitError("fixed-step integration exceeds the step budget", spec.start);
    const auto n_full = static_cast<std::size_t>(full);

    Trajectory out;
    out.reserve(static_cast<std::size_t>(total) + 1);
    StateVector y = spec.initial_state;
    double eta = spec.start;
    out.push_back(eta, y, spec.system(eta, y));

    for (std::size_t k = 1; k <= n_full; ++k) {
        y = rk4_step(spec.system, eta, y, h);
        eta = (whole && k == n_full) ? spec.end : spec.start + static_cast<double>(k) * h;
        out.push_back(eta, y, spec.system(eta, y));
    }
    if (!whole) {
        const double last = spec.end - eta;
        if (last > 0.0) {
            y = rk4_step(spec.system, eta, y, last);
            eta = spec.end;
            out.push_back(eta, y, spec.system(eta, y));
        }
    }
    return out;
}

Trajectory integrate_adaptive(const IvpSpec& spec, const StepControl& control) {
    spec.validate();
    const double span = spec.end - spec.start;
    control.validate(span);

    const double hmax = control.max_step.value_or(span / 4.0);
    const double hmin = control.min_step;
    const double end_slack = 1e-10 * span;

    Trajectory out;
    StateVector y = spec.initial_state;
    double eta = spec.start;
    double h = std::min(control.initial_step, hmax);
    out.push_back(eta, y, spec.system(eta, y));

    std::size_t attempts = 0;
    while (eta < spec.end) {
        if (++attempts > control.max_steps)
            throw StepLimitError(at_eta("adaptive integration exceeded max_steps", eta), eta);

        bool last = false;
        if (spec.end - (eta + h) <= end_slack) {
            h = spec.end - eta;
            last = true;
        }

        const StateVector full = rk4_step(spec.system, eta, y, h);
        const StateVector mid = rk4_step(spec.system, eta, y, 0.5 * h);
        const StateVector half = rk4_step(spec.system, eta + 0.5 * h, mid, 0.5 * h);

        // Local error of the two-half-step result is (half - full) / 15.
        double err = 0.0;
        for (std::size_t i = 0; i < y.dim(); ++i) {
            const double scale = control.abs_tol + control.rel_tol * std::max(std::abs(y[i]), std::abs(half[i]));
            err = std::max(err, std::abs(half[i] - full[i]) / 15.0 / scale);
        }
        if (!std::isfinite(err)) throw BlowUpError(at_eta("error estimate is not finite", eta), eta);

        if (err <= 1.0) {
            StateVector accepted(y.dim());
            for (std::size_t i = 0; i < y.dim(); ++i) accepted[i] = half[i] + (half[i] - full[i]) / 15.0;
            require_finite(accepted, eta + h);
            eta = last ? spec.end : eta + h;
            y = std::move(accepted);
            out.push_back(eta, y, spec.system(eta, y));

            const double grow = err == 0.0 ? kGrowthCap
                                           : std::clamp(control.safety * std::pow(err, -0.2), kShrinkFloor, kGrowthCap);
            h = std::clamp(h * grow, hmin, hmax);
        } else {
            const double shrink = std::max(kShrinkFloor, control.safety * std::pow(err, -0.2));
            h *= shrink;
            if (h < hmin) throw StepUnderflowError(at_eta("required step fell below min_step", eta), eta);
        }
    }
    return out;
}

StateVector state_at(const Trajectory& trajectory, double eta) {
    if (trajectory.empty()) throw InvalidArgument("empty trajectory");
    if (!(eta >= trajectory.start() && eta <= trajectory.end()))
        throw InvalidArgument(at_eta("query outside trajectory span", eta));

    const auto etas = trajectory.etas();
    const auto it = std::lower_bound(etas.begin(), etas.end(), eta);
    const auto k = static_cast<std::size_t>(it - etas.begin());
    if (etas[k] == eta) return trajectory.state(k);

    const std::size_t i = k - 1;
    const double x0 = etas[i];
    const double dx = etas[k] - x0;
    const double t = (eta - x0) / dx;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;

    const StateVector& y0 = trajectory.state(i);
    const StateVector& y1 = trajectory.state(k);
    const StateVector& m0 = trajectory.slope(i);
    const StateVector& m1 = trajectory.slope(k);
    StateVector out(y0.dim());
    for (std::size_t c = 0; c < y0.dim(); ++c)
        out[c] = h00 * y0[c] + h10 * dx * m0[c] + h01 * y1[c] + h11 * dx * m1[c];
    return out;
}

Trajectory leading_components(const Trajectory& trajectory, std::size_t components) {
    if (components > trajectory.dim()) throw InvalidArgument("cannot take more components than the state has");
    Trajectory out;
    out.reserve(trajectory.size());
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        StateVector s(components), d(components);
        for (std::size_t c = 0; c < components; ++c) {
            s[c] = trajectory.state(i)[c];
            d[c] = trajectory.slope(i)[c];
        }
        out.push_back(trajectory.eta(i), std::move(s), std::move(d));
    }
    return out;
}

Trajectory truncate(const Trajectory& trajectory, double cut) {
    if (trajectory.empty() || !(cut > trajectory.start()) || cut > trajectory.end())
        throw InvalidArgument(at_eta("truncation point outside trajectory span", cut));
    Trajectory out;
    std::size_t i = 0;
    for (; i < trajectory.size() && trajectory.eta(i) < cut; ++i)
        out.push_back(trajectory.eta(i), trajectory.state(i), trajectory.slope(i));
    if (i < trajectory.size() && trajectory.eta(i) == cut) {
        out.push_back(cut, trajectory.state(i), trajectory.slope(i));
        return out;
    }
    // Slope at an interpolated point: differentiate the Hermite cubic.
    const std::size_t lo = i - 1;
    const double dx = trajectory.eta(i) - trajectory.eta(lo);
    const double t = (cut - trajectory.eta(lo)) / dx;
    const StateVector& y0 = trajectory.state(lo);
    const StateVector& y1 = trajectory.state(i);
    const StateVector& m0 = trajectory.slope(lo);
    const StateVector& m1 = trajectory.slope(i);
    StateVector d(y0.dim());
    for (std::size_t c = 0; c < y0.dim(); ++c) {
        const double dh00 = (6.0 * t * t - 6.0 * t) / dx;
        const double dh10 = 3.0 * t * t - 4.0 * t + 1.0;
        const double dh01 = (-6.0 * t * t + 6.0 * t) / dx;
        const double dh11 = 3.0 * t * t - 2.0 * t;
        d[c] = dh00 * y0[c] + dh10 * m0[c] + dh01 * y1[c] + dh11 * m1[c];
    }
    out.push_back(cut, state_at(trajectory, cut), std::move(d));
    return out;
}

}  // namespace itm
