#pragma once

// Classical fourth-order Runge-Kutta integration for small autonomous
// first-order systems: fixed step, adaptive step doubling, dense output.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace itm {

/// Fixed-dimension real state (f, f', f'' or the six-component augmented
/// state). Dimension never changes after construction.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::size_t dim, double fill = 0.0) : c_(dim, fill) {}
    StateVector(std::initializer_list<double> values) : c_(values) {}

    std::size_t dim() const noexcept { return c_.size(); }
    double& operator[](std::size_t i) { return c_[i]; }
    double operator[](std::size_t i) const { return c_[i]; }

    std::span<double> values() noexcept { return c_; }
    std::span<const double> values() const noexcept { return c_; }

    bool all_finite() const noexcept;

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    std::vector<double> c_;
};

/// dy/deta = rhs(eta, y). The systems used here are autonomous; eta is passed
/// along for generality.
struct OdeSystem {
    using Rhs = std::function<void(double eta, std::span<const double> y, std::span<double> dydt)>;

    std::size_t dim = 0;
    Rhs rhs;

    StateVector operator()(double eta, const StateVector& y) const;
};

struct IvpSpec {
    double start = 0.0;
    double end = 0.0;
    StateVector initial_state;
    OdeSystem system;

    void validate() const;
};

inline constexpr std::size_t kDefaultMaxSteps = 1'000'000;

/// Adaptive step policy. Per-component acceptance uses
/// tol_i = abs_tol + rel_tol * |y_i|.
struct StepControl {
    double abs_tol = 1e-6;
    double rel_tol = 1e-6;
    double initial_step = 0.01;
    double min_step = 1e-12;
    /// Unset means (end - start) / 4 for the interval being integrated.
    std::optional<double> max_step;
    double safety = 0.9;
    std::size_t max_steps = kDefaultMaxSteps;

    /// Throws InvalidArgument unless the invariants hold for this span.
    void validate(double span) const;
};

/// Accepted samples of one integration, with the RHS stored at each sample
/// for Hermite dense output.
class Trajectory {
public:
    Trajectory() = default;

    void push_back(double eta, StateVector state, StateVector slope);
    void reserve(std::size_t n);

    std::size_t size() const noexcept { return eta_.size(); }
    bool empty() const noexcept { return eta_.empty(); }
    std::size_t dim() const noexcept { return state_.empty() ? 0 : state_.front().dim(); }

    double eta(std::size_t i) const { return eta_[i]; }
    const StateVector& state(std::size_t i) const { return state_[i]; }
    const StateVector& slope(std::size_t i) const { return slope_[i]; }

    double start() const { return eta_.front(); }
    double end() const { return eta_.back(); }
    const StateVector& front() const { return state_.front(); }
    const StateVector& back() const { return state_.back(); }

    std::span<const double> etas() const noexcept { return eta_; }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    std::vector<double> eta_;
    std::vector<StateVector> state_;
    std::vector<StateVector> slope_;
};

/// One classical RK4 step over [eta, eta + h].
StateVector rk4_step(const OdeSystem& system, double eta, const StateVector& state, double h);

/// Uniform steps of size h; the last step is shortened so the final sample
/// lands exactly on spec.end.
Trajectory integrate_fixed(const IvpSpec& spec, double h, std::size_t max_steps = kDefaultMaxSteps);

/// Step doubling: one full step against two half steps. Accepted states are
/// the locally extrapolated two-half-step result.
Trajectory integrate_adaptive(const IvpSpec& spec, const StepControl& control = {});

/// Cubic Hermite interpolation between bracketing samples. Exact at samples.
StateVector state_at(const Trajectory& trajectory, double eta);

/// Leading `components` entries of every sample (e.g. the plain three-state
/// part of an augmented run).
Trajectory leading_components(const Trajectory& trajectory, std::size_t components);

/// Samples with eta < cut, plus an interpolated sample at cut.
Trajectory truncate(const Trajectory& trajectory, double cut);

}  // namespace itm
