#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "itm/errors.hpp"
#include "itm/models.hpp"
#include "itm/ode.hpp"

using namespace itm;

namespace {

OdeSystem constant_system() {
    return {1, [](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; }};
}

OdeSystem growth_system() {
    return {1, [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0]; }};
}

OdeSystem oscillator_system() {
    return {2, [](double, std::span<const double> y, std::span<double> d) {
                d[0] = y[1];
                d[1] = -y[0];
            }};
}

OdeSystem linear_ramp_system() {
    return {1, [](double, std::span<const double>, std::span<double> d) { d[0] = 2.0; }};
}

double fixed_error_growth(double h) {
    const Trajectory t = integrate_fixed({0.0, 1.0, {1.0}, growth_system()}, h);
    return std::abs(t.back()[0] - std::numbers::e);
}

}  // namespace

TEST_CASE("rk4_step on zero and exponential right-hand sides") {
    SUBCASE("zero derivative keeps the state exactly") {
        const StateVector y = rk4_step(constant_system(), 0.0, {7.0}, 0.1);
        CHECK(y[0] == 7.0);
    }
    SUBCASE("y' = y matches the degree-four Taylor polynomial") {
        const double h = 0.1;
        const StateVector y = rk4_step(growth_system(), 0.0, {1.0}, h);
        const double taylor = 1.0 + h + h * h / 2.0 + h * h * h / 6.0 + h * h * h * h / 24.0;
        CHECK(y[0] == doctest::Approx(taylor).epsilon(1e-15));
        CHECK(std::abs(y[0] - std::exp(h)) < 1e-7);
    }
    SUBCASE("non-finite right-hand side is a blow-up carrying eta") {
        const OdeSystem bad{1, [](double, std::span<const double>, std::span<double> d) { d[0] = NAN; }};
        try {
            rk4_step(bad, 1.5, {0.0}, 0.1);
            FAIL("expected BlowUpError");
        } catch (const BlowUpError& e) {
            CHECK(e.eta() == 1.5);
        }
    }
    SUBCASE("step must be positive") {
        CHECK_THROWS_AS(rk4_step(growth_system(), 0.0, {1.0}, 0.0), InvalidArgument);
    }
}

TEST_CASE("Blasius starred march with Töpfer's hand-computation grid") {
    const Trajectory t = integrate_fixed({0.0, 6.0, blasius_star_ic(), boundary_layer_system()}, 0.1);
    CHECK(t.size() == 61);
    CHECK(t.end() == 6.0);
    // Reference slope at eta* = 6 from a dense fixed-step run.
    const Trajectory dense = integrate_fixed({0.0, 6.0, blasius_star_ic(), boundary_layer_system()}, 1e-3);
    CHECK(t.back()[1] == doctest::Approx(dense.back()[1]).epsilon(1e-6));
    CHECK(t.back()[1] == doctest::Approx(2.0854083895810347).epsilon(1e-6));
}

TEST_CASE("integrate_fixed") {
    SUBCASE("constant solution, 21 samples") {
        const Trajectory t = integrate_fixed({0.0, 10.0, {3.0}, constant_system()}, 0.5);
        REQUIRE(t.size() == 21);
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.state(i)[0] == 3.0);
        CHECK(t.start() == 0.0);
        CHECK(t.end() == 10.0);
    }
    SUBCASE("exponential growth to eta = 1") {
        const Trajectory t = integrate_fixed({0.0, 1.0, {1.0}, growth_system()}, 0.05);
        CHECK(std::abs(t.back()[0] - std::numbers::e) < 1e-6);
        CHECK(t.end() == 1.0);
    }
    SUBCASE("harmonic oscillator returns after one period with a partial last step") {
        const double period = 2.0 * std::numbers::pi;
        const Trajectory t = integrate_fixed({0.0, period, {1.0, 0.0}, oscillator_system()}, 0.01);
        CHECK(t.end() == period);
        CHECK(t.size() == 630);  // 628 full steps, one partial, plus the start
        CHECK(std::abs(t.back()[0] - 1.0) < 1e-6);
        CHECK(std::abs(t.back()[1]) < 1e-6);
    }
    SUBCASE("step budget") {
        CHECK_THROWS_AS(integrate_fixed({0.0, 1.0, {1.0}, growth_system()}, 1e-3, 100), StepLimitError);
    }
    SUBCASE("invalid interval") {
        CHECK_THROWS_AS(integrate_fixed({1.0, 1.0, {1.0}, growth_system()}, 0.1), InvalidArgument);
        CHECK_THROWS_AS(integrate_fixed({0.0, 1.0, {1.0, 2.0}, growth_system()}, 0.1), InvalidArgument);
    }
}

TEST_CASE("fixed-step global error is fourth order") {
    for (double h : {0.2, 0.1, 0.05}) {
        const double ratio = fixed_error_growth(h) / fixed_error_growth(h / 2.0);
        CAPTURE(h);
        CHECK(ratio >= 14.0);
        CHECK(ratio <= 18.0);
    }
}

TEST_CASE("integrate_adaptive") {
    SUBCASE("constant solution takes maximal steps") {
        const Trajectory t = integrate_adaptive({0.0, 10.0, {3.0}, constant_system()});
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.state(i)[0] == 3.0);
        CHECK(t.end() == 10.0);
        CHECK(t.size() < 10);
    }
    SUBCASE("exponential to tolerance") {
        const Trajectory t = integrate_adaptive({0.0, 1.0, {1.0}, growth_system()});
        CHECK(std::abs(t.back()[0] - std::numbers::e) <= 1e-6);
        CHECK(t.start() == 0.0);
        CHECK(t.end() == 1.0);
    }
    SUBCASE("samples strictly increase") {
        const Trajectory t = integrate_adaptive({0.0, 10.0, sakiadis_star_ic({3.0, SecondDerivativeSign::minus}),
                                                 boundary_layer_system()});
        for (std::size_t i = 1; i < t.size(); ++i) CHECK(t.eta(i) > t.eta(i - 1));
    }
    SUBCASE("agrees with a fine fixed-step run on the starred Sakiadis IVP") {
        const IvpSpec spec{0.0, 10.0, sakiadis_star_ic({2.8, SecondDerivativeSign::minus}), boundary_layer_system()};
        const StepControl control;
        const Trajectory a = integrate_adaptive(spec, control);
        const Trajectory f = integrate_fixed(spec, 1e-4);
        for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(a.back()[c] - f.back()[c]) <= 10.0 * control.abs_tol);
    }
    SUBCASE("step underflow") {
        StepControl c;
        c.min_step = 1e-3;
        c.initial_step = 0.5;
        c.abs_tol = c.rel_tol = 1e-30;
        CHECK_THROWS_AS(integrate_adaptive({0.0, 1.0, {1.0}, growth_system()}, c), StepUnderflowError);
    }
    SUBCASE("max_steps") {
        StepControl c;
        c.max_steps = 3;
        CHECK_THROWS_AS(integrate_adaptive({0.0, 1.0, {1.0}, growth_system()}, c), StepLimitError);
    }
    SUBCASE("finite-eta singularity is reported, not returned") {
        // y' = y^2, y(0) = 1 blows up at eta = 1.
        const OdeSystem riccati{1, [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0] * y[0]; }};
        CHECK_THROWS_AS(integrate_adaptive({0.0, 2.0, {1.0}, riccati}), IntegrationError);
    }
    SUBCASE("bad control") {
        StepControl c;
        c.safety = 1.5;
        CHECK_THROWS_AS(integrate_adaptive({0.0, 1.0, {1.0}, growth_system()}, c), InvalidArgument);
        StepControl d;
        d.max_step = 0.001;
        CHECK_THROWS_AS(integrate_adaptive({0.0, 1.0, {1.0}, growth_system()}, d), InvalidArgument);
    }
}

TEST_CASE("integration is deterministic") {
    const IvpSpec spec{0.0, 10.0, augmented_ic(2.7), augmented_system()};
    CHECK(integrate_adaptive(spec) == integrate_adaptive(spec));
    CHECK(integrate_fixed(spec, 0.05) == integrate_fixed(spec, 0.05));
}

TEST_CASE("state_at dense output") {
    const Trajectory t = integrate_adaptive({0.0, 1.0, {1.0}, growth_system()});
    SUBCASE("bit-exact at samples") {
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(state_at(t, t.eta(i)) == t.state(i));
    }
    SUBCASE("interior point") {
        // Cubic Hermite over steps of up to 0.25.
        CHECK(std::abs(state_at(t, 0.5)[0] - std::sqrt(std::numbers::e)) < 5e-5);
    }
    SUBCASE("Hermite reproduces a linear solution") {
        const Trajectory lin = integrate_fixed({0.0, 3.0, {0.0}, linear_ramp_system()}, 0.7);
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(0.0, 3.0);
        for (int k = 0; k < 50; ++k) {
            const double x = u(rng);
            CHECK(state_at(lin, x)[0] == doctest::Approx(2.0 * x).epsilon(1e-14));
        }
    }
    SUBCASE("outside the span") {
        CHECK_THROWS_AS(state_at(t, -0.1), InvalidArgument);
        CHECK_THROWS_AS(state_at(t, 1.0001), InvalidArgument);
    }
}

TEST_CASE("truncate and leading_components") {
    const Trajectory t = integrate_adaptive({0.0, 10.0, augmented_ic(3.0), augmented_system()});
    const Trajectory head = truncate(t, 4.3);
    CHECK(head.end() == 4.3);
    CHECK(head.back() == state_at(t, 4.3));
    const Trajectory three = leading_components(t, 3);
    CHECK(three.dim() == 3);
    CHECK(three.size() == t.size());
    CHECK(three.back()[2] == t.back()[2]);
    CHECK_THROWS_AS(leading_components(t, 7), InvalidArgument);
}
