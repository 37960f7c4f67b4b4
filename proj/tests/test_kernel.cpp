#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinreg/kernel.hpp"
#include "spinreg/rng.hpp"
#include "spinreg/special_functions.hpp"

using namespace spinreg;

TEST_CASE("bath parameter validation") {
    CHECK_THROWS_AS(BathSpec(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BathSpec(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BathSpec(1.0, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(BathSpec(1.0, 1.0, 1.0, -0.5), std::invalid_argument);
    CHECK(BathSpec(1.0, 1.0, 0.0).ohmic());
    CHECK_FALSE(BathSpec(1.0, 1.0, 0.0, 2.0).ohmic());
}

TEST_CASE("K vanishes at t = 0 in every regime") {
    const BathSpec bath(1.0, 1000.0, 2.0);
    CHECK(k_zero_exact(0.0, bath) == 0.0);
    CHECK(k_finite_exact(0.5, 0.0, bath) == 0.0);
    CHECK(k_high_temperature(0.5, 0.0, bath) == 0.0);
    const QuadratureResult q = k_quadrature(0.5, 0.0, bath);
    CHECK(q.value == 0.0);
    CHECK(q.abs_error == 0.0);
    for (double r : {0.0, 0.01, 1.0, 30.0}) CHECK(k_dispatch(r, 0.0, bath) == 0.0);
}

TEST_CASE("zero-distance small-time limit (alpha/2) ln(1 + t^2 W^2)") {
    const BathSpec bath(0.8, 1000.0, 1.0);
    for (double t : {0.001, 0.01}) {  // t << 1/T
        const double approx = 0.5 * bath.alpha * std::log1p(t * t * 1e6);
        CHECK(k_zero_exact(t, bath) == doctest::Approx(approx).epsilon(0.01));
    }
}

TEST_CASE("zero-distance large-time limit alpha pi T t + alpha ln(W / 2 pi T)") {
    const BathSpec bath(0.8, 1000.0, 1.0);
    for (double t : {20.0, 100.0}) {  // t >> 1/T
        const double approx =
            bath.alpha * pi * bath.temperature * t +
            bath.alpha * std::log(bath.omega_c / (2.0 * pi * bath.temperature));
        CHECK(k_zero_exact(t, bath) == doctest::Approx(approx).epsilon(0.01));
    }
}

TEST_CASE("zero-distance closed form matches quadrature to 1e-6") {
    const BathSpec bath(1.0, 1000.0, 1.0);
    for (double t : {0.001, 0.05, 1.0, 30.0}) {
        const double exact = k_zero_exact(t, bath);
        const QuadratureResult q = k_quadrature(0.0, t, bath);
        REQUIRE(q.converged);
        CHECK(std::abs(q.value - exact) / exact < 1e-6);
    }
}

TEST_CASE("zero-distance at T = 0 reduces to the vacuum term") {
    const BathSpec bath(0.5, 200.0, 0.0);
    const double t = 0.7;
    CHECK(k_zero_exact(t, bath) ==
          doctest::Approx(0.25 * std::log1p(t * t * 4e4)).epsilon(1e-14));
    const QuadratureResult q = k_quadrature(0.0, t, bath);
    REQUIRE(q.converged);
    CHECK(q.value == doctest::Approx(k_zero_exact(t, bath)).epsilon(1e-8));
}

TEST_CASE("finite-distance closed form vs quadrature (large cutoff)") {
    // r = 1, t = 5, T = 5 with W = 1e6
    const BathSpec bath(1.0, 1e6, 5.0);
    const double exact = k_finite_exact(1.0, 5.0, bath);
    const QuadratureResult q = k_quadrature(1.0, 5.0, bath);
    REQUIRE(q.converged);
    CHECK(std::abs(exact - q.value) / q.value < 1e-5);

    // r > t branch: r = 1, t = 0.5, T = 5. The thermal cutoff correction
    // scales like 1/W and only drops below 1e-5 at W ~ 1e6 here.
    const BathSpec bath2(1.0, 1e6, 5.0);
    const double exact2 = k_finite_exact(1.0, 0.5, bath2);
    const QuadratureResult q2 = k_quadrature(1.0, 0.5, bath2);
    REQUIRE(q2.converged);
    CHECK(std::abs(exact2 - q2.value) / q2.value < 1e-5);
}

TEST_CASE("finite-distance form rejects r below the threshold") {
    const BathSpec bath(1.0, 1000.0, 1.0);
    CHECK_THROWS_AS(
        k_finite_exact(0.5 * finite_distance_factor / bath.omega_c, 1.0, bath),
        std::domain_error);
}

TEST_CASE("deep r >> t limit alpha pi T t^2 / (2 r)") {
    const BathSpec bath(1.0, 1e6, 5.0);
    const double r = 10.0, t = 0.4;
    const double approx = bath.alpha * pi * bath.temperature * t * t / (2.0 * r);
    CHECK(k_finite_exact(r, t, bath) == doctest::Approx(approx).epsilon(0.01));
}

TEST_CASE("sound-cone continuity") {
    const BathSpec bath(1.0, 1e6, 1.0);
    const double r = 1.0;
    const double at_cone = k_finite_exact(r, r, bath);
    CHECK(std::isfinite(at_cone));
    // The kernel has a |dt| ln|dt| cusp at the cone: the two-sided difference
    // must shrink essentially linearly in delta, not stall.
    const double d4 = std::abs(k_finite_exact(r, r + 1e-4, bath) -
                               k_finite_exact(r, r - 1e-4, bath));
    const double d6 = std::abs(k_finite_exact(r, r + 1e-6, bath) -
                               k_finite_exact(r, r - 1e-6, bath));
    CHECK(d6 < 0.02 * d4);
    CHECK(d6 < 1e-4 * at_cone);
}

TEST_CASE("T = 0 finite-distance branch is the small-T limit") {
    const BathSpec cold(1.0, 1e6, 0.0);
    const BathSpec cool(1.0, 1e6, 1e-9);
    for (double t : {0.2, 1.0, 3.0}) {
        CHECK(k_finite_exact(0.7, t, cold) ==
              doctest::Approx(k_finite_exact(0.7, t, cool)).epsilon(1e-6));
    }
}

TEST_CASE("high-temperature approximation") {
    const BathSpec bath(0.1, 1e6, 5.0);
    const double t0 = 2.0;
    CHECK(k_high_temperature(0.0, t0, bath) ==
          doctest::Approx(0.1 * pi * 5.0 * t0 + 0.1 * std::log(1e6 / (10.0 * pi)))
              .epsilon(1e-14));
    // continuity at r = t
    CHECK(k_high_temperature(1.0, 1.0, bath) ==
          doctest::Approx(0.1 * pi * 5.0 * 0.5).epsilon(1e-14));
    // against the exact closed form, r = 2, t = 10
    const double exact = k_finite_exact(2.0, 10.0, bath);
    const double approx = k_high_temperature(2.0, 10.0, bath);
    CHECK(std::abs(approx - exact) / exact < 2e-3);
}

TEST_CASE("high-T limit within half a percent after the 1/(24 T r) subtraction") {
    // Inside the cone the exact form exceeds the high-T ramp by
    // alpha pi/(12 T r); subtracting half of it (the omitted 1/(24 T r)
    // term) leaves the difference inside the tolerance. Outside the cone
    // the residual is exponentially suppressed and needs no subtraction.
    const BathSpec bath(1.0, 1e7, 4.0);
    for (auto [r, t] : {std::pair{5.0, 11.0}, {6.0, 1.0}, {8.0, 15.0}}) {
        REQUIRE(bath.temperature * r >= 20.0);
        REQUIRE(bath.temperature * std::abs(t - r) >= 20.0);
        const double subtraction =
            (r < t) ? bath.alpha * pi / (24.0 * bath.temperature * r) : 0.0;
        const double exact = k_finite_exact(r, t, bath) - subtraction;
        const double approx = k_high_temperature(r, t, bath);
        CHECK(std::abs(approx - exact) / std::abs(exact) < 5e-3);
    }
}

TEST_CASE("dispatch selects the documented regimes") {
    const BathSpec bath(1.0, 1e6, 1.0);
    CHECK(select_regime(0.0, bath) == Regime::ZeroDistanceExact);
    CHECK(select_regime(20.0 / bath.omega_c, bath) == Regime::FiniteDistanceExact);
    CHECK(select_regime(2.0 / bath.omega_c, bath) == Regime::Quadrature);
    CHECK(k_dispatch(0.0, 1.0, bath) == k_zero_exact(1.0, bath));
    CHECK(k_dispatch(2e-5, 1.0, bath) == k_finite_exact(2e-5, 1.0, bath));
}

TEST_CASE("dispatch is continuous across the regime boundary") {
    // The large-cutoff form deviates from the finite-cutoff integral by
    // ~ alpha pi / (2 W r) near the threshold; with T t large the kernel
    // itself is large and the relative mismatch drops below 1e-5.
    const BathSpec bath(1.0, 1e6, 100.0);
    const double thr = finite_distance_factor / bath.omega_c;
    const double t = 100.0;
    const double below = k_dispatch(thr * (1.0 - 1e-6), t, bath);
    const double above = k_dispatch(thr * (1.0 + 1e-6), t, bath);
    CHECK(std::abs(above - below) / below < 1e-5);
}

TEST_CASE("quadrature reports an honest error estimate") {
    const BathSpec bath(1.0, 1000.0, 1.0);
    const QuadratureResult q = k_quadrature(0.0, 0.3, bath);
    REQUIRE(q.converged);
    const double exact = k_zero_exact(0.3, bath);
    CHECK(std::abs(q.value - exact) <= std::max(q.abs_error * 50.0, 1e-9 * exact));
}

TEST_CASE("monotone growth of the zero-distance kernel") {
    const BathSpec bath(1.0, 1000.0, 0.5);
    double prev = 0.0;
    for (double t = 0.01; t < 100.0; t *= 1.6) {
        const double value = k_zero_exact(t, bath);
        CHECK(value >= prev);
        CHECK(value >= 0.0);
        prev = value;
    }
}

TEST_CASE("oracle equivalence on random finite-distance draws") {
    Rng rng(20240817);
    const double omega = 1e6;
    for (int trial = 0; trial < 15; ++trial) {
        const double r = 0.25 * std::pow(100.0, rng.uniform());
        const double t = 0.5 * std::pow(100.0, rng.uniform());
        const double temperature = 0.3 * std::pow(10.0, rng.uniform());
        const BathSpec bath(1.0, omega, temperature);
        const double exact = k_finite_exact(r, t, bath);
        const QuadratureResult q = k_quadrature(r, t, bath);
        REQUIRE(q.converged);
        CHECK(std::abs(exact - q.value) / std::abs(q.value) < 1e-5);
    }
}

TEST_CASE("closed forms reject non-ohmic baths, dispatch falls back") {
    const BathSpec sub(1.0, 1000.0, 1.0, 0.5);
    CHECK_THROWS_AS(k_zero_exact(1.0, sub), std::domain_error);
    CHECK_THROWS_AS(k_finite_exact(1.0, 1.0, sub), std::domain_error);
    CHECK_THROWS_AS(k_high_temperature(1.0, 2.0, sub), std::domain_error);
    CHECK(select_regime(0.0, sub) == Regime::Quadrature);
    const double value = k_dispatch(0.5, 1.0, sub);
    CHECK(value > 0.0);
    CHECK(std::isfinite(value));
}

TEST_CASE("time derivative matches central differences") {
    const BathSpec bath(0.7, 500.0, 2.0);
    auto fd_zero = [&](double t) {
        const double h = 1e-6 * t;
        return (k_zero_exact(t + h, bath) - k_zero_exact(t - h, bath)) / (2.0 * h);
    };
    for (double t : {0.05, 0.4, 3.0})
        CHECK(k_time_derivative(0.0, t, bath) ==
              doctest::Approx(fd_zero(t)).epsilon(1e-7));
    auto fd_finite = [&](double r, double t) {
        const double h = 1e-7;
        return (k_finite_exact(r, t + h, bath) - k_finite_exact(r, t - h, bath)) /
               (2.0 * h);
    };
    for (double t : {0.1, 0.35, 2.0})
        CHECK(k_time_derivative(0.4, t, bath) ==
              doctest::Approx(fd_finite(0.4, t)).epsilon(1e-6));
    CHECK(k_time_derivative(0.0, 0.0, bath) == 0.0);
}
