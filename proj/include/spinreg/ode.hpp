// ode.hpp — embedded Dormand-Prince 5(4) step with adaptive step-size
// control, templated on a linear state type (vector or matrix).

#pragma once

#include <cmath>
#include <stdexcept>

namespace spinreg {

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double initial_step = 0.0;  // 0: derived from the interval
};

// Integrates y' = rhs(t, y) from t0 to t1 (t1 > t0), returning y(t1).
// `norm` maps a state to its max-abs magnitude. Throws std::runtime_error on
// step-size underflow.
template <class State, class Rhs, class Norm>
State integrate_dp45(State y, double t0, double t1, Rhs&& rhs, Norm&& norm,
                     const OdeOptions& opt = {}) {
    // Dormand-Prince coefficients (FSAL pair).
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                     a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                     e3 = 500.0 / 1113 - 7571.0 / 16695,
                     e4 = 125.0 / 192 - 393.0 / 640,
                     e5 = -2187.0 / 6784 + 92097.0 / 339200,
                     e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double span = t1 - t0;
    if (!(span > 0.0)) return y;
    double t = t0;
    double h = opt.initial_step > 0.0 ? opt.initial_step : span / 16.0;
    h = std::min(h, span);

    State k1 = rhs(t, y);
    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        const State k2 = rhs(t + c2 * h, State(y + h * a21 * k1));
        const State k3 = rhs(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
        const State k4 =
            rhs(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
        const State k5 = rhs(
            t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        const State k6 =
            rhs(t + h,
                State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        const State y_new =
            y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = rhs(t + h, y_new);
        const State err_state =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double scale =
            opt.abs_tol + opt.rel_tol * std::max(norm(y), norm(y_new));
        const double err = norm(err_state) / scale;

        if (err <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;  // first-same-as-last
        }
        const double factor =
            (err <= 1e-30) ? 5.0
                           : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
        h *= factor;
        if (h < 1e-14 * span)
            throw std::runtime_error("integrate_dp45: step size underflow");
    }
    return y;
}

}  // namespace spinreg
