// quadrature.hpp — adaptive Gauss-Kronrod panels and an Euler-accelerated
// summation scheme for oscillatory tails.

#pragma once

#include <functional>
#include <vector>

namespace spinreg::quad {

struct Outcome {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = true;
};

using Fn = std::function<double(double)>;

// 15-point Gauss-Kronrod rule on [lo, hi]; error estimated from the
// embedded 7-point Gauss result.
Outcome gk15(const Fn& f, double lo, double hi);

// Globally adaptive bisection starting from the given breakpoints. The
// worst panel (largest error estimate) is split until the summed error
// drops below max(abs_tol, rel_tol * |value|) or max_splits is exhausted.
Outcome adaptive(const Fn& f, std::vector<double> breakpoints,
                 double abs_tol, double rel_tol, int max_splits = 20000);

// Integral over [x0, x_max] of an integrand whose sign flips at
// (k + phase) * pi / s, k integer (phase 0 for a sine factor, 1/2 for a
// cosine factor), with a positive monotonically decreasing envelope.
// Group sums between consecutive sign changes form an alternating series
// that is summed with iterated averaging; the lead-in piece
// [x0, first sign change] is included. Requires s > 0.
Outcome alternating_tail(const Fn& f, double s, double phase, double x0,
                         double x_max, double abs_tol, int max_groups = 600);

}  // namespace spinreg::quad
