// kernel.hpp — the single-pair decoherence function K(r,t) of an ohmic bath
// in every regime: exact closed forms at zero and finite distance, the
// high-temperature piecewise approximation, direct adaptive quadrature of
// the defining integral, and a regime dispatcher.

#pragma once

#include "spinreg/bath.hpp"

namespace spinreg {

enum class Regime {
    ZeroDistanceExact,
    FiniteDistanceExact,
    HighTemperature,
    Quadrature,
};

// The finite-distance closed form drops the cutoff; it is selected for
// r >= finite_distance_factor / omega_c.
inline constexpr double finite_distance_factor = 10.0;

struct QuadratureResult {
    double value;
    double abs_error;
    bool converged;
};

// K(0,t) from the log-gamma closed form (finite cutoff, exact for s = 1).
// T = 0 reduces to the vacuum term (alpha/2) ln(1 + t^2 Omega^2).
double k_zero_exact(double t, const BathSpec& bath);

// K(r,t) in the large-cutoff limit, valid for r >= finite_distance_factor/Omega.
// Continuous across the sound cone t = r. Throws std::domain_error below the
// distance threshold.
double k_finite_exact(double r, double t, const BathSpec& bath);

// Piecewise high-temperature approximation: alpha pi T (t - r/2) for r < t,
// alpha pi T t^2 / (2 r) for r > t, and the r = 0 long-time form
// alpha pi T t + alpha ln(Omega / 2 pi T). Validity t, r, |t-r| >> 1/T is
// documented, not enforced.
double k_high_temperature(double r, double t, const BathSpec& bath);

// Direct adaptive quadrature of
//   K(r,t) = alpha Int_0^inf dw (1-cos wt)/w coth(w/2T) sin(wr)/(wr) e^{-w/W}
// with panels split at the oscillation zeros and an Euler-accelerated
// alternating tail. Works for any s >= 0 (the ohmic integrand is multiplied
// by w^{s-1}); closed-form comparisons are only meaningful for s = 1.
QuadratureResult k_quadrature(double r, double t, const BathSpec& bath,
                              double rel_tol = 1e-9, double abs_tol = 0.0);

// Regime chosen by k_dispatch for the given distance.
Regime select_regime(double r, const BathSpec& bath);

// Routes to the cheapest valid evaluation: zero-distance closed form at
// r = 0, finite-distance closed form at r >= threshold, quadrature otherwise
// (and for all r when s != 1). Throws std::runtime_error if the quadrature
// fails to converge.
double k_dispatch(double r, double t, const BathSpec& bath);

// dK/dt, i.e. four times the running real part of the bath correlator
// integral. Uses the digamma closed form at r = 0 (finite cutoff) and the
// large-cutoff derivative at r > 0. The derivative has an integrable
// logarithmic singularity at t = r which is clamped at |t-r| = 1e-12 r.
double k_time_derivative(double r, double t, const BathSpec& bath);

}  // namespace spinreg
