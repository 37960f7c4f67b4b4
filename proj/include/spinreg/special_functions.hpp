// special_functions.hpp — dilogarithm and complex log-gamma / digamma helpers
// used by the decoherence kernels.

#pragma once

#include <complex>

namespace spinreg {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double pi_sq_over_6 = 1.6449340668482264365;  // Li2(1)

// Dilogarithm Li2(x) = sum_{j>=1} x^j / j^2 for x in [0, 1].
// Li2(0) = 0, Li2(1) = pi^2/6. Throws std::domain_error outside [0, 1].
double dilog(double x);

// Li2(exp(-x)) - pi^2/6 for x >= 0, evaluated without cancellation near x = 0.
// Monotonically decreasing from 0 to -pi^2/6.
double dilog_exp_centered(double x);

// log Gamma(z) for Re(z) > 0, principal branch.
std::complex<double> log_gamma(std::complex<double> z);

// Digamma psi(z) for Re(z) > 0.
std::complex<double> digamma(std::complex<double> z);

// ln|Gamma(a)| - ln|Gamma(a - i b)| for a > 0.
// Throws std::domain_error for a <= 0.
double log_abs_gamma_ratio(double a, double b);

}  // namespace spinreg
