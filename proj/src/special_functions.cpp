// Dilogarithm and complex log-gamma / digamma implementations.
//
// Li2 uses direct series summation for small arguments and the Euler
// reflection Li2(x) + Li2(1-x) = pi^2/6 - ln(x)ln(1-x) for x > 1/2.
// log_gamma and digamma use the Stirling asymptotic series after shifting
// the argument with the recurrences Gamma(z+1) = z Gamma(z) and
// psi(z+1) = psi(z) + 1/z until Re(z) is large enough.

#include "spinreg/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinreg {

namespace {

// Li2(z) for |z| <= 1/2 by series; converges in <= 60 terms.
double dilog_series(double z) {
    double sum = 0.0;
    double power = z;
    for (int j = 1; j < 80; ++j) {
        const double term = power / (static_cast<double>(j) * j);
        sum += term;
        if (std::abs(term) < 0.25 * std::numeric_limits<double>::epsilon() * std::abs(sum))
            break;
        power *= z;
    }
    return sum;
}

// Stirling coefficients B_{2k} / (2k (2k-1)) for log Gamma.
constexpr double lg_coeff[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// Stirling coefficients B_{2k} / (2k) for digamma.
constexpr double dg_coeff[] = {
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
};

constexpr double half_log_two_pi = 0.91893853320467274178;

}  // namespace

double dilog(double x) {
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::domain_error("dilog: argument must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return pi_sq_over_6;
    if (x <= 0.5) return dilog_series(x);
    // Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x)
    return pi_sq_over_6 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
}

double dilog_exp_centered(double x) {
    if (!(x >= 0.0))
        throw std::domain_error("dilog_exp_centered: argument must be >= 0");
    if (x == 0.0) return 0.0;
    const double z = std::exp(-x);
    if (z <= 0.5) {
        // Direct series; the pi^2/6 subtraction loses < 1 digit here.
        if (z == 0.0) return -pi_sq_over_6;
        return dilog_series(z) - pi_sq_over_6;
    }
    // Reflection with w = 1 - exp(-x) computed via expm1 keeps full accuracy
    // as x -> 0:  Li2(e^-x) - pi^2/6 = x ln(w) - Li2(w).
    const double w = -std::expm1(-x);
    return x * std::log(w) - dilog_series(w);
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0))
        throw std::domain_error("log_gamma: Re(z) must be > 0");
    std::complex<double> shift(0.0, 0.0);
    while (z.real() < 10.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const std::complex<double> log_z = std::log(z);
    std::complex<double> result = (z - 0.5) * log_z - z + half_log_two_pi;
    const std::complex<double> inv_sq = 1.0 / (z * z);
    std::complex<double> inv_pow = 1.0 / z;
    for (double c : lg_coeff) {
        result += c * inv_pow;
        inv_pow *= inv_sq;
    }
    return result - shift;
}

std::complex<double> digamma(std::complex<double> z) {
    if (!(z.real() > 0.0))
        throw std::domain_error("digamma: Re(z) must be > 0");
    std::complex<double> shift(0.0, 0.0);
    while (z.real() < 10.0) {
        shift += 1.0 / z;
        z += 1.0;
    }
    std::complex<double> result = std::log(z) - 0.5 / z;
    const std::complex<double> inv_sq = 1.0 / (z * z);
    std::complex<double> inv_pow = inv_sq;
    for (double c : dg_coeff) {
        result -= c * inv_pow;
        inv_pow *= inv_sq;
    }
    return result - shift;
}

double log_abs_gamma_ratio(double a, double b) {
    if (!(a > 0.0))
        throw std::domain_error("log_abs_gamma_ratio: a must be > 0");
    if (b == 0.0) return 0.0;
    const double re_num = log_gamma(std::complex<double>(a, 0.0)).real();
    const double re_den = log_gamma(std::complex<double>(a, -std::abs(b))).real();
    return re_num - re_den;
}

}  // namespace spinreg
