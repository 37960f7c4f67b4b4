#include "spinreg/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinreg/quadrature.hpp"
#include "spinreg/special_functions.hpp"

namespace spinreg {

namespace {

// Li2(e^{-x}) - pi^2/6, shared shorthand for the f_T terms.
double phi(double x) { return dilog_exp_centered(x); }

// ln(1 - e^{-y}) without cancellation for small y.
double log1m_exp(double y) { return std::log(-std::expm1(-y)); }

// Large-cutoff K(r,t) at T = 0; also the T -> 0 limit of the thermal form.
double k_finite_zero_temperature(double r, double t, double alpha) {
    const double u = t - r;
    const double cone = (u == 0.0) ? 0.0 : u * std::log(std::abs(u));
    return 0.5 * alpha / r *
           ((t + r) * std::log(t + r) - cone - 2.0 * r * std::log(r));
}

}  // namespace

double k_zero_exact(double t, const BathSpec& bath) {
    bath.require_ohmic("k_zero_exact");
    if (!(t >= 0.0)) throw std::invalid_argument("k_zero_exact: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double w = bath.omega_c;
    const double vacuum = 0.5 * bath.alpha * std::log1p(t * t * w * w);
    if (bath.temperature == 0.0) return vacuum;
    const double T = bath.temperature;
    // 2 alpha ln|Gamma(T/W) / Gamma(T/W - i t T)| - (alpha/2) ln(1 + t^2 W^2)
    return 2.0 * bath.alpha * log_abs_gamma_ratio(T / w, t * T) - vacuum;
}

double k_finite_exact(double r, double t, const BathSpec& bath) {
    bath.require_ohmic("k_finite_exact");
    if (!(t >= 0.0)) throw std::invalid_argument("k_finite_exact: t must be >= 0");
    if (!(r >= finite_distance_factor / bath.omega_c))
        throw std::domain_error(
            "k_finite_exact: r below the finite-distance threshold");
    if (t == 0.0) return 0.0;
    const double alpha = bath.alpha;
    const double T = bath.temperature;
    if (T == 0.0) return k_finite_zero_temperature(r, t, alpha);

    const double two_pi_T = 2.0 * pi * T;
    const double bracket = phi(two_pi_T * (t + r)) - 2.0 * phi(two_pi_T * r);
    const double pref = alpha / (4.0 * pi * T * r);
    if (t >= r) {
        // Sound-cone interior; the 1/(12 T^2 r) term of the printed form is
        // absorbed by centering the dilogarithms.
        return alpha * pi * T * (t - 0.5 * r) +
               pref * (bracket - phi(two_pi_T * (t - r)));
    }
    return alpha * pi * T * t * t / (2.0 * r) +
           pref * (bracket + phi(two_pi_T * (r - t)));
}

double k_high_temperature(double r, double t, const BathSpec& bath) {
    bath.require_ohmic("k_high_temperature");
    if (!(t >= 0.0) || !(r >= 0.0))
        throw std::invalid_argument("k_high_temperature: r, t must be >= 0");
    const double alpha = bath.alpha;
    const double T = bath.temperature;
    if (r == 0.0)
        return alpha * pi * T * t + alpha * std::log(bath.omega_c / (2.0 * pi * T));
    if (t >= r) return alpha * pi * T * (t - 0.5 * r);
    return alpha * pi * T * t * t / (2.0 * r);
}

QuadratureResult k_quadrature(double r, double t, const BathSpec& bath,
                              double rel_tol, double abs_tol) {
    if (!(r >= 0.0) || !(t >= 0.0))
        throw std::invalid_argument("k_quadrature: r, t must be >= 0");
    if (t == 0.0) return {0.0, 0.0, true};

    const double alpha = bath.alpha;
    const double W = bath.omega_c;
    const double T = bath.temperature;
    const double s = bath.s;
    const bool ohmic = (s == 1.0);

    const double w_max = 60.0 * W;
    double w_series = 1e-6 * ((T > 0.0) ? std::min(1.0 / t, T) : 1.0 / t);
    double X = std::min(std::max(4.0 * T, 4.0 / t), w_max);
    w_series = std::min(w_series, 0.25 * X);

    // Small-w Taylor coefficients of the s = 1 integrand (design rule: the
    // first panel is evaluated by series to dodge the 0/0 region).
    const double c2 = (T > 0.0)
                          ? 1.0 / (12.0 * T * T) - t * t / 12.0 - r * r / 6.0 +
                                1.0 / (2.0 * W * W)
                          : 0.0;

    auto integrand = [&](double w) -> double {
        if (w <= 0.0) return (T > 0.0 && ohmic) ? alpha * T * t * t : 0.0;
        if (ohmic && w < w_series) {
            if (T > 0.0)
                return alpha * T * t * t * (1.0 - w / W + c2 * w * w);
            return alpha * 0.5 * w * t * t * (1.0 - w / W);
        }
        const double osc = 2.0 * std::sin(0.5 * w * t) * std::sin(0.5 * w * t) / w;
        const double thermal = (T > 0.0) ? 1.0 / std::tanh(0.5 * w / T) : 1.0;
        const double spatial = (r > 0.0) ? std::sin(w * r) / (w * r) : 1.0;
        double value = alpha * osc * thermal * spatial * std::exp(-w / W);
        if (!ohmic) value *= std::pow(w, s - 1.0);
        return value;
    };

    // Head panels: split at every oscillation zero below X plus a geometric
    // scaffold (panels at most an octave wide, so the embedded-rule error
    // estimate cannot be fooled by coarse spans).
    std::vector<double> breaks = {0.0, w_series, X};
    if (T > 0.0 && T > w_series && T < X) breaks.push_back(T);
    for (double w = 2.0 * w_series; w < X; w *= 2.0) breaks.push_back(w);
    auto push_zeros = [&](double spacing) {
        if (!(spacing > 0.0)) return;
        const double count = X / spacing;
        if (count > 5e5) return;  // adaptive splitting covers pathological density
        for (double z = spacing; z < X; z += spacing) breaks.push_back(z);
    };
    if (r > 0.0) push_zeros(pi / r);
    push_zeros(2.0 * pi / t);

    quad::Outcome head =
        quad::adaptive(integrand, breaks, abs_tol, 0.3 * rel_tol, 200000);

    double value = head.value;
    double error = head.abs_error;
    bool ok = head.converged;

    const double target =
        std::max(abs_tol, rel_tol * std::max(std::abs(head.value), 1e-300));

    if (X < w_max) {
        const double tail_tol = 0.2 * target;
        auto envelope = [&](double w) {
            double h = (T > 0.0 ? 1.0 / std::tanh(0.5 * w / T) : 1.0) *
                       std::exp(-w / W);
            if (!ohmic) h *= std::pow(w, s - 1.0);
            return h;
        };
        auto geometric_breaks = [&]() {
            std::vector<double> g;
            for (double w = X; w < w_max; w *= 2.0) g.push_back(w);
            g.push_back(w_max);
            return g;
        };

        if (r == 0.0) {
            // (1 - cos wt) -> 1 piece: smooth positive decay.
            auto smooth = [&](double w) { return alpha * envelope(w) / w; };
            quad::Outcome a = quad::adaptive(smooth, geometric_breaks(),
                                             0.5 * tail_tol, 0.0, 4000);
            // minus the cos wt piece, alternating between cosine zeros
            auto osc = [&](double w) {
                return -alpha * envelope(w) * std::cos(w * t) / w;
            };
            quad::Outcome b =
                quad::alternating_tail(osc, t, 0.5, X, w_max, 0.5 * tail_tol);
            value += a.value + b.value;
            error += a.abs_error + b.abs_error;
            ok = ok && a.converged && b.converged;
        } else {
            // sin(wr)(1 - cos wt) = sin(wr) - sin(w(r+t))/2 - sin(w(r-t))/2
            struct Component {
                double freq, coeff;
            };
            std::vector<Component> comps = {{r, 1.0}, {r + t, -0.5}};
            if (r != t) comps.push_back({std::abs(r - t), r > t ? -0.5 : 0.5});
            for (const auto& c : comps) {
                auto fc = [&, c](double w) {
                    return c.coeff * (alpha / r) * envelope(w) *
                           std::sin(w * c.freq) / (w * w);
                };
                const double piece_tol = tail_tol / static_cast<double>(comps.size());
                quad::Outcome piece;
                if (c.freq * (w_max - X) < 12.0 * pi) {
                    std::vector<double> g = geometric_breaks();
                    for (double z = std::ceil(X * c.freq / pi) * pi / c.freq;
                         z < w_max; z += pi / c.freq)
                        g.push_back(z);
                    piece = quad::adaptive(fc, g, piece_tol, 0.0, 4000);
                } else {
                    piece = quad::alternating_tail(fc, c.freq, 0.0, X, w_max,
                                                   piece_tol);
                }
                value += piece.value;
                error += piece.abs_error;
                ok = ok && piece.converged;
            }
        }
    }

    // Truncation bound beyond w_max: |integrand| <= 2 alpha coth(w/2T) e^{-w/W} / w.
    const double coth_cap = 1.0 + (T > 0.0 ? 2.0 * T / w_max : 0.0);
    error += 2.0 * alpha * coth_cap * std::exp(-w_max / W) * W / w_max;

    ok = ok && error <= std::max(abs_tol, 3.0 * rel_tol * std::abs(value));
    return {value, error, ok};
}

Regime select_regime(double r, const BathSpec& bath) {
    if (!bath.ohmic()) return Regime::Quadrature;
    if (r == 0.0) return Regime::ZeroDistanceExact;
    if (r >= finite_distance_factor / bath.omega_c)
        return Regime::FiniteDistanceExact;
    return Regime::Quadrature;
}

double k_dispatch(double r, double t, const BathSpec& bath) {
    switch (select_regime(r, bath)) {
        case Regime::ZeroDistanceExact:
            return k_zero_exact(t, bath);
        case Regime::FiniteDistanceExact:
            return k_finite_exact(r, t, bath);
        default: {
            QuadratureResult q = k_quadrature(r, t, bath);
            if (!q.converged)
                throw std::runtime_error("k_dispatch: quadrature failed to converge");
            return q.value;
        }
    }
}

double k_time_derivative(double r, double t, const BathSpec& bath) {
    bath.require_ohmic("k_time_derivative");
    if (!(t >= 0.0) || !(r >= 0.0))
        throw std::invalid_argument("k_time_derivative: r, t must be >= 0");
    if (t == 0.0) return 0.0;
    const double alpha = bath.alpha;
    const double W = bath.omega_c;
    const double T = bath.temperature;

    if (r == 0.0) {
        const double vacuum = alpha * t / (t * t + 1.0 / (W * W));
        if (T == 0.0) return vacuum;
        const std::complex<double> z(1.0 + T / W, T * t);
        return vacuum + 2.0 * alpha * T * digamma(z).imag();
    }

    if (T == 0.0) {
        const double gap = std::max(std::abs(t - r), 1e-12 * r);
        return 0.5 * alpha / r * std::log((t + r) / gap);
    }
    const double two_pi_T = 2.0 * pi * T;
    const double gap = std::max(std::abs(t - r), 1e-12 * r);
    const double log_ratio =
        log1m_exp(two_pi_T * (t + r)) - log1m_exp(two_pi_T * gap);
    const double linear =
        (t >= r) ? alpha * pi * T : alpha * pi * T * t / r;
    return linear + 0.5 * alpha / r * log_ratio;
}

}  // namespace spinreg
