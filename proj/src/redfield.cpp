#include "spinreg/redfield.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "spinreg/kernel.hpp"
#include "spinreg/ode.hpp"
#include "spinreg/quadrature.hpp"
#include "spinreg/special_functions.hpp"

namespace spinreg {

namespace {

using Eigen::Matrix4cd;
using std::complex;

// Basis index 2*b0 + b1 for |b0 b1>; |0> ground, |1> excited.
Matrix4cd make_raise(int spin) {
    Matrix4cd m = Matrix4cd::Zero();
    if (spin == 0) {
        m(2, 0) = 1.0;
        m(3, 1) = 1.0;
    } else {
        m(1, 0) = 1.0;
        m(3, 2) = 1.0;
    }
    return m;
}

Matrix4cd make_pauli_z(int spin) {
    Matrix4cd m = Matrix4cd::Zero();
    for (int idx = 0; idx < 4; ++idx) {
        const int bit = (spin == 0) ? (idx >> 1) : (idx & 1);
        m(idx, idx) = bit ? -1.0 : 1.0;
    }
    return m;
}

const Matrix4cd kRaise[2] = {make_raise(0), make_raise(1)};
const Matrix4cd kLower[2] = {make_raise(0).adjoint(), make_raise(1).adjoint()};
const Matrix4cd kPauliZ[2] = {make_pauli_z(0), make_pauli_z(1)};

double one_minus_sinc(double p) {
    const double ap = std::abs(p);
    if (ap < 1e-4) {
        const double p2 = p * p;
        return p2 / 6.0 * (1.0 - p2 / 20.0 * (1.0 - p2 / 42.0));
    }
    return 1.0 - std::sin(p) / p;
}

double state_norm(const Matrix4cd& m) { return m.cwiseAbs().maxCoeff(); }

// Dephasing generator: sum_{m,l} C'(r_lm, t) (Z_m rho Z_l - Z_l Z_m rho) + h.c.
Matrix4cd dephasing_rhs(const Matrix4cd& rho, double t, const SpinPairSpec& spec) {
    const double c_same = 0.25 * k_time_derivative(0.0, t, spec.bath);
    const double c_cross = 0.25 * k_time_derivative(spec.a, t, spec.bath);
    Matrix4cd m = Matrix4cd::Zero();
    for (int l = 0; l < 2; ++l)
        for (int mm = 0; mm < 2; ++mm) {
            const double c = (l == mm) ? c_same : c_cross;
            m.noalias() += c * (kPauliZ[mm] * rho * kPauliZ[l] -
                                kPauliZ[l] * kPauliZ[mm] * rho);
        }
    return m + m.adjoint().eval();
}

// cone_side: -1 before the light cone, +1 past it, 0 decide from t. The
// evolve driver never lets an integration segment span t = a, so pinning the
// side keeps every Runge-Kutta stage (including the ones landing exactly on
// the kink) on a smooth generator.
Matrix4cd dissipative_rhs_impl(const Matrix4cd& rho, double t,
                               const SpinPairSpec& spec,
                               const EvolveOptions& options, int cone_side = 0) {
    complex<double> c_minus[2][2], c_plus[2][2];
    if (options.exact_correlators) {
        const complex<double> cm0 = correlator_exact(-1, 0.0, t, spec);
        const complex<double> cp0 = correlator_exact(+1, 0.0, t, spec);
        const complex<double> cma = correlator_exact(-1, spec.a, t, spec);
        const complex<double> cpa = correlator_exact(+1, spec.a, t, spec);
        for (int l = 0; l < 2; ++l)
            for (int mm = 0; mm < 2; ++mm) {
                c_minus[l][mm] = (l == mm) ? cm0 : cma;
                c_plus[l][mm] = (l == mm) ? cp0 : cpa;
            }
    } else {
        const CorrelatorPair same = correlator_pm(0.0, t, spec);
        const bool past_cone = cone_side > 0 || (cone_side == 0 && t > spec.a);
        CorrelatorPair cross{0.0, 0.0};
        if (past_cone) {
            const double factor =
                1.0 - one_minus_sinc(spec.epsilon * spec.a);
            cross = {factor * same.c_minus, factor * same.c_plus};
        }
        for (int l = 0; l < 2; ++l)
            for (int mm = 0; mm < 2; ++mm) {
                c_minus[l][mm] = (l == mm) ? same.c_minus : cross.c_minus;
                c_plus[l][mm] = (l == mm) ? same.c_plus : cross.c_plus;
            }
    }
    if (!options.include_imaginary) {
        for (int l = 0; l < 2; ++l)
            for (int mm = 0; mm < 2; ++mm) {
                c_minus[l][mm] = c_minus[l][mm].real();
                c_plus[l][mm] = c_plus[l][mm].real();
            }
    }

    Matrix4cd m = Matrix4cd::Zero();
    for (int l = 0; l < 2; ++l)
        for (int mm = 0; mm < 2; ++mm) {
            m.noalias() += c_minus[l][mm] *
                           (kRaise[mm] * rho * kLower[l] -
                            kLower[l] * kRaise[mm] * rho);
            m.noalias() += c_plus[l][mm] *
                           (kLower[mm] * rho * kRaise[l] -
                            kRaise[l] * kLower[mm] * rho);
        }
    return m + m.adjoint().eval();
}

// Tail of an oscillatory frequency integral: trig argument (w s + phi).
quad::Outcome trig_tail(const quad::Fn& f, double s, double phi, bool cosine,
                        double x0, double x_max, double tol) {
    if (!(x_max > x0)) return {};
    if (!(s > 0.0) || s * (x_max - x0) < 12.0 * pi) {
        std::vector<double> bp;
        for (double w = x0; w < x_max; w *= 2.0) bp.push_back(w);
        bp.push_back(x_max);
        if (s > 0.0)
            for (double z = (std::ceil((x0 * s + phi) / pi) * pi - phi) / s;
                 z < x_max; z += pi / s)
                if (z > x0) bp.push_back(z);
        return quad::adaptive(f, bp, tol, 0.0, 4000);
    }
    const double phase = (cosine ? 0.5 : 0.0) - phi / pi;
    return quad::alternating_tail(f, s, phase, x0, x_max, tol);
}

}  // namespace

TwoSpinState::TwoSpinState(const Eigen::Matrix4cd& rho_) : rho(rho_) { validate(); }

void TwoSpinState::validate() const {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("TwoSpinState: not Hermitian");
    if (std::abs(rho.trace() - complex<double>(1.0, 0.0)) > 1e-10)
        throw std::invalid_argument("TwoSpinState: trace != 1");
    Eigen::SelfAdjointEigenSolver<Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-8)
        throw std::invalid_argument("TwoSpinState: negative eigenvalue");
}

double bose_occupation(double epsilon, double temperature) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("bose_occupation: epsilon must be > 0");
    if (!(temperature >= 0.0))
        throw std::invalid_argument("bose_occupation: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(epsilon / temperature);
}

CorrelatorPair correlator_pm(double r, double t, const SpinPairSpec& spec) {
    if (!(r >= 0.0) || !(t >= 0.0))
        throw std::invalid_argument("correlator_pm: r, t must be >= 0");
    const double n = bose_occupation(spec.epsilon, spec.bath.temperature);
    const double base = spec.bath.alpha * pi;
    double factor = 1.0;
    if (r > 0.0) {
        const double p = spec.epsilon * r;
        factor = (t > r) ? (1.0 - one_minus_sinc(p)) : 0.0;
    }
    return {factor * base * n, factor * base * (n + 1.0)};
}

std::complex<double> correlator_exact(int sign, double r, double t,
                                      const SpinPairSpec& spec) {
    const BathSpec& bath = spec.bath;
    bath.require_ohmic("correlator_exact");
    if (!(t >= 0.0) || !(r >= 0.0))
        throw std::invalid_argument("correlator_exact: r, t must be >= 0");
    if (t == 0.0) return 0.0;

    const double e0 = (sign >= 0 ? 1.0 : -1.0) * spec.epsilon;
    const double alpha = bath.alpha;
    const double W = bath.omega_c;
    const double T = bath.temperature;
    const double abs_e = std::abs(e0);

    auto n_bose = [&](double w) { return T > 0.0 ? 1.0 / std::expm1(w / T) : 0.0; };
    auto coupling = [&](double w) { return alpha * w * std::exp(-w / W); };
    auto spatial = [&](double w) { return r > 0.0 ? std::sin(w * r) / (w * r) : 1.0; };
    // E(mu) = (e^{i mu t} - 1) / (i mu): entire, so the w = |e0| point is benign.
    auto re_E = [&](double mu) {
        return (std::abs(mu) * t < 1e-8) ? t : std::sin(mu * t) / mu;
    };
    auto im_E = [&](double mu) {
        if (std::abs(mu) * t < 1e-8) return 0.5 * mu * t * t;
        const double h = std::sin(0.5 * mu * t);
        return 2.0 * h * h / mu;
    };

    const double x_head = std::min(
        std::max(2.0 * abs_e, abs_e + 4.0 * std::max(T, 1.0 / t)), 40.0 * W);
    const double w_max = 40.0 * W + x_head;
    const double tol = 1e-9 * alpha * std::max(1.0, n_bose(abs_e) + 1.0);

    // Head: both E terms combined, panels at every oscillation zero.
    std::vector<double> bp = {0.0, x_head};
    if (abs_e < x_head) bp.push_back(abs_e);
    if (T > 0.0 && T < x_head) bp.push_back(T);
    auto push_offset_zeros = [&](double offset) {
        for (double z = offset + pi / t * std::ceil((0.0 - offset) * t / pi);
             z < x_head; z += pi / t)
            if (z > 0.0) bp.push_back(z);
    };
    push_offset_zeros(e0);
    push_offset_zeros(-e0);
    if (r > 0.0)
        for (double z = pi / r; z < x_head; z += pi / r) bp.push_back(z);

    auto head_re = [&](double w) {
        if (w <= 0.0) return 2.0 * alpha * T * re_E(e0);
        return coupling(w) * spatial(w) *
               (n_bose(w) * re_E(e0 + w) + (n_bose(w) + 1.0) * re_E(e0 - w));
    };
    auto head_im = [&](double w) {
        if (w <= 0.0) return 2.0 * alpha * T * im_E(e0);
        return coupling(w) * spatial(w) *
               (n_bose(w) * im_E(e0 + w) + (n_bose(w) + 1.0) * im_E(e0 - w));
    };
    quad::Outcome re_part = quad::adaptive(head_re, bp, tol, 1e-10, 40000);
    quad::Outcome im_part = quad::adaptive(head_im, bp, tol, 1e-10, 40000);

    // Tail w > x_head: decompose into single-frequency trig families.
    if (x_head < w_max) {
        auto add = [&](quad::Fn f, double s, double phi, bool cosine, bool to_re) {
            quad::Outcome o = trig_tail(f, s, phi, cosine, x_head, w_max, tol);
            (to_re ? re_part : im_part).value += o.value;
            (to_re ? re_part : im_part).abs_error += o.abs_error;
        };
        // Weights of the two E terms; denominators are sign-definite past x_head.
        auto wplus = [&](double w) { return coupling(w) * n_bose(w) / (w + e0); };
        auto wminus = [&](double w) {
            return coupling(w) * (n_bose(w) + 1.0) / (e0 - w);
        };
        if (r == 0.0) {
            add([&](double w) { return wplus(w) * std::sin((w + e0) * t); },
                t, e0 * t, false, true);
            add([&](double w) { return wminus(w) * std::sin((e0 - w) * t); },
                t, -e0 * t, false, true);
            // Im: the 1/(w +- e0) parts decay smoothly, the cos parts alternate.
            add([&](double w) { return wplus(w) + wminus(w); }, 0.0, 0.0, false,
                false);
            add([&](double w) { return -wplus(w) * std::cos((w + e0) * t); },
                t, e0 * t, true, false);
            add([&](double w) { return -wminus(w) * std::cos((e0 - w) * t); },
                t, -e0 * t, true, false);
        } else {
            // Product-to-sum against sin(wr)/(wr): frequencies |t-r| and t+r.
            const double sm = t - r;  // cos is even, sin is odd in (w sm + c)
            for (int term = 0; term < 2; ++term) {
                const bool plus_term = (term == 0);
                auto wf = plus_term
                              ? quad::Fn([&](double w) { return wplus(w); })
                              : quad::Fn([&](double w) { return wminus(w); });
                const double c = plus_term ? e0 * t : -e0 * t;
                // sin((e0 - w) t) = -sin(w t + c): the Re pattern flips sign.
                const double sign_sm = plus_term ? 1.0 : -1.0;
                const double phi_sm = (sm >= 0.0) ? c : -c;
                add([=](double w) {
                        return sign_sm * wf(w) / (2.0 * w * r) * std::cos(w * sm + c);
                    },
                    std::abs(sm), phi_sm, true, true);
                add([=](double w) {
                        return -sign_sm * wf(w) / (2.0 * w * r) *
                               std::cos(w * (t + r) + c);
                    },
                    t + r, c, true, true);
                // Im: bare sinc family plus the two modulated sine families.
                add([=](double w) { return wf(w) * std::sin(w * r) / (w * r); },
                    r, 0.0, false, false);
                add([=](double w) {
                        return -0.5 * wf(w) / (w * r) * std::sin(w * (t + r) + c);
                    },
                    t + r, c, false, false);
                add([=](double w) {
                        return 0.5 * wf(w) / (w * r) * std::sin(w * sm + c);
                    },
                    std::abs(sm), phi_sm, false, false);
            }
        }
    }
    return {re_part.value, im_part.value};
}

Eigen::Matrix4cd redfield_rhs_dissipative(const TwoSpinState& state, double t,
                                          const SpinPairSpec& spec) {
    return dissipative_rhs_impl(state.rho, t, spec, EvolveOptions{});
}

std::vector<TwoSpinState> evolve(const TwoSpinState& rho0,
                                 const std::vector<double>& t_grid,
                                 const SpinPairSpec& spec, EvolveModel model,
                                 const EvolveOptions& options) {
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw std::invalid_argument("evolve: grid must start at t = 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("evolve: grid must be strictly ascending");
    rho0.validate();

    auto make_rhs = [&](int cone_side) {
        return [&, cone_side](double t, const Matrix4cd& rho) -> Matrix4cd {
            if (model == EvolveModel::Dephasing) return dephasing_rhs(rho, t, spec);
            return dissipative_rhs_impl(rho, t, spec, options, cone_side);
        };
    };
    auto segment_side = [&](double lo, double hi) {
        return lo >= spec.a ? +1 : (hi <= spec.a ? -1 : 0);
    };

    OdeOptions ode;
    ode.rel_tol = options.rel_tol;
    ode.abs_tol = options.abs_tol;

    std::vector<TwoSpinState> out;
    out.reserve(t_grid.size());
    out.push_back(rho0);

    Matrix4cd rho = rho0.rho;
    double t_now = 0.0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        double target = t_grid[i];
        // Mandatory mesh point at the light-cone kink t = a.
        if (t_now < spec.a && spec.a < target) {
            rho = integrate_dp45(rho, t_now, spec.a, make_rhs(-1), state_norm, ode);
            t_now = spec.a;
        }
        rho = integrate_dp45(rho, t_now, target,
                             make_rhs(segment_side(t_now, target)), state_norm,
                             ode);
        t_now = target;

        const double trace_drift = std::abs(rho.trace() - complex<double>(1.0, 0.0));
        if (trace_drift > 1e-8)
            throw std::runtime_error("evolve: trace drift exceeds 1e-8");
        Eigen::SelfAdjointEigenSolver<Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
        const double min_eig = solver.eigenvalues().minCoeff();
        if (min_eig < -1e-6)
            throw std::runtime_error(
                "evolve: state eigenvalue " + std::to_string(min_eig) +
                " below -1e-6 at t = " + std::to_string(t_now) +
                " (master-equation validity lost)");
        TwoSpinState snapshot{rho};
        out.push_back(snapshot);
    }
    return out;
}

std::vector<double> subspace_fidelity(const std::vector<TwoSpinState>& states) {
    Eigen::Vector4cd psi0 = Eigen::Vector4cd::Zero();
    psi0(1) = 1.0 / std::sqrt(2.0);
    psi0(2) = -1.0 / std::sqrt(2.0);
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states)
        out.push_back((psi0.adjoint() * s.rho * psi0)(0, 0).real());
    return out;
}

RatePair asymptotic_rate(const SpinPairSpec& spec) {
    const double n = bose_occupation(spec.epsilon, spec.bath.temperature);
    const double gamma0 = 2.0 * pi * spec.bath.alpha * (n + 0.5);
    const double gamma1 = 2.0 * one_minus_sinc(spec.epsilon * spec.a) * gamma0;
    return {gamma0, gamma1};
}

RateFit rate_from_trajectory(std::span<const double> times,
                             std::span<const double> fidelities) {
    if (times.size() != fidelities.size())
        throw std::invalid_argument("rate_from_trajectory: size mismatch");
    if (times.size() < 10)
        throw std::invalid_argument("rate_from_trajectory: window too short");
    const std::size_t m = times.size();
    double t_mean = 0.0, y_mean = 0.0;
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(fidelities[i] > 0.0))
            throw std::invalid_argument("rate_from_trajectory: non-positive fidelity");
        y[i] = std::log(fidelities[i]);
        t_mean += times[i];
        y_mean += y[i];
    }
    t_mean /= static_cast<double>(m);
    y_mean /= static_cast<double>(m);
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        cov += (times[i] - t_mean) * (y[i] - y_mean);
        var += (times[i] - t_mean) * (times[i] - t_mean);
    }
    if (!(var > 0.0))
        throw std::invalid_argument("rate_from_trajectory: degenerate time window");
    const double slope = cov / var;
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double fit = y_mean + slope * (times[i] - t_mean);
        ss += (y[i] - fit) * (y[i] - fit);
    }
    return {-slope, std::sqrt(ss / static_cast<double>(m))};
}

}  // namespace spinreg
