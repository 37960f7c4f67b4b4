// redfield.hpp — Bloch-Redfield dynamics of two spins coupled to a common
// bosonic bath: the dephasing model (exactly solvable check) and the
// dissipative rotating-wave model, subspace fidelity and decay rates.

#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "spinreg/bath.hpp"

namespace spinreg {

// Two spins with Zeeman splitting epsilon a distance a apart.
// p = epsilon * a is the dimensionless rate-reduction parameter.
struct SpinPairSpec {
    double epsilon;
    double a;
    BathSpec bath;

    SpinPairSpec(double epsilon_, double a_, BathSpec bath_)
        : epsilon(epsilon_), a(a_), bath(std::move(bath_)) {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("SpinPairSpec: epsilon must be > 0");
        if (!(a > 0.0)) throw std::invalid_argument("SpinPairSpec: a must be > 0");
    }
};

// 4x4 density matrix in the computational basis {|00>, |01>, |10>, |11>}
// (bit order: spin 0 first; |0> is the ground level, |1> the excited one).
struct TwoSpinState {
    Eigen::Matrix4cd rho;

    explicit TwoSpinState(const Eigen::Matrix4cd& rho_);

    // Hermitian within 1e-10, unit trace within 1e-10, eigenvalues >= -1e-8.
    void validate() const;
};

// Real parts of the rotating-wave bath correlators C_-(r,t) (absorption) and
// C_+(r,t) (emission); c_plus >= c_minus >= 0 for T >= 0.
struct CorrelatorPair {
    double c_minus;
    double c_plus;
};

// Thermal occupation n(eps) = 1 / (e^{eps/T} - 1); zero at T = 0.
double bose_occupation(double epsilon, double temperature);

// Large-Tt closed forms: C'_-(0,t) = alpha pi n(eps),
// C'_+(0,t) = alpha pi (n(eps) + 1); at r > 0 both carry the factor
// sin(eps r)/(eps r) * theta(t - r).
CorrelatorPair correlator_pm(double r, double t, const SpinPairSpec& spec);

// Full correlator C_{+-}(r,t) = Int_0^t ds e^{+-i eps s} <B(r,s) B(0,0)>
// by direct frequency quadrature; used to validate the closed forms near
// the light-cone time and to probe the imaginary (Lamb-shift-like) parts.
std::complex<double> correlator_exact(int sign, double r, double t,
                                      const SpinPairSpec& spec);

// Right-hand side of the dissipative rotating-wave master equation,
// using the real parts of the correlators. Traceless by construction.
Eigen::Matrix4cd redfield_rhs_dissipative(const TwoSpinState& state, double t,
                                          const SpinPairSpec& spec);

enum class EvolveModel { Dephasing, Dissipative };

struct EvolveOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    bool exact_correlators = false;   // dissipative model: integrate C(r,t)
    bool include_imaginary = false;   // keep Im C (sensitivity analysis)
};

// Integrates rho' = R_t(rho) over the ascending grid (grid[0] must be 0,
// where rho0 is given), with a mandatory mesh point at t = a. Trace is
// preserved to 1e-8; eigenvalues below -1e-6 abort with a diagnostic.
std::vector<TwoSpinState> evolve(const TwoSpinState& rho0,
                                 const std::vector<double>& t_grid,
                                 const SpinPairSpec& spec, EvolveModel model,
                                 const EvolveOptions& options = {});

// F(t) = <psi0| rho(t) |psi0> with |psi0> = (|01> - |10>)/sqrt(2).
std::vector<double> subspace_fidelity(const std::vector<TwoSpinState>& states);

struct RatePair {
    double gamma0;  // single-spin decay rate 2 pi alpha (n(eps) + 1/2)
    double gamma1;  // encoded-pair rate 2 (1 - sin(eps a)/(eps a)) gamma0
};

RatePair asymptotic_rate(const SpinPairSpec& spec);

struct RateFit {
    double rate;      // decay rate: minus the least-squares slope of ln F
    double residual;  // rms residual of the linear fit
};

// Least-squares fit of ln F against t over the supplied samples (the caller
// restricts them to the asymptotic window). Throws for fewer than 10 samples
// or non-positive fidelities.
RateFit rate_from_trajectory(std::span<const double> times,
                             std::span<const double> fidelities);

}  // namespace spinreg
