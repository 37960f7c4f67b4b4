// fidelity.hpp — Haar-averaged register fidelity from a decoherence matrix
// via the exact bit-string sum, the Gaussian Monte Carlo integral, the
// weak-coupling determinant and the small-deviation linearization, plus the
// closed forms for independent and symmetrically coupled qubits.

#pragma once

#include <cstdint>

#include "spinreg/encoding.hpp"

namespace spinreg {

enum class FidelityMethod {
    ExactSum,
    MonteCarlo,
    WeakCoupling,
    SmallDeviation,
    ClosedForm,
};

struct FidelityEstimate {
    double value;
    double std_error;  // zero for deterministic routes
    FidelityMethod method;
};

struct McConfig {
    std::int64_t samples = 100000;
    std::uint64_t seed = 0;
    double eigen_clamp = 0.0;  // variance assigned to clamped negative modes

    McConfig() = default;
    McConfig(std::int64_t samples_, std::uint64_t seed_, double clamp = 0.0)
        : samples(samples_), seed(seed_), eigen_clamp(clamp) {
        if (samples < 1) throw std::invalid_argument("McConfig: samples must be >= 1");
        if (!(eigen_clamp >= 0.0))
            throw std::invalid_argument("McConfig: eigen_clamp must be >= 0");
    }
};

// F = 4^{-n} sum_{mu nu} exp(-D_{mu nu}), exact. Exploits D_{mu nu} = D_{nu mu},
// D_{mu mu} = 0 and the global bit-flip symmetry. Throws for n > 14.
FidelityEstimate fidelity_exact_sum(const DecoherenceMatrix& K);

// Monte Carlo estimate of E[prod_l cos^2 x_l] for x ~ N(0, K/2), sampled in
// the eigenbasis of K (never inverting K; null directions get zero variance).
// Deterministic for a fixed seed, bit-identical for any thread count.
// Throws if the smallest eigenvalue is below -1e-8 ||K||.
FidelityEstimate fidelity_mc(const DecoherenceMatrix& K, const McConfig& cfg);

// Weak-coupling determinant F = det(1 + K)^{-1/2}; relative error of order
// tr K^2. Throws if any eigenvalue of 1 + K is <= 0.
FidelityEstimate fidelity_weak_coupling(const DecoherenceMatrix& K);

// Leading small-deviation form F = 1 - n K_0(t) / 2.
FidelityEstimate fidelity_small_deviation(const DecoherenceMatrix& K);

// Independent qubits: F = ((1 + e^{-kappa}) / 2)^n, exact.
FidelityEstimate fidelity_independent(int n, double kappa);

// Symmetrically coupled qubits: F = 4^{-n} sum_l binom(2n, l) e^{-kappa (n-l)^2},
// exact (log-space binomials).
FidelityEstimate fidelity_symmetric(int n, double kappa);

// Large-n approximation 1 / sqrt(1 + n kappa) of the symmetric register.
double fidelity_symmetric_large_n(int n, double kappa);

// Saturated fidelity of a first-order encoded register,
// F_1(inf) = ((1 + e^{-gamma a}) / 2)^n.
FidelityEstimate fidelity_encoded_asymptote(int n, double gamma_a);

}  // namespace spinreg
