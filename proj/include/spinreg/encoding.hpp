// encoding.hpp — hierarchically encoded spin registers: the effective
// decoherence function recursion, decoherence matrices, decoherence
// coefficients, plateau values and crossover times.

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "spinreg/bath.hpp"

namespace spinreg {

// Register geometry: n logical qubits at inter-spin distance a, encoded at
// order chi (chi = 0 is the plain physical register). Each encoding order
// doubles the physical spin count.
struct RegisterSpec {
    int n;
    double a;
    int chi;

    RegisterSpec(int n_, double a_, int chi_) : n(n_), a(a_), chi(chi_) {
        if (n < 1) throw std::invalid_argument("RegisterSpec: n must be >= 1");
        if (!(a > 0.0)) throw std::invalid_argument("RegisterSpec: a must be > 0");
        if (chi < 0) throw std::invalid_argument("RegisterSpec: chi must be >= 0");
    }

    std::int64_t physical_spins() const {
        return static_cast<std::int64_t>(n) << chi;
    }
};

// Logical basis label mu in Z_2^n, stored little-endian (bit l = qubit l).
struct BitString {
    std::uint32_t bits;
    int n;

    BitString(std::uint32_t bits_, int n_) : bits(bits_), n(n_) {
        if (n < 1 || n > 30) throw std::invalid_argument("BitString: n out of range");
        if (bits >> n) throw std::invalid_argument("BitString: bits exceed n");
    }

    int bit(int l) const { return static_cast<int>((bits >> l) & 1u); }
    BitString flipped() const {
        return BitString(~bits & ((1u << n) - 1u), n);
    }
};

// Symmetric Toeplitz matrix K_{lm} = K_{|l-m|}(t) at a fixed time, positive
// semidefinite up to -1e-10 * ||K|| on the smallest eigenvalue.
class DecoherenceMatrix {
  public:
    DecoherenceMatrix(Eigen::MatrixXd entries, double time);

    const Eigen::MatrixXd& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.rows()); }
    double time() const { return time_; }
    double diagonal() const { return entries_(0, 0); }

  private:
    Eigen::MatrixXd entries_;
    double time_;
};

// Effective decoherence function K_l^chi(t):
//   K_l^chi = 2 K_{2l}^{chi-1} - K_{|2l-1|}^{chi-1} - K_{2l+1}^{chi-1},
//   K_l^0 = K(l a, t).
double effective_k(int chi, int offset, double t, double a, const BathSpec& bath);

// All offsets 0..max_offset of K^chi at once (one bottom-up sweep; this is
// the memoized form of the recursion, O(2^chi * max_offset) kernel calls).
std::vector<double> effective_k_row(int chi, int max_offset, double t, double a,
                                    const BathSpec& bath);

// n x n matrix with entries K^chi_{|l-m|}(t).
DecoherenceMatrix decoherence_matrix(const RegisterSpec& reg, const BathSpec& bath,
                                     double t);

// D_{mu nu} = sum_{lm} (mu_l - nu_l)(mu_m - nu_m) K_{lm} = v' K v.
double decoherence_coefficient(const BitString& mu, const BitString& nu,
                               const DecoherenceMatrix& K);

// t -> infinity plateau of K_0^chi(t), evaluated at t = 50 max(a, 1/T) and
// doubled until the relative change drops below 1e-6 (capped at 12 doublings).
double effective_k_plateau(int chi, double a, const BathSpec& bath);

// Plateau of K_0^1(t): the high-T closed form for Ta >= 10, the low-T form
// 2 alpha ln(Omega a / e) for Ta <= 0.1, numeric evaluation in between.
double k1_asymptote(double a, const BathSpec& bath);

// Time at which K_0^1(t) = K(0,t), by bisection on the exact expressions over
// [1e-3 a, 1e3 max(a, 1/T)]. Throws std::runtime_error when the window does
// not bracket a crossing.
double crossover_time(double a, const BathSpec& bath);

}  // namespace spinreg
