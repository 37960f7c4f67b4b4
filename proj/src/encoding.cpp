#include "spinreg/encoding.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinreg/kernel.hpp"
#include "spinreg/special_functions.hpp"

namespace spinreg {

DecoherenceMatrix::DecoherenceMatrix(Eigen::MatrixXd entries, double time)
    : entries_(std::move(entries)), time_(time) {
    const auto n = entries_.rows();
    if (n < 1 || entries_.cols() != n)
        throw std::invalid_argument("DecoherenceMatrix: matrix must be square");
    const double scale = std::max(entries_.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index l = 0; l < n; ++l)
        for (Eigen::Index m = 0; m <= l; ++m) {
            if (std::abs(entries_(l, m) - entries_(m, l)) > 1e-12 * scale)
                throw std::invalid_argument("DecoherenceMatrix: not symmetric");
            // Toeplitz: the entry depends only on |l - m|.
            if (l > 0 && m > 0 &&
                std::abs(entries_(l, m) - entries_(l - 1, m - 1)) > 1e-10 * scale)
                throw std::invalid_argument("DecoherenceMatrix: not Toeplitz");
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries_,
                                                          Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    const double norm = solver.eigenvalues().cwiseAbs().maxCoeff();
    if (min_eig < -1e-10 * std::max(norm, 1e-300))
        throw std::invalid_argument(
            "DecoherenceMatrix: not positive semidefinite within tolerance");
}

std::vector<double> effective_k_row(int chi, int max_offset, double t, double a,
                                    const BathSpec& bath) {
    if (chi < 0 || max_offset < 0)
        throw std::invalid_argument("effective_k_row: chi and offset must be >= 0");
    // Offsets needed at level j, descending: need(j-1) = 2 need(j) + 1.
    std::vector<std::int64_t> need(static_cast<std::size_t>(chi) + 1);
    need[chi] = max_offset;
    for (int j = chi; j > 0; --j) need[j - 1] = 2 * need[j] + 1;

    std::vector<double> level(static_cast<std::size_t>(need[0]) + 1);
    for (std::int64_t l = 0; l <= need[0]; ++l)
        level[static_cast<std::size_t>(l)] =
            k_dispatch(static_cast<double>(l) * a, t, bath);

    for (int j = 1; j <= chi; ++j) {
        std::vector<double> next(static_cast<std::size_t>(need[j]) + 1);
        for (std::int64_t l = 0; l <= need[j]; ++l)
            next[static_cast<std::size_t>(l)] =
                2.0 * level[static_cast<std::size_t>(2 * l)] -
                level[static_cast<std::size_t>(std::abs(2 * l - 1))] -
                level[static_cast<std::size_t>(2 * l + 1)];
        level = std::move(next);
    }
    return level;
}

double effective_k(int chi, int offset, double t, double a, const BathSpec& bath) {
    return effective_k_row(chi, offset, t, a, bath).back();
}

DecoherenceMatrix decoherence_matrix(const RegisterSpec& reg, const BathSpec& bath,
                                     double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("decoherence_matrix: t must be >= 0");
    const std::vector<double> row = effective_k_row(reg.chi, reg.n - 1, t, reg.a, bath);
    Eigen::MatrixXd K(reg.n, reg.n);
    for (int l = 0; l < reg.n; ++l)
        for (int m = 0; m < reg.n; ++m) K(l, m) = row[static_cast<std::size_t>(std::abs(l - m))];
    return DecoherenceMatrix(std::move(K), t);
}

double decoherence_coefficient(const BitString& mu, const BitString& nu,
                               const DecoherenceMatrix& K) {
    if (mu.n != nu.n || mu.n != K.size())
        throw std::invalid_argument("decoherence_coefficient: dimension mismatch");
    const int n = mu.n;
    double d = 0.0;
    for (int l = 0; l < n; ++l) {
        const int vl = mu.bit(l) - nu.bit(l);
        if (vl == 0) continue;
        for (int m = 0; m < n; ++m) {
            const int vm = mu.bit(m) - nu.bit(m);
            if (vm == 0) continue;
            d += static_cast<double>(vl * vm) * K.entries()(l, m);
        }
    }
    return d;
}

double effective_k_plateau(int chi, double a, const BathSpec& bath) {
    const double T = bath.temperature;
    double t = 50.0 * ((T > 0.0) ? std::max(a, 1.0 / T) : a);
    double value = effective_k(chi, 0, t, a, bath);
    for (int pass = 0; pass < 12; ++pass) {
        t *= 2.0;
        const double next = effective_k(chi, 0, t, a, bath);
        const double change = std::abs(next - value);
        value = next;
        if (change <= 1e-6 * std::abs(value)) break;
    }
    return value;
}

double k1_asymptote(double a, const BathSpec& bath) {
    if (!(a > 0.0)) throw std::invalid_argument("k1_asymptote: a must be > 0");
    const double Ta = bath.temperature * a;
    const double alpha = bath.alpha;
    if (Ta >= 10.0)
        return alpha * pi * bath.temperature * a +
               2.0 * alpha * std::log(bath.omega_c / (2.0 * pi * bath.temperature));
    if (Ta <= 0.1) return 2.0 * alpha * (std::log(bath.omega_c * a) - 1.0);
    return effective_k_plateau(1, a, bath);
}

double crossover_time(double a, const BathSpec& bath) {
    if (!(a > 0.0)) throw std::invalid_argument("crossover_time: a must be > 0");
    // K_0^1(t) - K(0,t) = K(0,t) - 2 K(a,t); positive before the crossover.
    auto gap = [&](double t) {
        return k_zero_exact(t, bath) - 2.0 * k_dispatch(a, t, bath);
    };
    const double T = bath.temperature;
    double lo = 1e-3 * a;
    double hi = 1e3 * ((T > 0.0) ? std::max(a, 1.0 / T) : a);
    if (!(gap(lo) > 0.0) || !(gap(hi) < 0.0))
        throw std::runtime_error("crossover_time: no sign change in search window");
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace spinreg
