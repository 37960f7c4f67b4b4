#include "spinreg/fidelity.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "spinreg/rng.hpp"

namespace spinreg {

namespace {

int thread_count_from_env() {
    const char* env = std::getenv("SPINREG_THREADS");
    if (!env) return 1;
    const long value = std::strtol(env, nullptr, 10);
    if (value < 1) return 1;
    return static_cast<int>(std::min<long>(value, 64));
}

double log_single_qubit_factor(double kappa) {
    // ln((1 + e^{-kappa}) / 2) without cancellation for small kappa.
    return std::log1p(0.5 * std::expm1(-kappa));
}

}  // namespace

FidelityEstimate fidelity_exact_sum(const DecoherenceMatrix& K) {
    const int n = K.size();
    if (n > 14) throw std::invalid_argument("fidelity_exact_sum: n > 14");
    const Eigen::MatrixXd& k = K.entries();
    const std::uint32_t states = 1u << n;
    // Global bit-flip symmetry D_{~mu ~nu} = D_{mu nu}: restrict mu to the
    // half with top bit clear and double the sum.
    const std::uint32_t mu_half = states >> 1;

    double total = 0.0;
    double compensation = 0.0;
    std::vector<double> v(n), s(n);
    for (std::uint32_t mu = 0; mu < mu_half; ++mu) {
        // Start the Gray walk at nu = 0: v = bits(mu), s = K v, D = v'Kv.
        for (int l = 0; l < n; ++l) v[l] = static_cast<double>((mu >> l) & 1u);
        double d = 0.0;
        for (int l = 0; l < n; ++l) {
            double acc = 0.0;
            for (int m = 0; m < n; ++m) acc += k(l, m) * v[m];
            s[l] = acc;
            d += v[l] * acc;
        }
        double row_sum = std::exp(-d);
        for (std::uint32_t i = 1; i < states; ++i) {
            const int j = std::countr_zero(i);
            const std::uint32_t next_gray = i ^ (i >> 1);
            // nu bit j flips; v_j = mu_j - nu_j moves by -1 or +1.
            const double delta = ((next_gray >> j) & 1u) ? -1.0 : 1.0;
            d += k(j, j) + 2.0 * delta * s[j];
            for (int l = 0; l < n; ++l) s[l] += delta * k(l, j);
            v[j] += delta;
            row_sum += std::exp(-d);
        }
        const double y = 2.0 * row_sum - compensation;
        const double t = total + y;
        compensation = (t - total) - y;
        total = t;
    }
    return {total * std::ldexp(1.0, -2 * n), 0.0, FidelityMethod::ExactSum};
}

FidelityEstimate fidelity_mc(const DecoherenceMatrix& K, const McConfig& cfg) {
    if (cfg.samples < 1) throw std::invalid_argument("fidelity_mc: samples must be >= 1");
    const int n = K.size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(K.entries());
    const Eigen::VectorXd& eigs = solver.eigenvalues();
    const double norm = std::max(eigs.cwiseAbs().maxCoeff(), 1e-300);
    if (eigs.minCoeff() < -1e-8 * norm)
        throw std::runtime_error("fidelity_mc: decoherence matrix is indefinite");

    // Columns scaled to map standard normals to N(0, K/2).
    Eigen::MatrixXd transform = solver.eigenvectors();
    for (int i = 0; i < n; ++i) {
        const double lambda = eigs(i) < 0.0 ? cfg.eigen_clamp : eigs(i);
        transform.col(i) *= std::sqrt(0.5 * lambda);
    }

    constexpr std::int64_t block_size = 8192;
    const std::int64_t blocks = (cfg.samples + block_size - 1) / block_size;
    std::vector<double> block_sum(blocks, 0.0), block_sq(blocks, 0.0);

    auto run_block = [&](std::int64_t b) {
        Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(b));
        const std::int64_t count =
            std::min(block_size, cfg.samples - b * block_size);
        Eigen::VectorXd z(n), x(n);
        double sum = 0.0, sq = 0.0;
        for (std::int64_t i = 0; i < count; ++i) {
            for (int l = 0; l < n; ++l) z(l) = rng.normal();
            x.noalias() = transform * z;
            double f = 1.0;
            for (int l = 0; l < n; ++l) {
                const double c = std::cos(x(l));
                f *= c * c;
            }
            sum += f;
            sq += f * f;
        }
        block_sum[b] = sum;
        block_sq[b] = sq;
    };

    const int threads = std::min<std::int64_t>(thread_count_from_env(), blocks);
    if (threads <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (std::int64_t b = w; b < blocks; b += threads) run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    // Fixed-order reduction keeps parallel and serial runs bit-identical.
    double sum = 0.0, sq = 0.0;
    for (std::int64_t b = 0; b < blocks; ++b) {
        sum += block_sum[b];
        sq += block_sq[b];
    }
    const double count = static_cast<double>(cfg.samples);
    const double mean = sum / count;
    double std_error = 0.0;
    if (cfg.samples > 1) {
        const double var = std::max(0.0, (sq - count * mean * mean) / (count - 1.0));
        std_error = std::sqrt(var / count);
    }
    return {mean, std_error, FidelityMethod::MonteCarlo};
}

FidelityEstimate fidelity_weak_coupling(const DecoherenceMatrix& K) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(K.entries(),
                                                          Eigen::EigenvaluesOnly);
    double log_det = 0.0;
    for (int i = 0; i < K.size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda <= -1.0)
            throw std::runtime_error("fidelity_weak_coupling: 1 + K is singular");
        log_det += std::log1p(lambda);
    }
    return {std::exp(-0.5 * log_det), 0.0, FidelityMethod::WeakCoupling};
}

FidelityEstimate fidelity_small_deviation(const DecoherenceMatrix& K) {
    return {1.0 - 0.5 * K.size() * K.diagonal(), 0.0, FidelityMethod::SmallDeviation};
}

FidelityEstimate fidelity_independent(int n, double kappa) {
    if (n < 1) throw std::invalid_argument("fidelity_independent: n must be >= 1");
    if (!(kappa >= 0.0))
        throw std::invalid_argument("fidelity_independent: kappa must be >= 0");
    return {std::exp(n * log_single_qubit_factor(kappa)), 0.0,
            FidelityMethod::ClosedForm};
}

FidelityEstimate fidelity_symmetric(int n, double kappa) {
    if (n < 1) throw std::invalid_argument("fidelity_symmetric: n must be >= 1");
    if (!(kappa >= 0.0))
        throw std::invalid_argument("fidelity_symmetric: kappa must be >= 0");
    const double two_n = 2.0 * n;
    const double log_norm = two_n * std::log(2.0);
    const double lg_total = std::lgamma(two_n + 1.0);
    double sum = 0.0;
    // Terms are symmetric about l = n; sum the wings once with weight 2.
    for (int l = 0; l < n; ++l) {
        const double log_binom =
            lg_total - std::lgamma(l + 1.0) - std::lgamma(two_n - l + 1.0);
        const double excess = static_cast<double>(n - l);
        sum += 2.0 * std::exp(log_binom - log_norm - kappa * excess * excess);
    }
    const double log_center =
        lg_total - 2.0 * std::lgamma(n + 1.0) - log_norm;
    sum += std::exp(log_center);
    return {sum, 0.0, FidelityMethod::ClosedForm};
}

double fidelity_symmetric_large_n(int n, double kappa) {
    return 1.0 / std::sqrt(1.0 + n * kappa);
}

FidelityEstimate fidelity_encoded_asymptote(int n, double gamma_a) {
    if (!(gamma_a >= 0.0))
        throw std::invalid_argument("fidelity_encoded_asymptote: gamma a must be >= 0");
    FidelityEstimate f = fidelity_independent(n, gamma_a);
    f.method = FidelityMethod::ClosedForm;
    return f;
}

}  // namespace spinreg
