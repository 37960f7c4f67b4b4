#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spinreg/encoding.hpp"
#include "spinreg/kernel.hpp"
#include "spinreg/redfield.hpp"
#include "spinreg/rng.hpp"
#include "spinreg/special_functions.hpp"

using namespace spinreg;
using Eigen::Matrix4cd;
using Eigen::Vector4cd;

namespace {

Vector4cd antisym_ket() {
    Vector4cd psi = Vector4cd::Zero();
    psi(1) = 1.0 / std::sqrt(2.0);
    psi(2) = -1.0 / std::sqrt(2.0);
    return psi;
}

Vector4cd sym_ket() {
    Vector4cd psi = Vector4cd::Zero();
    psi(1) = 1.0 / std::sqrt(2.0);
    psi(2) = 1.0 / std::sqrt(2.0);
    return psi;
}

TwoSpinState random_state(Rng& rng) {
    Matrix4cd g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = std::complex<double>(rng.normal(), rng.normal());
    Matrix4cd rho = g * g.adjoint();
    rho /= rho.trace();
    return TwoSpinState(rho);
}

// Map a basis index 2 b0 + b1 to the bit-string convention (bit l = spin l).
BitString basis_bits(unsigned idx) {
    return BitString(((idx >> 1) & 1u) | ((idx & 1u) << 1), 2);
}

}  // namespace

TEST_CASE("two-spin state validation") {
    Matrix4cd ok = Matrix4cd::Zero();
    ok(0, 0) = 1.0;
    CHECK_NOTHROW(TwoSpinState{ok});
    Matrix4cd bad_trace = Matrix4cd::Identity();
    CHECK_THROWS_AS(TwoSpinState{bad_trace}, std::invalid_argument);
    Matrix4cd non_hermitian = Matrix4cd::Zero();
    non_hermitian(0, 0) = 1.0;
    non_hermitian(0, 1) = 0.5;
    CHECK_THROWS_AS(TwoSpinState{non_hermitian}, std::invalid_argument);
}

TEST_CASE("bose occupation") {
    CHECK(bose_occupation(1.0, 0.0) == 0.0);
    CHECK(bose_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bose_occupation(5.0, 1.0) ==
          doctest::Approx(1.0 / (std::exp(5.0) - 1.0)).epsilon(1e-14));
    CHECK(bose_occupation(700.0, 1.0) < 1e-300);
}

TEST_CASE("rotating-wave correlators") {
    const BathSpec bath(0.01, 1000.0, 1.0);
    const SpinPairSpec spec(5.0, 0.2, bath);
    // causality: nothing crosses the light cone before t = a
    const CorrelatorPair early = correlator_pm(0.2, 0.1, spec);
    CHECK(early.c_minus == 0.0);
    CHECK(early.c_plus == 0.0);
    // zero distance at T -> 0: only spontaneous emission survives
    const SpinPairSpec cold(5.0, 0.2, BathSpec(0.01, 1000.0, 0.0));
    const CorrelatorPair vac = correlator_pm(0.0, 1.0, cold);
    CHECK(vac.c_minus == 0.0);
    CHECK(vac.c_plus == doctest::Approx(0.01 * pi).epsilon(1e-14));
    // eps a -> 0 restores the zero-distance pair past the cone
    const SpinPairSpec tiny(1e-8, 0.2, bath);
    const CorrelatorPair far = correlator_pm(0.2, 1.0, tiny);
    const CorrelatorPair same = correlator_pm(0.0, 1.0, tiny);
    CHECK(far.c_plus == doctest::Approx(same.c_plus).epsilon(1e-12));
    CHECK(far.c_minus == doctest::Approx(same.c_minus).epsilon(1e-12));
    // emission dominates absorption
    const CorrelatorPair warm = correlator_pm(0.0, 1.0, spec);
    CHECK(warm.c_plus >= warm.c_minus);
    CHECK(warm.c_minus >= 0.0);
}

TEST_CASE("dissipative generator is traceless and kills the T = 0 ground state") {
    Rng rng(31);
    const SpinPairSpec spec(5.0, 0.2, BathSpec(0.01, 1000.0, 1.0));
    for (int trial = 0; trial < 6; ++trial) {
        const TwoSpinState rho = random_state(rng);
        const Matrix4cd dr = redfield_rhs_dissipative(rho, 0.7, spec);
        CHECK(std::abs(dr.trace()) < 1e-12);
        CHECK((dr - dr.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
    const SpinPairSpec cold(5.0, 0.2, BathSpec(0.01, 1000.0, 0.0));
    Matrix4cd ground = Matrix4cd::Zero();
    ground(0, 0) = 1.0;
    CHECK(redfield_rhs_dissipative(TwoSpinState{ground}, 1.0, cold)
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("coincident spins leave the antisymmetric state invariant") {
    const SpinPairSpec spec(5.0, 1e-12, BathSpec(0.01, 1000.0, 1.0));
    const Vector4cd psi = antisym_ket();
    const TwoSpinState dfs{Matrix4cd(psi * psi.adjoint())};
    CHECK(redfield_rhs_dissipative(dfs, 1.0, spec).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("doubly excited state decays at twice the single-spin rate") {
    // t < a keeps only the same-site correlators.
    const SpinPairSpec spec(5.0, 5.0, BathSpec(0.01, 1000.0, 1.0));
    Matrix4cd excited = Matrix4cd::Zero();
    excited(3, 3) = 1.0;
    const Matrix4cd dr = redfield_rhs_dissipative(TwoSpinState{excited}, 1.0, spec);
    const CorrelatorPair c = correlator_pm(0.0, 1.0, spec);
    CHECK(dr(3, 3).real() == doctest::Approx(-4.0 * c.c_plus).epsilon(1e-12));
}

TEST_CASE("dephasing evolution reproduces the closed-form coherences") {
    const BathSpec bath(0.02, 2000.0, 1.5);
    const SpinPairSpec spec(1.0, 0.7, bath);
    Matrix4cd rho0;
    rho0.setConstant(0.25);
    const std::vector<double> grid = {0.0, 0.3, 0.7, 1.4, 3.0};
    const auto states = evolve(TwoSpinState{rho0}, grid, spec, EvolveModel::Dephasing);
    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
        const double t = grid[gi];
        Eigen::MatrixXd Km(2, 2);
        const double k0 = k_zero_exact(t, bath);
        const double ka = k_dispatch(spec.a, t, bath);
        Km << k0, ka, ka, k0;
        const DecoherenceMatrix dm(Km, t);
        for (unsigned mu = 0; mu < 4; ++mu)
            for (unsigned nu = 0; nu < 4; ++nu) {
                const double d =
                    decoherence_coefficient(basis_bits(mu), basis_bits(nu), dm);
                const std::complex<double> expected = 0.25 * std::exp(-d);
                const std::complex<double> got = states[gi].rho(mu, nu);
                CHECK(std::abs(got - expected) / std::abs(expected) < 1e-6);
            }
    }
}

TEST_CASE("trace and hermiticity along a dissipative trajectory") {
    const SpinPairSpec spec(5.0, 0.2, BathSpec(0.01, 1000.0, 1.0));
    const Vector4cd psi = antisym_ket();
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(0.1 * i);
    const auto states = evolve(TwoSpinState{Matrix4cd(psi * psi.adjoint())}, grid,
                               spec, EvolveModel::Dissipative);
    for (const auto& s : states) {
        CHECK(std::abs(s.rho.trace() - std::complex<double>(1.0, 0.0)) <= 1e-8);
        CHECK((s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("nearly coincident spins keep the subspace fidelity at one") {
    const SpinPairSpec spec(5.0, 1e-10, BathSpec(0.01, 1000.0, 1.0));
    const Vector4cd psi = antisym_ket();
    const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0};
    const auto states = evolve(TwoSpinState{Matrix4cd(psi * psi.adjoint())}, grid,
                               spec, EvolveModel::Dissipative);
    for (double f : subspace_fidelity(states)) CHECK(std::abs(f - 1.0) < 1e-9);
}

TEST_CASE("pre-light-cone dynamics is independent of the spin distance") {
    const BathSpec bath(0.01, 1000.0, 1.0);
    const Vector4cd psi = antisym_ket();
    const TwoSpinState rho0{Matrix4cd(psi * psi.adjoint())};
    std::vector<double> grid;
    for (int i = 0; i <= 16; ++i) grid.push_back(0.09 * i / 16.0);
    const auto f_a = subspace_fidelity(
        evolve(rho0, grid, SpinPairSpec(5.0, 0.1, bath), EvolveModel::Dissipative));
    const auto f_2a = subspace_fidelity(
        evolve(rho0, grid, SpinPairSpec(5.0, 0.2, bath), EvolveModel::Dissipative));
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(f_a[i] - f_2a[i]) < 1e-9);
}

TEST_CASE("symmetric state decays faster than the antisymmetric one") {
    const SpinPairSpec spec(5.0, 0.2, BathSpec(0.01, 1000.0, 1.0));
    std::vector<double> grid;
    for (int i = 0; i <= 30; ++i) grid.push_back(0.2 + 0.15 * i);
    grid.insert(grid.begin(), 0.0);
    const Vector4cd anti = antisym_ket();
    const Vector4cd sym = sym_ket();
    const auto f_anti = subspace_fidelity(evolve(
        TwoSpinState{Matrix4cd(anti * anti.adjoint())}, grid, spec,
        EvolveModel::Dissipative));
    const auto sym_states = evolve(TwoSpinState{Matrix4cd(sym * sym.adjoint())},
                                   grid, spec, EvolveModel::Dissipative);
    // Before the light cone only same-site terms act and the two states decay
    // identically; the separation opens up for t > a.
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= spec.a + 1e-12) continue;
        const double f_sym =
            (sym.adjoint() * sym_states[i].rho * sym)(0, 0).real();
        CHECK(f_anti[i] > f_sym);
    }
}

TEST_CASE("subspace fidelity projections") {
    const Vector4cd psi = antisym_ket();
    std::vector<TwoSpinState> states;
    states.emplace_back(Matrix4cd(psi * psi.adjoint()));
    Matrix4cd ground = Matrix4cd::Zero();
    ground(0, 0) = 1.0;
    states.emplace_back(ground);
    states.emplace_back(Matrix4cd(Matrix4cd::Identity() * 0.25));
    const auto f = subspace_fidelity(states);
    CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(f[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("asymptotic rate formulas") {
    const BathSpec bath(0.01, 1000.0, 1.0);
    {
        const SpinPairSpec spec(1e-9, 1e-3, bath);  // p -> 0
        const RatePair rates = asymptotic_rate(spec);
        CHECK(rates.gamma1 / rates.gamma0 < 1e-20);
    }
    {
        const SpinPairSpec spec(pi, 1.0, bath);  // p = pi
        const RatePair rates = asymptotic_rate(spec);
        CHECK(rates.gamma1 == doctest::Approx(2.0 * rates.gamma0).epsilon(1e-14));
    }
    {
        const SpinPairSpec spec(5.0, 0.2, bath);
        const RatePair rates = asymptotic_rate(spec);
        const double n = bose_occupation(5.0, 1.0);
        CHECK(rates.gamma0 ==
              doctest::Approx(2.0 * pi * 0.01 * (n + 0.5)).epsilon(1e-14));
        CHECK(rates.gamma1 ==
              doctest::Approx(2.0 * (1.0 - std::sin(1.0) / 1.0) * rates.gamma0)
                  .epsilon(1e-14));
    }
}

TEST_CASE("trajectory rate fit") {
    // synthetic exponential
    std::vector<double> times, fids;
    for (int i = 0; i < 20; ++i) {
        times.push_back(0.5 * i);
        fids.push_back(std::exp(-0.1 * 0.5 * i));
    }
    const RateFit fit = rate_from_trajectory(times, fids);
    CHECK(fit.rate == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(fit.residual < 1e-12);
    // constant input
    std::vector<double> ones(times.size(), 1.0);
    CHECK(rate_from_trajectory(times, ones).rate ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    // window too short
    std::vector<double> short_t(times.begin(), times.begin() + 5);
    std::vector<double> short_f(fids.begin(), fids.begin() + 5);
    CHECK_THROWS_AS(rate_from_trajectory(short_t, short_f), std::invalid_argument);
    // non-positive fidelities are rejected
    std::vector<double> bad = fids;
    bad[3] = 0.0;
    CHECK_THROWS_AS(rate_from_trajectory(times, bad), std::invalid_argument);
}

TEST_CASE("fitted decay rate matches the rate law") {
    const BathSpec bath(0.01, 1000.0, 1.0);
    const SpinPairSpec spec(5.0, 0.3, bath);
    const Vector4cd psi = antisym_ket();
    std::vector<double> grid;
    for (int i = 0; i <= 120; ++i) grid.push_back(20.0 * spec.a * i / 120.0);
    const auto fids = subspace_fidelity(
        evolve(TwoSpinState{Matrix4cd(psi * psi.adjoint())}, grid, spec,
               EvolveModel::Dissipative));
    std::vector<double> tw, fw;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] >= 5.0 * spec.a && grid[i] <= 20.0 * spec.a) {
            tw.push_back(grid[i]);
            fw.push_back(fids[i]);
        }
    const RateFit fit = rate_from_trajectory(tw, fw);
    const RatePair rates = asymptotic_rate(spec);
    CHECK(std::abs(fit.rate - rates.gamma1) / rates.gamma1 < 0.05);
    CHECK(fit.residual < 1e-3);
}

TEST_CASE("grid validation in evolve") {
    const SpinPairSpec spec(5.0, 0.2, BathSpec(0.01, 1000.0, 1.0));
    const Vector4cd psi = antisym_ket();
    const TwoSpinState rho0{Matrix4cd(psi * psi.adjoint())};
    CHECK_THROWS_AS(evolve(rho0, {0.5, 1.0}, spec, EvolveModel::Dissipative),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve(rho0, {0.0, 1.0, 0.5}, spec, EvolveModel::Dissipative),
                    std::invalid_argument);
}

TEST_CASE("exact correlators validate the closed-form structure") {
    const BathSpec bath(0.01, 1000.0, 1.0);
    const SpinPairSpec spec(5.0, 0.2, bath);
    // Zero-distance normalization: the defining integral saturates at
    // pi J(eps) (n + 1) = alpha pi eps e^{-eps/W} (n + 1); the printed closed
    // form alpha pi (n + 1) absorbs the spectral-density factor at eps.
    const double n = bose_occupation(spec.epsilon, bath.temperature);
    const double j_eps = bath.alpha * spec.epsilon * std::exp(-spec.epsilon / bath.omega_c);
    for (double t : {2.0, 10.0}) {
        const std::complex<double> cp = correlator_exact(+1, 0.0, t, spec);
        CHECK(cp.real() == doctest::Approx(pi * j_eps * (n + 1.0)).epsilon(0.02));
    }
    // Finite distance: the ratio to the zero-distance correlator reproduces
    // sinc(eps a) theta(t - a).
    const double sinc = std::sin(spec.epsilon * spec.a) / (spec.epsilon * spec.a);
    for (double t : {0.5, 1.0, 4.0}) {
        const double ratio = correlator_exact(+1, spec.a, t, spec).real() /
                             correlator_exact(+1, 0.0, t, spec).real();
        CHECK(ratio == doctest::Approx(sinc).epsilon(0.03));
    }
    // Before the cone the finite-distance correlator is strongly suppressed.
    const double before = correlator_exact(+1, spec.a, 0.05, spec).real();
    const double at0 = correlator_exact(+1, 0.0, 0.05, spec).real();
    CHECK(std::abs(before) < 0.35 * std::abs(at0));
}

TEST_CASE("sensitivity flags run and keep the state physical") {
    const SpinPairSpec spec(5.0, 0.2, BathSpec(0.01, 1000.0, 1.0));
    const Vector4cd psi = antisym_ket();
    const TwoSpinState rho0{Matrix4cd(psi * psi.adjoint())};
    EvolveOptions opts;
    opts.exact_correlators = true;
    opts.rel_tol = 1e-7;
    const std::vector<double> grid = {0.0, 0.15, 0.3};
    const auto states = evolve(rho0, grid, spec, EvolveModel::Dissipative, opts);
    for (const auto& s : states)
        CHECK(std::abs(s.rho.trace() - std::complex<double>(1.0, 0.0)) < 1e-7);
}
