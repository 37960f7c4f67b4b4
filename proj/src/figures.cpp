#include "spinreg/figures.hpp"

#include <cmath>
#include <vector>

#include "spinreg/csv.hpp"
#include "spinreg/encoding.hpp"
#include "spinreg/fidelity.hpp"
#include "spinreg/kernel.hpp"
#include "spinreg/redfield.hpp"
#include "spinreg/run_config.hpp"
#include "spinreg/special_functions.hpp"
#include "spinreg/version.hpp"

namespace spinreg {

namespace {

RunConfig resolve(const CommandRequest& req, RunConfig cfg) {
    if (!req.config_file.empty()) cfg.load_file(req.config_file);
    cfg.apply_overrides(req.params);
    if (req.seed != 0) cfg.set("seed", std::to_string(req.seed));
    if (req.samples > 0) cfg.set("samples", std::to_string(req.samples));
    return cfg;
}

void preamble(CsvBuilder& csv, const std::string& command, const RunConfig& cfg) {
    csv.comment(version_string);
    csv.comment("command: " + command);
    csv.comment("config: " + cfg.summary());
}

std::vector<double> log_grid(double lo, double hi, std::int64_t points) {
    if (!(hi > lo) || points < 2)
        throw ConfigError("grid requires ascending range and >= 2 points");
    std::vector<double> grid(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::int64_t i = 0; i < points; ++i)
        grid[i] = lo * std::exp(step * static_cast<double>(i));
    grid.back() = hi;
    return grid;
}

std::vector<double> linear_grid(double lo, double hi, std::int64_t points) {
    if (!(hi > lo) || points < 2)
        throw ConfigError("grid requires ascending range and >= 2 points");
    std::vector<double> grid(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::int64_t i = 0; i < points; ++i)
        grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

}  // namespace

std::string fig_decoherence(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"alpha", "1"},
                                           {"T_r0", "5"},
                                           {"omega_over_T", "1000"},
                                           {"tau_min", "0.001"},
                                           {"tau_max", "20"},
                                           {"points", "200"},
                                           {"seed", "0"}});
    const double alpha = cfg.positive("alpha");
    const double T = cfg.positive("T_r0");  // distance unit r0 = 1
    const double omega = cfg.positive("omega_over_T") * T;
    const BathSpec bath(alpha, omega, T);
    const double r0 = 1.0;

    CsvBuilder csv;
    preamble(csv, "fig-decoherence", cfg);
    csv.columns({"tau", "K0", "Kr", "K0_short", "K0_long"});
    const double long_offset = alpha * std::log(omega / (2.0 * pi * T));
    csv.row(std::vector<double>{0.0, 0.0, 0.0, 0.0, long_offset});
    for (double tau :
         log_grid(cfg.positive("tau_min"), cfg.positive("tau_max"), cfg.get_int("points"))) {
        const double t = tau * r0;
        csv.row(std::vector<double>{
            tau, k_zero_exact(t, bath), k_dispatch(r0, t, bath),
            0.5 * alpha * std::log1p(t * t * omega * omega),
            alpha * pi * T * t + long_offset});
    }
    return csv.str();
}

std::string fig_knull(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"alpha", "1"},
                                           {"omega_a", "1000"},
                                           {"Ta_high", "10"},
                                           {"Ta_low", "0.1"},
                                           {"tau_min", "0.01"},
                                           {"tau_max", "100"},
                                           {"points", "160"},
                                           {"seed", "0"}});
    const double alpha = cfg.positive("alpha");
    const double a = 1.0;
    const double omega = cfg.positive("omega_a") / a;

    CsvBuilder csv;
    preamble(csv, "fig-knull", cfg);
    csv.columns({"tau", "K0", "K1"});
    for (const char* block : {"Ta_high", "Ta_low"}) {
        const double T = cfg.positive(block);
        const BathSpec bath(alpha, omega, T);
        csv.comment(std::string("block: T a = ") + format_number(T * a));
        csv.comment("crossover_tau = " + format_number(crossover_time(a, bath) / a));
        for (double tau : log_grid(cfg.positive("tau_min"), cfg.positive("tau_max"),
                                   cfg.get_int("points"))) {
            const double t = tau * a;
            csv.row(std::vector<double>{tau, k_zero_exact(t, bath),
                                        effective_k(1, 0, t, a, bath)});
        }
    }
    return csv.str();
}

std::string fig_knull_temperature(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"alpha", "1"},
                                           {"omega_a", "5000"},
                                           {"theta_min", "0.01"},
                                           {"theta_max", "10"},
                                           {"points", "60"},
                                           {"seed", "0"}});
    const double alpha = cfg.positive("alpha");
    const double a = 1.0;
    const double omega = cfg.positive("omega_a") / a;

    CsvBuilder csv;
    preamble(csv, "fig-knull-T", cfg);
    csv.columns({"theta", "K1_inf", "K2_inf", "K3_inf"});
    for (double theta : log_grid(cfg.positive("theta_min"), cfg.positive("theta_max"),
                                 cfg.get_int("points"))) {
        const BathSpec bath(alpha, omega, theta / a);
        csv.row(std::vector<double>{theta, effective_k_plateau(1, a, bath),
                                    effective_k_plateau(2, a, bath),
                                    effective_k_plateau(3, a, bath)});
    }
    return csv.str();
}

std::string fig_fidelity_examples(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"n", "100"},
                                           {"kappa_min", "0.0001"},
                                           {"kappa_max", "0.2"},
                                           {"points", "120"},
                                           {"seed", "0"}});
    const int n = static_cast<int>(cfg.get_int("n"));

    CsvBuilder csv;
    preamble(csv, "fig-fidelity-examples", cfg);
    csv.columns({"kappa", "F_independent", "F_independent_wc", "wc_ratio",
                 "F_symmetric"});
    csv.row(std::vector<double>{0.0, 1.0, 1.0, 1.0, 1.0});
    for (double kappa : log_grid(cfg.positive("kappa_min"), cfg.positive("kappa_max"),
                                 cfg.get_int("points"))) {
        const double exact = fidelity_independent(n, kappa).value;
        const double wc = std::pow(1.0 + kappa, -0.5 * n);
        csv.row(std::vector<double>{kappa, exact, wc, exact / wc,
                                    fidelity_symmetric(n, kappa).value});
    }
    return csv.str();
}

std::string fig_fidelity_time(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"n", "125"},
                                           {"gamma_a", "0.0001"},
                                           {"tau_min", "130"},
                                           {"tau_max", "1000"},
                                           {"points", "120"},
                                           {"seed", "0"}});
    const int n = static_cast<int>(cfg.get_int("n"));
    const double gamma_a = cfg.positive("gamma_a");  // gamma in units 1/a, a = 1

    CsvBuilder csv;
    preamble(csv, "fig-foft", cfg);
    csv.columns({"tau", "F0", "F_independent", "F_symmetric"});
    for (double tau : log_grid(cfg.positive("tau_min"), cfg.positive("tau_max"),
                               cfg.get_int("points"))) {
        const double kappa = gamma_a * tau;  // gamma t
        // Plain-register high-T matrix K_lm = gamma t (1 - a|l-m| / 2t).
        Eigen::MatrixXd K(n, n);
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
                K(l, m) = kappa - 0.5 * gamma_a * std::abs(l - m);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(K,
                                                              Eigen::EigenvaluesOnly);
        double log_det = 0.0;
        for (int i = 0; i < n; ++i) log_det += std::log1p(solver.eigenvalues()(i));
        csv.row(std::vector<double>{tau, std::exp(-0.5 * log_det),
                                    fidelity_independent(n, kappa).value,
                                    fidelity_symmetric_large_n(n, kappa)});
    }
    return csv.str();
}

std::string fig_temperature(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"n", "125"},
                                           {"alpha", "0.001"},
                                           {"omega_a", "1000"},
                                           {"Ta_high", "10"},
                                           {"Ta_low", "0.2,0.1,0.05"},
                                           {"tau_min", "1"},
                                           {"tau_max", "3000"},
                                           {"points", "70"},
                                           {"diagonal_log", "keep"},
                                           {"seed", "0"}});
    const int n = static_cast<int>(cfg.get_int("n"));
    const double alpha = cfg.positive("alpha");
    const double a = 1.0;
    const double omega = cfg.positive("omega_a") / a;
    const bool drop_log = [&] {
        const std::string& mode = cfg.get_string("diagonal_log");
        if (mode == "keep") return false;
        if (mode == "drop") return true;
        throw ConfigError("diagonal_log must be keep or drop");
    }();

    std::vector<double> temps = {cfg.positive("Ta_high")};
    {
        const std::string& low = cfg.get_string("Ta_low");
        std::size_t pos = 0;
        while (pos < low.size()) {
            const std::size_t comma = low.find(',', pos);
            const std::string item = low.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            temps.push_back(std::stod(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }

    CsvBuilder csv;
    preamble(csv, "fig-temperature", cfg);
    csv.columns({"tau", "F0", "F1"});
    const std::vector<double> taus =
        log_grid(cfg.positive("tau_min"), cfg.positive("tau_max"), cfg.get_int("points"));
    for (double T : temps) {
        const BathSpec bath(alpha, omega, T / a);
        csv.comment("block: T a = " + format_number(T));
        for (double tau : taus) {
            const double t = tau * a;
            const DecoherenceMatrix plain =
                decoherence_matrix(RegisterSpec(n, a, 0), bath, t);
            DecoherenceMatrix encoded =
                decoherence_matrix(RegisterSpec(n, a, 1), bath, t);
            if (drop_log) {
                Eigen::MatrixXd entries = encoded.entries();
                entries.diagonal().array() -=
                    2.0 * alpha * std::log(omega / (2.0 * pi * bath.temperature));
                encoded = DecoherenceMatrix(std::move(entries), t);
            }
            csv.row(std::vector<double>{tau, fidelity_weak_coupling(plain).value,
                                        fidelity_weak_coupling(encoded).value});
        }
    }
    return csv.str();
}

std::string fig_dissipative(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"alpha", "0.01"},
                                           {"eps_over_T", "5"},
                                           {"aT_list", "0.1,0.2,0.3"},
                                           {"omega_over_T", "1000"},
                                           {"tau_fine_max", "0.4"},
                                           {"tau_max", "6"},
                                           {"seed", "0"}});
    const double T = 1.0;  // time unit 1/T
    const double alpha = cfg.positive("alpha");
    const double eps = cfg.positive("eps_over_T") * T;
    const BathSpec bath(alpha, cfg.positive("omega_over_T") * T, T);

    std::vector<double> distances;
    {
        const std::string& list = cfg.get_string("aT_list");
        std::size_t pos = 0;
        while (pos < list.size()) {
            const std::size_t comma = list.find(',', pos);
            distances.push_back(std::stod(list.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (distances.empty()) throw ConfigError("aT_list must not be empty");

    const double fine_max = cfg.positive("tau_fine_max");
    const double tau_max = cfg.positive("tau_max");
    std::vector<double> grid;
    for (double tau = 0.0; tau < fine_max; tau += 0.005) grid.push_back(tau);
    for (double tau = fine_max; tau < tau_max; tau += 0.02) grid.push_back(tau);
    grid.push_back(tau_max);

    Eigen::Vector4cd psi_minus = Eigen::Vector4cd::Zero();
    psi_minus(1) = 1.0 / std::sqrt(2.0);
    psi_minus(2) = -1.0 / std::sqrt(2.0);
    Eigen::Vector4cd psi_plus = Eigen::Vector4cd::Zero();
    psi_plus(1) = 1.0 / std::sqrt(2.0);
    psi_plus(2) = 1.0 / std::sqrt(2.0);

    std::vector<std::vector<double>> curves;
    for (double aT : distances) {
        const SpinPairSpec spec(eps, aT / T, bath);
        curves.push_back(subspace_fidelity(
            evolve(TwoSpinState(psi_minus * psi_minus.adjoint()), grid, spec,
                   EvolveModel::Dissipative)));
    }
    // Symmetric-state comparison at the first distance.
    const SpinPairSpec spec_sym(eps, distances.front() / T, bath);
    const std::vector<TwoSpinState> sym_states =
        evolve(TwoSpinState(psi_plus * psi_plus.adjoint()), grid, spec_sym,
               EvolveModel::Dissipative);
    std::vector<double> sym_curve;
    sym_curve.reserve(sym_states.size());
    for (const auto& s : sym_states)
        sym_curve.push_back((psi_plus.adjoint() * s.rho * psi_plus)(0, 0).real());

    CsvBuilder csv;
    preamble(csv, "fig-dissipative", cfg);
    std::vector<std::string> names = {"tau"};
    for (double aT : distances) names.push_back("F_aT" + format_number(aT));
    names.push_back("F_symmetric_aT" + format_number(distances.front()));
    csv.columns(names);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row = {grid[i] * T};
        for (const auto& curve : curves) row.push_back(curve[i]);
        row.push_back(sym_curve[i]);
        csv.row(row);
    }
    return csv.str();
}

std::string fig_rate_reduction(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"p_min", "0"},
                                           {"p_max", "15"},
                                           {"points", "301"},
                                           {"seed", "0"}});
    CsvBuilder csv;
    preamble(csv, "fig-reduction", cfg);
    csv.columns({"p", "gamma1_over_gamma0"});
    for (double p : linear_grid(cfg.get_double("p_min"), cfg.positive("p_max"),
                                cfg.get_int("points"))) {
        double ratio;
        if (p == 0.0) {
            ratio = 0.0;
        } else {
            ratio = 2.0 * (1.0 - std::sin(p) / p);
        }
        csv.row(std::vector<double>{p, ratio});
    }
    return csv.str();
}

std::string headline_report(const CommandRequest& req) {
    RunConfig cfg = resolve(req, RunConfig{{"n", "125"},
                                           {"gamma_a", "0.0001"},
                                           {"precision", "0.01"},
                                           {"q", "1"},
                                           {"t0_over_a", "1"},
                                           {"seed", "0"}});
    const int n = static_cast<int>(cfg.get_int("n"));
    const double gamma_a = cfg.positive("gamma_a");
    const double eps = cfg.positive("precision");
    const double q = cfg.get_double("q");
    const double t0 = cfg.positive("t0_over_a");  // units of a

    const double f1 = fidelity_encoded_asymptote(n, gamma_a).value;
    const double nd = static_cast<double>(n);
    const double gamma0_req = 2.0 * eps / t0 * std::pow(nd, -(1.0 + q));
    const double gamma1_req = 2.0 * eps / nd;  // units 1/a
    const double advantage = t0 * std::pow(nd, q);

    std::string out;
    out += std::string(version_string) + "\n";
    out += "command: headline\n";
    out += "config: " + cfg.summary() + "\n\n";
    out += "saturated encoded-register fidelity (n = " + std::to_string(n) +
           ", gamma a = " + format_number(gamma_a) + "):\n";
    out += "  F1(inf) = " + format_number(f1) + "\n";
    out += "  1 - F1(inf) = " + format_number(1.0 - f1) + "\n\n";
    out += "single-spin rate required to hold 1 - F <= " + format_number(eps) +
           " for t_s = t0 n^q (t0 = " + format_number(t0) + " a, q = " +
           format_number(q) + "):\n";
    out += "  plain register:   gamma0 ~ 2 eps n^-(1+q) / t0 = " +
           format_number(gamma0_req) + "  [1/a]\n";
    out += "  encoded register: gamma1 ~ 2 eps n^-1 / a      = " +
           format_number(gamma1_req) + "  [1/a]\n";
    out += "  advantage gamma1 / gamma0 = (t0/a) n^q = " +
           format_number(advantage) + "\n";
    return out;
}

}  // namespace spinreg
