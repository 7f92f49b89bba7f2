#pragma once

// Data-series builders behind the CLI: each subcommand produces a Table
// that serializes to CSV (one file per figure panel) or JSON with a full
// config echo. All series are deterministic functions of the run config.

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dho/bohmian.hpp"
#include "dho/coherence.hpp"
#include "dho/identical.hpp"
#include "dho/lindblad.hpp"

namespace dho {

inline constexpr const char* version = "0.1.0";

struct Table {
    std::string preset = "none";
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> config;  // echoed into JSON output

    std::string to_csv(int precision = 12) const {
        std::string out = "# dho v" + std::string(version) + " preset=" + preset + "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out += (i ? "," : "") + columns[i];
        out += "\n";
        char buf[64];
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.*g", precision, row[i]);
                if (i) out += ",";
                out += buf;
            }
            out += "\n";
        }
        return out;
    }

    std::string to_json(int precision = 12) const {
        std::ostringstream os;
        char buf[64];
        os << "{\n  \"dho_version\": \"" << version << "\",\n  \"preset\": \""
           << preset << "\",\n  \"config\": {";
        bool first = true;
        for (const auto& [k, v] : config) {
            os << (first ? "" : ", ") << "\"" << k << "\": \"" << v << "\"";
            first = false;
        }
        os << "},\n  \"columns\": [";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? ", " : "") << "\"" << columns[i] << "\"";
        os << "],\n  \"data\": [\n";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            os << "    [";
            for (std::size_t i = 0; i < rows[r].size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.*g", precision, rows[r][i]);
                os << (i ? ", " : "") << buf;
            }
            os << "]" << (r + 1 < rows.size() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
        return os.str();
    }
};

struct SweepSpec {
    double t_max = 10.0;
    double dt = 0.05;

    std::vector<double> times() const {
        std::vector<double> t;
        const long n = std::lround(t_max / dt);
        for (long k = 0; k <= n; ++k) t.push_back(k * dt);
        return t;
    }
};

namespace detail {
inline std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}
}  // namespace detail

// Cat-state coherence versus time, one column per damping constant.
inline Table coherence_vs_time(const CoherentAmplitude& alpha,
                               const std::vector<double>& gamma0s,
                               const SweepSpec& sweep, int n_max = -1) {
    const SuperposedState cat = make_cat(alpha, CatKind::plus_minus_alpha);
    if (n_max < 0) n_max = default_n_max(cat);
    Table t;
    t.columns.push_back("t");
    for (double g : gamma0s) t.columns.push_back("cr_gamma" + detail::fmt_g(g));
    for (double tv : sweep.times()) {
        std::vector<double> row{tv};
        for (double g : gamma0s) {
            const EvolutionParams p(g, tv);
            if (g == 0.0) {
                row.push_back(cr_pure_state_energy(cat, p, n_max).value);
            } else {
                row.push_back(
                    cr_mixed_energy(density_from_superposition(cat, p, n_max)).value);
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Position-basis Gaussian coherence of a thermally broadened coherent state
// versus time, one column per damping constant.
inline Table thermal_position_coherence_vs_time(double kbt,
                                                const std::vector<double>& gamma0s,
                                                const SweepSpec& sweep) {
    const double nbar = nbar_from_kbt(kbt);
    Table t;
    t.columns.push_back("t");
    for (double g : gamma0s) t.columns.push_back("cr_gamma" + detail::fmt_g(g));
    for (double tv : sweep.times()) {
        std::vector<double> row{tv};
        for (double g : gamma0s)
            row.push_back(
                cr_gaussian_position(thermal_variance({g, tv, nbar})).value);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Non-dissipative coherence versus |alpha|^2 for the coherent state, both
// cat states, their superposition |T>, and the superposition bound.
inline Table coherence_vs_alpha_sq(double alpha_sq_max, double step) {
    Table t;
    t.columns = {"alpha_sq", "coherent", "cat_phi", "cat_psi", "cat_T", "bound_T"};
    const EvolutionParams p0(0.0, 0.0);
    const long n = std::lround(alpha_sq_max / step);
    for (long k = 0; k <= n; ++k) {
        const double a_sq = k * step;
        const CoherentAmplitude a(std::sqrt(a_sq));
        const int n_max = default_n_max(a_sq);
        const auto ineq = cr_two_cat_inequality(a, n_max);
        t.rows.push_back({a_sq, cr_coherent_energy(a, p0).value,
                          cr_pure_state_energy(make_cat(a, CatKind::plus_minus_alpha),
                                               p0, n_max)
                              .value,
                          cr_pure_state_energy(make_cat(a, CatKind::half_alpha_pair),
                                               p0, n_max)
                              .value,
                          ineq.lhs, ineq.rhs});
    }
    return t;
}

// P(x,t) heat-map data for the cat state, one density column per gamma0.
inline Table grid_table(const CoherentAmplitude& alpha,
                        const std::vector<double>& gamma0s, const SweepSpec& sweep,
                        double x_min, double x_max, int nx) {
    const SuperposedState cat = make_cat(alpha, CatKind::plus_minus_alpha);
    Table t;
    t.columns = {"t", "x"};
    for (double g : gamma0s) t.columns.push_back("P_gamma" + detail::fmt_g(g));
    std::vector<GridField> grids;
    for (double g : gamma0s)
        grids.push_back(sample_grid(cat, g, sweep.times(), x_min, x_max, nx));
    for (std::size_t it = 0; it < grids[0].times.size(); ++it)
        for (int k = 0; k < nx; ++k) {
            std::vector<double> row{grids[0].times[it], grids[0].x_at(k)};
            for (const auto& g : grids) row.push_back(g.P(it, k));
            t.rows.push_back(std::move(row));
        }
    return t;
}

// Bohmian trajectory bundle, quantile launch points per wavepacket.
inline Table trajectories_table(const CoherentAmplitude& alpha, double gamma0,
                                const SweepSpec& sweep, int per_packet = 10) {
    const SuperposedState cat = make_cat(alpha, CatKind::plus_minus_alpha);
    TrajectoryConfig cfg;
    cfg.t_final = sweep.t_max;
    const auto launch = quantile_launch_points(cat, per_packet);
    const auto ens = integrate_trajectories(cat, gamma0, launch, cfg);
    Table t;
    t.columns = {"t"};
    for (std::size_t i = 0; i < launch.size(); ++i)
        t.columns.push_back("x" + std::to_string(i));
    // thin the dense integrator output to the requested sample step
    const long stride = std::max(1L, std::lround(sweep.dt / cfg.dt));
    for (std::size_t k = 0; k < ens.times.size(); k += stride) {
        std::vector<double> row{ens.times[k]};
        for (long i = 0; i < ens.paths.rows(); ++i) row.push_back(ens.paths(i, k));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Mean square separation versus time for the three statistics, per gamma0.
inline Table mss_table(double alpha, const std::vector<double>& gamma0s,
                       const SweepSpec& sweep) {
    Table t;
    t.columns = {"t"};
    for (double g : gamma0s)
        for (const char* s : {"mb", "be", "fd"})
            t.columns.push_back(std::string(s) + "_gamma" + detail::fmt_g(g));
    for (double tv : sweep.times()) {
        std::vector<double> row{tv};
        for (double g : gamma0s) {
            const EvolutionParams p(g, tv);
            row.push_back(mss({{alpha}, {-alpha}, Statistics::MB}, p));
            row.push_back(mss({{alpha}, {-alpha}, Statistics::BE}, p));
            row.push_back(mss({{alpha}, {-alpha}, Statistics::FD}, p));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Joint detection ratios p_plus (BE/MB) and p_minus (FD/MB) per gamma0.
inline Table detect_table(double alpha, double half_width,
                          const std::vector<double>& gamma0s,
                          const SweepSpec& sweep) {
    Table t;
    t.columns = {"t"};
    for (double g : gamma0s) {
        t.columns.push_back("pplus_gamma" + detail::fmt_g(g));
        t.columns.push_back("pminus_gamma" + detail::fmt_g(g));
    }
    const DetectorWindow win(half_width);
    const TwoParticleState be({alpha}, {-alpha}, Statistics::BE);
    const TwoParticleState fd({alpha}, {-alpha}, Statistics::FD);
    for (double tv : sweep.times()) {
        std::vector<double> row{tv};
        for (double g : gamma0s) {
            const EvolutionParams p(g, tv);
            row.push_back(joint_detection_ratio(be, p, win));
            row.push_back(joint_detection_ratio(fd, p, win));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Reduced single-particle coherence versus time for each statistics.
inline Table spcoherence_vs_time(const std::vector<double>& alphas, double gamma0,
                                 const SweepSpec& sweep) {
    Table t;
    t.columns = {"t"};
    for (double a : alphas)
        for (const char* s : {"mb", "be", "fd"})
            t.columns.push_back(std::string(s) + "_alpha" + detail::fmt_g(a));
    for (double tv : sweep.times()) {
        std::vector<double> row{tv};
        for (double a : alphas) {
            const EvolutionParams p(gamma0, tv);
            const int n_max = default_n_max(a * a);
            row.push_back(
                cr_by_statistics({{a}, {-a}, Statistics::MB}, p, n_max).value);
            row.push_back(
                cr_by_statistics({{a}, {-a}, Statistics::BE}, p, n_max).value);
            row.push_back(
                cr_by_statistics({{a}, {-a}, Statistics::FD}, p, n_max).value);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Non-dissipative reduced single-particle coherence versus |alpha|^2.
inline Table spcoherence_vs_alpha_sq(double alpha_sq_max, double step) {
    Table t;
    t.columns = {"alpha_sq", "mb", "be", "fd"};
    const EvolutionParams p0(0.0, 0.0);
    const long n = std::lround(alpha_sq_max / step);
    for (long k = 0; k <= n; ++k) {
        const double a_sq = k * step;
        const double a = std::sqrt(a_sq);
        const int n_max = default_n_max(a_sq);
        std::vector<double> row{a_sq};
        row.push_back(cr_by_statistics({{a}, {-a}, Statistics::MB}, p0, n_max).value);
        row.push_back(cr_by_statistics({{a}, {-a}, Statistics::BE}, p0, n_max).value);
        if (a == 0.0)
            row.push_back(0.0);  // FD undefined at coincident labels
        else
            row.push_back(cr_by_statistics({{a}, {-a}, Statistics::FD}, p0, n_max).value);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Cross-validation report: every analytic route checked against its
// independent numerical oracle. Returns true when all residuals pass.
struct ValidationCheck {
    std::string name;
    double residual = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string note;
};

inline std::vector<ValidationCheck> run_validation(double integrator_dt = 0.005) {
    std::vector<ValidationCheck> checks;
    auto add = [&](const std::string& name, double residual, double bound,
                   std::string note = "") {
        checks.push_back({name, residual, bound, residual < bound, std::move(note)});
    };

    // analytic state vs RK4 master-equation integration, cat alpha = +-1
    {
        const SuperposedState cat = make_cat({1.0}, CatKind::plus_minus_alpha);
        const int n_max = 40;
        const auto rho0 = density_from_superposition(cat, {0.2, 0.0}, n_max);
        IntegratorConfig cfg;
        cfg.dt = integrator_dt;
        cfg.t_final = 3.0;
        try {
            const auto num = integrate(rho0, 0.2, 0.0, cfg);
            const auto ana = density_from_superposition(cat, {0.2, 3.0}, n_max);
            add("lindblad_vs_analytic_trace_distance", trace_distance(num, ana), 1e-6);
        } catch (const std::exception& e) {
            checks.push_back({"lindblad_vs_analytic_trace_distance", 1.0, 1e-6, false,
                              e.what()});
        }
    }
    // thermal fixed point from vacuum
    {
        const int n_max = 30;
        FockDensityMatrix vac{ComplexMatrix::Zero(n_max + 1, n_max + 1), n_max};
        vac.elements(0, 0) = 1.0;
        IntegratorConfig cfg;
        cfg.dt = integrator_dt;
        cfg.t_final = 30.0;
        try {
            const auto num = integrate(vac, 1.0, 0.5, cfg);
            add("thermal_gibbs_fixed_point", trace_distance(num, thermal_state(0.5, n_max)),
                1e-6);
        } catch (const std::exception& e) {
            checks.push_back({"thermal_gibbs_fixed_point", 1.0, 1e-6, false, e.what()});
        }
    }
    // series vs spectral coherent coherence
    {
        const auto rho =
            density_from_superposition(SuperposedState::coherent({1.0}), {0.1, 2.0}, 40);
        add("coherent_cr_series_vs_spectral",
            std::abs(cr_mixed_energy(rho).value -
                     cr_coherent_energy({1.0}, {0.1, 2.0}).value),
            1e-9);
    }
    // cat closed form vs spectral
    {
        const auto cat = make_cat({1.0}, CatKind::plus_minus_alpha);
        add("cat_cr_closed_form_vs_spectral",
            std::abs(cr_cat_closed_form(1.0).value -
                     cr_pure_state_energy(cat, {0.0, 0.0}, 60).value),
            1e-9);
    }
    // closed-form MSS vs the general matrix-element route
    {
        double worst = 0.0;
        for (double tv : {0.0, 0.7, 1.5, 3.0}) {
            const EvolutionParams p(0.2, tv);
            for (Statistics st : {Statistics::MB, Statistics::BE, Statistics::FD}) {
                const TwoParticleState closed({1.0}, {-1.0}, st);
                // a denormal imaginary part forces the general matrix-element route
                const TwoParticleState general({1.0, 1e-300}, {-1.0}, st);
                worst = std::max(worst, std::abs(mss(closed, p) - mss(general, p)));
            }
        }
        add("mss_closed_vs_general", worst, 1e-8);
    }
    // continuity equation on the analytic solution
    {
        const auto s1 = SuperposedState::coherent({1.0});
        const auto g1 = sample_grid(s1, 0.2, {0.5, 2.0, 5.0}, -8.0, 8.0, 400);
        add("continuity_coherent", continuity_residual(s1, 0.2, g1), 1e-6);
        const auto cat = make_cat({7.0 / std::sqrt(2.0)}, CatKind::plus_minus_alpha);
        const auto g2 = sample_grid(cat, 0.1, {0.5, 0.5 * pi, 3.0}, -12.0, 12.0, 400);
        add("continuity_cat", continuity_residual(cat, 0.1, g2), 1e-5);
    }
    // factorized two-particle generator
    {
        const auto r1 = density_from_superposition(SuperposedState::coherent({0.5}),
                                                   {0.0, 0.0}, 12);
        const auto r2 = density_from_superposition(SuperposedState::coherent({-0.5}),
                                                   {0.0, 0.0}, 12);
        add("two_particle_factorization", two_particle_step_check(r1, r2, 0.1), 1e-12);
    }
    // complex error function against the real-axis library value
    {
        add("complex_erf_real_axis",
            std::abs(complex_erf({1.0, 0.0}) - Complex(std::erf(1.0), 0.0)), 1e-14);
        const Complex sym = complex_erf({2.0, 1.5}) + complex_erf({2.0, -1.5});
        add("complex_erf_conjugate_symmetry", std::abs(sym.imag()), 1e-14);
    }
    return checks;
}

}  // namespace dho
