// Command-line front end: emits deterministic CSV/JSON data series for the
// damped-oscillator coherence, density-grid, trajectory, separation and
// detection observables, plus a self-validation suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dho/figures.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw CLI::ValidationError("bad number: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("empty list");
    return out;
}

dho::CoherentAmplitude parse_amplitude(const std::string& s) {
    const auto v = parse_list(s);
    if (v.size() > 2) throw CLI::ValidationError("amplitude needs RE or RE,IM");
    return {v[0], v.size() == 2 ? v[1] : 0.0};
}

struct Options {
    std::string preset;
    std::string alpha = "1";
    std::optional<std::string> beta;
    std::string gamma0 = "0";
    double t_max = 10.0;
    double dt = 0.05;
    double kbt = 0.0;
    double d = 1.0;
    std::string stats = "BE";
    std::string basis = "energy";
    int n_max = -1;
    double x_min = -12.0, x_max = 12.0;
    int nx = 241;
    std::string out_path;
    std::string format = "csv";
    int precision = 12;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--preset", o.preset, "named figure preset (fig1..fig8)");
    cmd->add_option("--alpha", o.alpha, "first amplitude RE[,IM]");
    cmd->add_option("--beta", o.beta, "second amplitude RE[,IM]");
    cmd->add_option("--gamma0", o.gamma0, "damping constants g1,g2,...");
    cmd->add_option("--t-max", o.t_max, "end of the time sweep");
    cmd->add_option("--dt", o.dt, "time sample step");
    cmd->add_option("--kbt", o.kbt, "bath temperature (scaled units)");
    cmd->add_option("--d", o.d, "detector half width");
    cmd->add_option("--stats", o.stats, "MB, BE or FD");
    cmd->add_option("--basis", o.basis, "energy, position or momentum");
    cmd->add_option("--nmax", o.n_max, "Fock truncation");
    cmd->add_option("--x-min", o.x_min, "grid lower edge");
    cmd->add_option("--x-max", o.x_max, "grid upper edge");
    cmd->add_option("--nx", o.nx, "grid point count");
    cmd->add_option("--out", o.out_path, "output file (default: standard output)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--precision", o.precision, "significant digits")
        ->check(CLI::Range(1, 17));
}

void emit(dho::Table table, const Options& o) {
    table.preset = o.preset.empty() ? "none" : o.preset;
    table.config["alpha"] = o.alpha;
    if (o.beta) table.config["beta"] = *o.beta;
    table.config["gamma0"] = o.gamma0;
    table.config["t_max"] = std::to_string(o.t_max);
    table.config["dt"] = std::to_string(o.dt);
    const std::string text = o.format == "json" ? table.to_json(o.precision)
                                                : table.to_csv(o.precision);
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + o.out_path);
    f << text;
    if (!f.good()) {
        f.close();
        std::remove(o.out_path.c_str());
        throw std::runtime_error("write failed: " + o.out_path);
    }
}

dho::SweepSpec sweep_of(const Options& o) { return {o.t_max, o.dt}; }

int run_coherence(Options o) {
    if (o.preset == "fig1") {
        o.alpha = "1";
        o.gamma0 = "0,0.1,0.2,0.3";
        o.t_max = 10.0;
        o.dt = 0.05;
    }
    if (o.preset == "fig2") {
        emit(dho::coherence_vs_alpha_sq(6.0, 0.1), o);
        return kExitOk;
    }
    if (o.basis == "position" || o.basis == "momentum") {
        // thermally broadened Gaussian width; identical in both bases
        emit(dho::thermal_position_coherence_vs_time(o.kbt, parse_list(o.gamma0),
                                                     sweep_of(o)),
             o);
        return kExitOk;
    }
    emit(dho::coherence_vs_time(parse_amplitude(o.alpha), parse_list(o.gamma0),
                                sweep_of(o), o.n_max),
         o);
    return kExitOk;
}

int run_grid(Options o) {
    if (o.preset == "fig3") {
        o.alpha = "4.949747468306";  // 7/sqrt(2)
        o.gamma0 = "0,0.1,0.2,0.3";
        o.t_max = 2.0 * dho::pi;
        o.dt = 0.05;
    }
    emit(dho::grid_table(parse_amplitude(o.alpha), parse_list(o.gamma0), sweep_of(o),
                         o.x_min, o.x_max, o.nx),
         o);
    return kExitOk;
}

int run_trajectories(Options o) {
    if (o.preset == "fig4") {
        o.alpha = "4.949747468306";
        o.gamma0 = "0";
        o.t_max = 5.0;
        o.dt = 0.01;
    }
    const auto gammas = parse_list(o.gamma0);
    if (gammas.size() != 1)
        throw CLI::ValidationError("trajectories take exactly one gamma0");
    emit(dho::trajectories_table(parse_amplitude(o.alpha), gammas[0], sweep_of(o)), o);
    return kExitOk;
}

int run_mss(Options o) {
    if (o.preset == "fig5") {
        o.alpha = "1";
        o.gamma0 = "0,0.1,0.2,0.3";
        o.t_max = 3.0 * dho::pi;
        o.dt = 0.02;
    }
    const auto a = parse_amplitude(o.alpha);
    if (a.im != 0.0) throw CLI::ValidationError("mss sweep expects real alpha");
    emit(dho::mss_table(a.re, parse_list(o.gamma0), sweep_of(o)), o);
    return kExitOk;
}

int run_detect(Options o) {
    if (o.preset == "fig6") {
        o.alpha = "1";
        o.gamma0 = "0,0.05,0.1";
        o.t_max = 2.0 * dho::pi;
        o.dt = 0.02;
        o.d = 2.0;
    }
    const auto a = parse_amplitude(o.alpha);
    emit(dho::detect_table(a.re, o.d, parse_list(o.gamma0), sweep_of(o)), o);
    return kExitOk;
}

int run_spcoherence(Options o) {
    if (o.preset == "fig8") {
        emit(dho::spcoherence_vs_alpha_sq(4.0, 0.1), o);
        return kExitOk;
    }
    std::vector<double> alphas;
    if (o.preset == "fig7") {
        alphas = {1.0 / std::sqrt(2.0), 1.0};
        o.gamma0 = "0.001";
        o.t_max = 10.0;
        o.dt = 0.1;
    } else {
        alphas = {parse_amplitude(o.alpha).re};
    }
    const auto gammas = parse_list(o.gamma0);
    if (gammas.size() != 1)
        throw CLI::ValidationError("spcoherence takes exactly one gamma0");
    emit(dho::spcoherence_vs_time(alphas, gammas[0], sweep_of(o)), o);
    return kExitOk;
}

int run_validate(const Options& o) {
    const double dt = (o.dt == 0.05) ? 0.005 : o.dt;  // 0.05 is the sweep default
    const auto checks = dho::run_validation(dt);
    bool all_pass = true;
    for (const auto& c : checks) {
        std::printf("%-40s residual %12.4e  bound %8.1e  %s%s%s\n", c.name.c_str(),
                    c.residual, c.bound, c.pass ? "pass" : "FAIL",
                    c.note.empty() ? "" : "  ", c.note.c_str());
        all_pass = all_pass && c.pass;
    }
    return all_pass ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"damped harmonic oscillator coherence toolkit"};
    app.require_subcommand(1);

    Options o;
    int rc = kExitOk;
    for (const char* name :
         {"coherence", "grid", "trajectories", "mss", "detect", "spcoherence",
          "validate"}) {
        auto* cmd = app.add_subcommand(name);
        add_common(cmd, o);
        cmd->callback([&o, &rc, name] {
            const std::string n = name;
            if (n == "coherence") rc = run_coherence(o);
            else if (n == "grid") rc = run_grid(o);
            else if (n == "trajectories") rc = run_trajectories(o);
            else if (n == "mss") rc = run_mss(o);
            else if (n == "detect") rc = run_detect(o);
            else if (n == "spcoherence") rc = run_spcoherence(o);
            else rc = run_validate(o);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationFailure;
    }
    return rc;
}
