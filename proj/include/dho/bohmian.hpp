#pragma once

// Position-space hydrodynamics of the analytic master-equation solution:
// probability density P(x,t), probability current J(x,t) from the current
// density matrix, continuity checking and Bohmian trajectory integration.
// All spatial derivatives are closed-form Gaussian-polynomial expressions.

#include <cmath>
#include <vector>

#include "dho/states.hpp"
#include "dho/types.hpp"

namespace dho {

// Evaluator for P, J and their spatial derivatives at one instant. Caches
// the evolved component labels and the pairwise cross-term weights
// N^2 c_i c_j^* f_ij(t).
class PositionFields {
public:
    PositionFields(const SuperposedState& s, const EvolutionParams& p)
        : gamma0_(p.gamma0) {
        const std::size_t m = s.components.size();
        ar_.resize(m);
        ai_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const CoherentAmplitude at = evolve_amplitude(s.components[i].amplitude, p);
            ar_[i] = at.re;
            ai_[i] = at.im;
        }
        const double nn = s.normalization * s.normalization;
        weights_.assign(m * m, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const Complex f =
                    (i == j) ? Complex(1.0, 0.0)
                             : decoherence_factor(s.components[i].amplitude,
                                                  s.components[j].amplitude, p);
                weights_[i * m + j] =
                    nn * s.components[i].coeff * std::conj(s.components[j].coeff) * f;
            }
    }

    // rho(x, x', t) = sum_ij w_ij psi_i(x) psi_j^*(x')
    Complex density_matrix(double x, double xp) const {
        const std::size_t m = ar_.size();
        Complex sum(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                sum += weights_[i * m + j] * psi(i, x) * std::conj(psi(j, xp));
        return sum;
    }

    double density(double x) const { return density_matrix(x, x).real(); }

    // J(x) = Re sum_ij w_ij C_ij(x) psi_i psi_j^* with
    // C_ij = -i/2 (g_i' - g_j'^*) - g0/2 (x + (g_i' + g_j'^*)/2)
    double current(double x) const {
        const std::size_t m = ar_.size();
        Complex sum(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const Complex gi = dlog_psi(i, x);
                const Complex gj = std::conj(dlog_psi(j, x));
                const Complex c = Complex(0.0, -0.5) * (gi - gj) -
                                  0.5 * gamma0_ * (x + 0.5 * (gi + gj));
                sum += weights_[i * m + j] * c * psi(i, x) * std::conj(psi(j, x));
            }
        return sum.real();
    }

    // d/dx of current(); C_ij' vanishes identically (g'' = -1).
    double current_derivative(double x) const {
        const std::size_t m = ar_.size();
        Complex sum(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const Complex gi = dlog_psi(i, x);
                const Complex gj = std::conj(dlog_psi(j, x));
                const Complex c = Complex(0.0, -0.5) * (gi - gj) -
                                  0.5 * gamma0_ * (x + 0.5 * (gi + gj));
                sum += weights_[i * m + j] * c * (gi + gj) * psi(i, x) *
                       std::conj(psi(j, x));
            }
        return sum.real();
    }

private:
    Complex psi(std::size_t i, double x) const {
        const double dx = x - std::sqrt(2.0) * ar_[i];
        const Complex ex(-0.5 * dx * dx, std::sqrt(2.0) * ai_[i] * x + ar_[i] * ai_[i]);
        return std::pow(pi, -0.25) * std::exp(ex);
    }
    Complex dlog_psi(std::size_t i, double x) const {
        return {-(x - std::sqrt(2.0) * ar_[i]), std::sqrt(2.0) * ai_[i]};
    }

    double gamma0_;
    std::vector<double> ar_, ai_;
    std::vector<Complex> weights_;
};

inline Complex density_matrix_position(const SuperposedState& s,
                                       const EvolutionParams& p, double x,
                                       double xp) {
    return PositionFields(s, p).density_matrix(x, xp);
}

inline double probability_density(const SuperposedState& s,
                                  const EvolutionParams& p, double x) {
    return PositionFields(s, p).density(x);
}

inline double probability_current(const SuperposedState& s,
                                  const EvolutionParams& p, double x) {
    return PositionFields(s, p).current(x);
}

// Space-time lattice of P and J samples.
struct GridField {
    double x_min = -10.0, x_max = 10.0;
    int nx = 2;
    std::vector<double> times;
    RealMatrix P;  // nt x nx
    RealMatrix J;

    double x_at(int k) const {
        return x_min + (x_max - x_min) * double(k) / double(nx - 1);
    }
    double dx() const { return (x_max - x_min) / double(nx - 1); }
};

inline GridField sample_grid(const SuperposedState& s, double gamma0,
                             const std::vector<double>& times, double x_min,
                             double x_max, int nx) {
    if (nx < 2) throw std::invalid_argument("sample_grid: nx < 2");
    GridField g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.nx = nx;
    g.times = times;
    const int nt = static_cast<int>(times.size());
    g.P.resize(nt, nx);
    g.J.resize(nt, nx);
    for (int it = 0; it < nt; ++it) {
        const PositionFields f(s, EvolutionParams(gamma0, times[it]));
        for (int k = 0; k < nx; ++k) {
            const double x = g.x_at(k);
            g.P(it, k) = f.density(x);
            g.J(it, k) = f.current(x);
        }
    }
    return g;
}

// max over interior grid points and stored times of |dP/dt + dJ/dx|,
// with dP/dt by symmetric time difference and dJ/dx analytic.
inline double continuity_residual(const SuperposedState& s, double gamma0,
                                  const GridField& grid, double h = 1e-5) {
    double worst = 0.0;
    for (std::size_t it = 0; it < grid.times.size(); ++it) {
        const double t = grid.times[it];
        const double tm = std::max(t - h, 0.0);
        const PositionFields f_plus(s, EvolutionParams(gamma0, t + h));
        const PositionFields f_minus(s, EvolutionParams(gamma0, tm));
        const PositionFields f_now(s, EvolutionParams(gamma0, t));
        const double denom = (t + h) - tm;
        for (int k = 1; k + 1 < grid.nx; ++k) {
            const double x = grid.x_at(k);
            const double dpdt = (f_plus.density(x) - f_minus.density(x)) / denom;
            const double r = std::abs(dpdt + f_now.current_derivative(x));
            worst = std::max(worst, r);
        }
    }
    return worst;
}

struct TrajectoryConfig {
    double dt = 1e-3;
    double t_final = 5.0;
    double v_max = 1e3;       // guidance field is singular at exact nodes
    double density_floor = 1e-12;
};

struct TrajectoryEnsemble {
    std::vector<double> initial_positions;
    std::vector<double> times;           // nt entries
    RealMatrix paths;                    // n_traj x nt
    std::vector<bool> floor_hit;         // per path: halted at a density node
    double solver_tolerance = 0.0;
};

// RK4 on dx/dt = J(x,t)/P(x,t). A path that runs into the density floor is
// flagged and frozen at its last position.
inline TrajectoryEnsemble integrate_trajectories(const SuperposedState& s,
                                                 double gamma0,
                                                 const std::vector<double>& initial,
                                                 const TrajectoryConfig& cfg) {
    const int nt = static_cast<int>(std::lround(cfg.t_final / cfg.dt)) + 1;
    const int n_traj = static_cast<int>(initial.size());

    TrajectoryEnsemble e;
    e.initial_positions = initial;
    e.times.resize(nt);
    e.paths.resize(n_traj, nt);
    e.floor_hit.assign(n_traj, false);
    e.solver_tolerance = cfg.dt * cfg.dt;

    {
        const PositionFields f0(s, EvolutionParams(gamma0, 0.0));
        for (int i = 0; i < n_traj; ++i) {
            if (f0.density(initial[i]) <= cfg.density_floor)
                throw DegenerateInput("integrate_trajectories: launch point below density floor");
            e.paths(i, 0) = initial[i];
        }
    }

    std::vector<PositionFields> fields;
    fields.reserve(2 * nt);  // t_k and t_k + dt/2 for each step
    for (int k = 0; k + 1 < nt; ++k) {
        fields.emplace_back(s, EvolutionParams(gamma0, k * cfg.dt));
        fields.emplace_back(s, EvolutionParams(gamma0, (k + 0.5) * cfg.dt));
    }
    const PositionFields field_end(s, EvolutionParams(gamma0, (nt - 1) * cfg.dt));

    for (int i = 0; i < n_traj; ++i) {
        double x = initial[i];
        for (int k = 0; k + 1 < nt; ++k) {
            e.times[k] = k * cfg.dt;
            if (e.floor_hit[i]) {
                e.paths(i, k + 1) = x;
                continue;
            }
            const PositionFields& f0 = fields[2 * k];
            const PositionFields& fh = fields[2 * k + 1];
            const PositionFields& f1 = (k + 2 < nt) ? fields[2 * (k + 1)] : field_end;
            bool hit = false;
            auto vel = [&](const PositionFields& f, double xx) {
                const double pd = f.density(xx);
                if (pd < cfg.density_floor) {
                    hit = true;
                    return 0.0;
                }
                double v = f.current(xx) / pd;
                if (std::abs(v) > cfg.v_max) v = std::copysign(cfg.v_max, v);
                return v;
            };
            const double k1 = vel(f0, x);
            const double k2 = vel(fh, x + 0.5 * cfg.dt * k1);
            const double k3 = vel(fh, x + 0.5 * cfg.dt * k2);
            const double k4 = vel(f1, x + cfg.dt * k3);
            if (hit) {
                e.floor_hit[i] = true;
                e.paths(i, k + 1) = x;
                continue;
            }
            x += (cfg.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            e.paths(i, k + 1) = x;
        }
    }
    e.times[nt - 1] = (nt - 1) * cfg.dt;
    return e;
}

// Equally spaced quantile launch points of the single-component Gaussian
// |psi_i(x,0)|^2 (variance 1/2), n per wavepacket.
inline std::vector<double> quantile_launch_points(const SuperposedState& s,
                                                  int per_component) {
    auto erf_inv = [](double y) {
        double x = 0.0;  // Newton on erf
        for (int it = 0; it < 60; ++it) {
            const double f = std::erf(x) - y;
            const double d = 2.0 / std::sqrt(pi) * std::exp(-x * x);
            const double step = f / d;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        return x;
    };
    std::vector<double> pts;
    for (const auto& c : s.components) {
        const double center = std::sqrt(2.0) * c.amplitude.re;
        for (int k = 1; k <= per_component; ++k) {
            const double q = double(k) / double(per_component + 1);
            pts.push_back(center + erf_inv(2.0 * q - 1.0));
        }
    }
    return pts;
}

}  // namespace dho
