#pragma once

// Independent numerical oracle for the analytic solutions: fixed-step RK4
// integration of the quantum-optical master equation (zero and finite
// temperature) in truncated Fock space, plus the factorized two-particle
// generator check.

#include <cmath>

#include "dho/fock.hpp"
#include "dho/types.hpp"

namespace dho {

struct LadderOperators {
    ComplexMatrix a;      // annihilation, a|n> = sqrt(n)|n-1>
    ComplexMatrix adag;   // creation
    ComplexMatrix number; // adag * a
    int n_max = 0;

    explicit LadderOperators(int n_max_) : n_max(n_max_) {
        const int dim = n_max + 1;
        a = ComplexMatrix::Zero(dim, dim);
        for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
        adag = a.adjoint();
        number = adag * a;
    }
};

struct IntegratorConfig {
    double dt = 0.005;
    double t_final = 0.0;
    bool renormalize = false;
    double trace_drift_limit = 1e-6;
    double truncation_guard = 1e-8;  // allowed top-two-level population
};

// d rho / dt for the thermal master equation; the nbar = 0 case reduces to
//   (-i - g0/2) N rho + (i - g0/2) rho N + g0 a rho adag.
inline ComplexMatrix lindblad_rhs_matrix(const ComplexMatrix& rho,
                                         const LadderOperators& ops,
                                         double gamma0, double nbar) {
    const Complex i_unit(0.0, 1.0);
    ComplexMatrix out = -i_unit * (ops.number * rho - rho * ops.number);
    const double g_down = gamma0 * (nbar + 1.0);
    out.noalias() += g_down * (ops.a * rho * ops.adag);
    out.noalias() -= (0.5 * g_down) * (ops.number * rho + rho * ops.number);
    if (nbar > 0.0) {
        const double g_up = gamma0 * nbar;
        const ComplexMatrix aad = ops.a * ops.adag;
        out.noalias() += g_up * (ops.adag * rho * ops.a);
        out.noalias() -= (0.5 * g_up) * (aad * rho + rho * aad);
    }
    return out;
}

inline FockDensityMatrix lindblad_rhs(const FockDensityMatrix& m, double gamma0,
                                      double nbar = 0.0) {
    const LadderOperators ops(m.n_max);
    return {lindblad_rhs_matrix(m.elements, ops, gamma0, nbar), m.n_max};
}

// Classical RK4 with re-symmetrization each step. Throws StepTooLarge on
// trace drift and TruncationTooSmall when population leaks into the top two
// Fock levels.
inline FockDensityMatrix integrate(const FockDensityMatrix& m0, double gamma0,
                                   double nbar, const IntegratorConfig& cfg) {
    if (cfg.dt <= 0.0) throw std::invalid_argument("integrate: dt <= 0");
    const LadderOperators ops(m0.n_max);
    ComplexMatrix rho = m0.elements;
    const double trace0 = rho.trace().real();

    const long n_steps = std::lround(cfg.t_final / cfg.dt);
    for (long step = 0; step < n_steps; ++step) {
        const ComplexMatrix k1 = lindblad_rhs_matrix(rho, ops, gamma0, nbar);
        const ComplexMatrix k2 =
            lindblad_rhs_matrix(rho + (0.5 * cfg.dt) * k1, ops, gamma0, nbar);
        const ComplexMatrix k3 =
            lindblad_rhs_matrix(rho + (0.5 * cfg.dt) * k2, ops, gamma0, nbar);
        const ComplexMatrix k4 =
            lindblad_rhs_matrix(rho + cfg.dt * k3, ops, gamma0, nbar);
        rho += (cfg.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint()).eval();

        const double drift = std::abs(rho.trace().real() - trace0);
        if (drift > cfg.trace_drift_limit)
            throw StepTooLarge("integrate: trace drift " + std::to_string(drift));
        const int d = m0.n_max;
        const double top = rho(d, d).real() + (d > 0 ? rho(d - 1, d - 1).real() : 0.0);
        if (top > cfg.truncation_guard)
            throw TruncationTooSmall("integrate: top-level population " +
                                     std::to_string(top));
        if (cfg.renormalize) rho /= rho.trace().real();
    }
    return {rho, m0.n_max};
}

// Max-norm defect of d/dt(rho1 x rho2) = (L rho1) x rho2 + rho1 x (L rho2),
// with the left side evaluated by the two-particle generator
// L1 + L2 acting on the product state.
inline double two_particle_step_check(const FockDensityMatrix& ma,
                                      const FockDensityMatrix& mb,
                                      double gamma0) {
    const int d = ma.n_max + 1;
    if (mb.n_max != ma.n_max)
        throw std::invalid_argument("two_particle_step_check: mismatched truncations");
    const LadderOperators ops(ma.n_max);
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);

    auto kron = [](const ComplexMatrix& x, const ComplexMatrix& y) {
        ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j)
                out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        return out;
    };

    const ComplexMatrix a1 = kron(ops.a, id), a2 = kron(id, ops.a);
    const ComplexMatrix n1 = kron(ops.number, id), n2 = kron(id, ops.number);
    const ComplexMatrix rho12 = kron(ma.elements, mb.elements);

    const Complex i_unit(0.0, 1.0);
    auto dissipator = [&](const ComplexMatrix& a_op, const ComplexMatrix& n_op,
                          const ComplexMatrix& r) {
        return -i_unit * (n_op * r - r * n_op) +
               gamma0 * (a_op * r * a_op.adjoint()) -
               (0.5 * gamma0) * (n_op * r + r * n_op);
    };
    const ComplexMatrix lhs = dissipator(a1, n1, rho12) + dissipator(a2, n2, rho12);

    const ComplexMatrix l_ma = lindblad_rhs_matrix(ma.elements, ops, gamma0, 0.0);
    const ComplexMatrix l_mb = lindblad_rhs_matrix(mb.elements, ops, gamma0, 0.0);
    const ComplexMatrix rhs = kron(l_ma, mb.elements) + kron(ma.elements, l_mb);

    return (lhs - rhs).cwiseAbs().maxCoeff();
}

// Diagonal Gibbs state diag((nbar/(nbar+1))^n), normalized on the truncation.
inline FockDensityMatrix thermal_state(double nbar, int n_max) {
    FockDensityMatrix rho;
    rho.n_max = n_max;
    rho.elements = ComplexMatrix::Zero(n_max + 1, n_max + 1);
    const double q = nbar / (nbar + 1.0);
    double w = 1.0, total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        rho.elements(n, n) = w;
        total += w;
        w *= q;
    }
    rho.elements /= total;
    return rho;
}

}  // namespace dho
