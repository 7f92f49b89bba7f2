#pragma once

// Truncated Fock-space representations of coherent-state superpositions:
// coefficient vectors, density matrices, a cyclic-Jacobi Hermitian
// eigensolver and the entropies built on it.

#include <algorithm>
#include <cmath>
#include <vector>

#include "dho/states.hpp"
#include "dho/types.hpp"

namespace dho {

// Default truncation: Poisson tail below ~1e-12 for the largest component
// at t = 0 (amplitudes only shrink under the dissipative map).
inline int default_n_max(double max_mod_sq) {
    return static_cast<int>(
        std::ceil(max_mod_sq + 10.0 * std::sqrt(max_mod_sq) + 20.0));
}

inline int default_n_max(const SuperposedState& s) {
    double m = 0.0;
    for (const auto& c : s.components) m = std::max(m, c.amplitude.mod_sq());
    return default_n_max(m);
}

// ln(n!) by cumulative summation of ln k.
inline std::vector<double> log_factorial_table(int n_max) {
    std::vector<double> lf(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) lf[n] = lf[n - 1] + std::log(double(n));
    return lf;
}

struct FockVector {
    ComplexVector coeffs;
    int n_max = 0;

    Complex inner(const FockVector& other) const {
        return coeffs.dot(other.coeffs);  // conjugates *this
    }
};

// |alpha> in the number basis via the stable recurrence
// c_{n+1} = c_n * alpha / sqrt(n+1).
inline FockVector coherent_fock_vector(const CoherentAmplitude& a, int n_max,
                                       double tail_tol = 1e-9) {
    if (n_max < 0) throw std::invalid_argument("coherent_fock_vector: n_max < 0");
    FockVector v;
    v.n_max = n_max;
    v.coeffs = ComplexVector::Zero(n_max + 1);
    Complex c = std::exp(Complex(-0.5 * a.mod_sq(), 0.0));
    const Complex z = a.value();
    double norm_sq = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        v.coeffs[n] = c;
        norm_sq += std::norm(c);
        c *= z / std::sqrt(double(n + 1));
    }
    if (1.0 - norm_sq > tail_tol)
        throw TruncationTooSmall("coherent_fock_vector: Poisson tail " +
                                 std::to_string(1.0 - norm_sq) + " exceeds tolerance");
    return v;
}

struct FockDensityMatrix {
    ComplexMatrix elements;
    int n_max = 0;

    double trace() const { return elements.trace().real(); }
    double purity() const { return (elements * elements).trace().real(); }
    double hermiticity_defect() const {
        return (elements - elements.adjoint()).cwiseAbs().maxCoeff();
    }
};

// rho(t) = N^2 sum_ij c_i c_j^* f_ij(t) |alpha_i(t)><alpha_j(t)|
// with f_ij the pairwise decoherence factor (f_ii = 1).
inline FockDensityMatrix density_from_superposition(const SuperposedState& s,
                                                    const EvolutionParams& p,
                                                    int n_max,
                                                    double tail_tol = 1e-9) {
    const std::size_t m = s.components.size();
    std::vector<FockVector> vecs(m);
    for (std::size_t i = 0; i < m; ++i)
        vecs[i] = coherent_fock_vector(evolve_amplitude(s.components[i].amplitude, p),
                                       n_max, tail_tol);
    FockDensityMatrix rho;
    rho.n_max = n_max;
    rho.elements = ComplexMatrix::Zero(n_max + 1, n_max + 1);
    const double nn = s.normalization * s.normalization;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Complex f = (i == j) ? Complex(1.0, 0.0)
                                 : decoherence_factor(s.components[i].amplitude,
                                                      s.components[j].amplitude, p);
            const Complex w = nn * s.components[i].coeff *
                              std::conj(s.components[j].coeff) * f;
            rho.elements.noalias() +=
                w * (vecs[i].coeffs * vecs[j].coeffs.adjoint());
        }
    }
    // round-off symmetrization
    rho.elements = 0.5 * (rho.elements + rho.elements.adjoint()).eval();
    return rho;
}

// All eigenvalues of a Hermitian matrix, descending, by cyclic Jacobi
// rotations. Off-diagonal Frobenius mass is driven below 1e-13 * ||m||.
inline std::vector<double> hermitian_eigenvalues(const FockDensityMatrix& m,
                                                 int max_sweeps = 60) {
    ComplexMatrix a = m.elements;
    const int n = static_cast<int>(a.rows());
    const double scale = std::max(a.norm(), 1e-300);
    const double target = 1e-13 * scale;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += std::norm(a(p, q));
        return std::sqrt(2.0 * s);
    };

    int sweep = 0;
    while (off_norm() > target) {
        if (++sweep > max_sweeps)
            throw NoConvergence("hermitian_eigenvalues: Jacobi sweep budget exhausted");
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq < 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Phase factor makes the 2x2 block real, then a standard
                // symmetric Jacobi rotation annihilates the off-diagonal.
                const Complex phase = apq / abs_apq;
                const double tau = (aqq - app) / (2.0 * abs_apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sv = t * c;
                // Unitary J: col p = (c, -s e^{-i phi}), col q = (s, c e^{-i phi}).
                for (int k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sv * std::conj(phase) * akq;
                    a(k, q) = sv * akp + c * std::conj(phase) * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sv * phase * aqk;
                    a(q, k) = sv * apk + c * phase * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

struct EntropyValue {
    double nats = 0.0;
};

namespace detail {
// -sum p ln p with 0 ln 0 = 0; negatives below the clamp are round-off.
inline double entropy_of(const std::vector<double>& probs, double clamp = 1e-10) {
    double s = 0.0;
    for (double p : probs) {
        if (p <= 0.0) {
            if (p < -clamp)
                throw NegativeBeyondTolerance("entropy: eigenvalue below -1e-10");
            continue;
        }
        s -= p * std::log(p);
    }
    return s;
}
}  // namespace detail

inline EntropyValue von_neumann_entropy(const FockDensityMatrix& m) {
    return {detail::entropy_of(hermitian_eigenvalues(m))};
}

inline EntropyValue diagonal_entropy(const FockDensityMatrix& m) {
    std::vector<double> d(m.n_max + 1);
    for (int n = 0; n <= m.n_max; ++n) d[n] = m.elements(n, n).real();
    return {detail::entropy_of(d)};
}

// 1/2 sum |lambda_i| of the Hermitian difference.
inline double trace_distance(const FockDensityMatrix& a, const FockDensityMatrix& b) {
    FockDensityMatrix d;
    d.n_max = a.n_max;
    d.elements = a.elements - b.elements;
    double s = 0.0;
    for (double ev : hermitian_eigenvalues(d)) s += std::abs(ev);
    return 0.5 * s;
}

}  // namespace dho
