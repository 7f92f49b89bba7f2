#pragma once

// Two identical damped oscillators: (anti)symmetrized coherent-state pairs,
// reduced single-particle states by statistics, mean square separation,
// joint detection probability through a finite window, and the two-particle
// position density.

#include <cmath>
#include <tuple>

#include "dho/coherence.hpp"
#include "dho/fock.hpp"
#include "dho/numerics.hpp"
#include "dho/states.hpp"
#include "dho/types.hpp"

namespace dho {

enum class Statistics { MB, BE, FD };

inline double statistics_sign(Statistics s) {
    switch (s) {
        case Statistics::MB: return 0.0;
        case Statistics::BE: return +1.0;
        case Statistics::FD: return -1.0;
    }
    throw std::logic_error("statistics_sign");
}

struct TwoParticleState {
    CoherentAmplitude alpha;
    CoherentAmplitude beta;
    Statistics stats = Statistics::MB;
    double norm = 0.0;  // N_pm; 1/sqrt(2) for MB by convention

    TwoParticleState(CoherentAmplitude alpha_, CoherentAmplitude beta_,
                     Statistics stats_)
        : alpha(alpha_), beta(beta_), stats(stats_) {
        const double ov2 = std::norm(overlap(alpha, beta));
        const double s = statistics_sign(stats);
        if (stats == Statistics::FD && alpha == beta)
            throw DegenerateInput("TwoParticleState: FD requires alpha != beta");
        norm = 1.0 / std::sqrt(2.0 * (1.0 + s * ov2));
    }
};

struct DetectorWindow {
    double half_width = 1.0;
    double center = 0.0;

    explicit DetectorWindow(double half_width_, double center_ = 0.0)
        : half_width(half_width_), center(center_) {
        if (half_width <= 0.0) throw DomainError("DetectorWindow: d <= 0");
    }
};

// Reduced single-particle state in truncated Fock space:
// BE/FD: N^2 (|a><a| + |b><b| +- <a|b>|f|^2 |a><b| +- <b|a>|f|^2 |b><a|),
// MB:    (|a><a| + |b><b|)/2, all at evolved labels.
inline FockDensityMatrix reduced_single_particle(const TwoParticleState& tp,
                                                 const EvolutionParams& p,
                                                 int n_max) {
    const CoherentAmplitude at = evolve_amplitude(tp.alpha, p);
    const CoherentAmplitude bt = evolve_amplitude(tp.beta, p);
    const FockVector va = coherent_fock_vector(at, n_max);
    const FockVector vb = coherent_fock_vector(bt, n_max);

    FockDensityMatrix rho;
    rho.n_max = n_max;
    if (tp.stats == Statistics::MB) {
        rho.elements = 0.5 * (va.coeffs * va.coeffs.adjoint() +
                              vb.coeffs * vb.coeffs.adjoint());
    } else {
        const double s = statistics_sign(tp.stats);
        const double f2 = std::norm(decoherence_factor(tp.alpha, tp.beta, p));
        const Complex ov_ab = overlap(at, bt);  // <a(t)|b(t)>
        const double nn = tp.norm * tp.norm;
        rho.elements =
            nn * (va.coeffs * va.coeffs.adjoint() + vb.coeffs * vb.coeffs.adjoint() +
                  (s * f2 * ov_ab) * (va.coeffs * vb.coeffs.adjoint()) +
                  (s * f2 * std::conj(ov_ab)) * (vb.coeffs * va.coeffs.adjoint()));
    }
    rho.elements = 0.5 * (rho.elements + rho.elements.adjoint()).eval();
    return rho;
}

inline CoherenceResult cr_by_statistics(const TwoParticleState& tp,
                                        const EvolutionParams& p, int n_max) {
    return cr_mixed_energy(reduced_single_particle(tp, p, n_max));
}

namespace detail {

// Coherent-state matrix elements of x = (a + adag)/sqrt(2):
//   <a|x|b>   = <a|b> (b + a*) / sqrt(2)
//   <a|x^2|b> = <a|b> ((a* + b)^2 + 1) / 2
inline Complex x_elem(Complex a, Complex b) {
    return overlap(CoherentAmplitude(a), CoherentAmplitude(b)) *
           (b + std::conj(a)) / std::sqrt(2.0);
}
inline Complex x2_elem(Complex a, Complex b) {
    const Complex s = std::conj(a) + b;
    return overlap(CoherentAmplitude(a), CoherentAmplitude(b)) * 0.5 * (s * s + 1.0);
}

}  // namespace detail

// <(x1 - x2)^2> for distinguishable particles at evolved labels.
inline double mss_mb_general(Complex at, Complex bt) {
    return std::real(detail::x2_elem(at, at) + detail::x2_elem(bt, bt) -
                     2.0 * detail::x_elem(at, at) * detail::x_elem(bt, bt));
}

// Mean square separation. Real beta = -alpha uses the closed forms
//   MB: 1 + 8 a^2 e^{-g0 t} cos^2 t
//   +-: [1 + 8 a^2 e^{-g0 t} cos^2 t +- e^{-4a^2}(1 - 8 a^2 e^{-g0 t} sin^2 t)]
//       / (1 +- e^{-4a^2});
// otherwise the general exchange-term expression with coherent matrix
// elements of x and x^2.
inline double mss(const TwoParticleState& tp, const EvolutionParams& p) {
    const bool closed_form = tp.alpha.im == 0.0 && tp.beta.im == 0.0 &&
                             tp.beta.re == -tp.alpha.re;
    if (closed_form) {
        const double a2 = tp.alpha.re * tp.alpha.re;
        const double damp = 8.0 * a2 * std::exp(-p.gamma0 * p.t);
        const double c = std::cos(p.t), sn = std::sin(p.t);
        const double mb = 1.0 + damp * c * c;
        if (tp.stats == Statistics::MB) return mb;
        const double s = statistics_sign(tp.stats);
        const double e4 = std::exp(-4.0 * a2);
        return (mb + s * e4 * (1.0 - damp * sn * sn)) / (1.0 + s * e4);
    }
    const Complex at = evolve_amplitude(tp.alpha, p).value();
    const Complex bt = evolve_amplitude(tp.beta, p).value();
    const double mb = mss_mb_general(at, bt);
    if (tp.stats == Statistics::MB) return mb;
    const double s = statistics_sign(tp.stats);
    const double f2 = std::norm(decoherence_factor(tp.alpha, tp.beta, p));
    const Complex x_ab = detail::x_elem(at, bt);
    const Complex x2_ab = detail::x2_elem(at, bt);
    const Complex ov_ba = overlap(CoherentAmplitude(bt), CoherentAmplitude(at));
    const double nn = tp.norm * tp.norm;
    return 2.0 * nn *
           (mb - s * 2.0 * f2 * std::norm(x_ab) +
            s * 2.0 * f2 * std::real(x2_ab * ov_ba));
}

struct MssDifferences {
    double fd_mb = 0.0;
    double mb_be = 0.0;
    double fd_be = 0.0;
    bool degenerate = false;  // alpha = 0, all separations vanish
};

// Closed-form statistics gaps 8 a^2 e^{-g0 t} / (e^{4a^2} -+ 1) and
// 8 a^2 e^{-g0 t} / sinh(4 a^2), for real alpha = -beta.
inline MssDifferences mss_differences(double alpha, const EvolutionParams& p) {
    MssDifferences d;
    if (alpha == 0.0) {
        d.degenerate = true;
        return d;
    }
    const double a2 = alpha * alpha;
    const double pre = 8.0 * a2 * std::exp(-p.gamma0 * p.t);
    d.fd_mb = pre / std::expm1(4.0 * a2);
    d.mb_be = pre / (std::exp(4.0 * a2) + 1.0);
    d.fd_be = pre / std::sinh(4.0 * a2);
    return d;
}

// d/dgamma0 of the closed-form MSS:
//   MB: -8 a^2 t e^{-g0 t} cos^2 t
//   +-: -8 a^2 t e^{-g0 t} (e^{4a^2} cos^2 t -+ sin^2 t) / (+-1 + e^{4a^2})
inline double mss_gamma_derivative(double alpha, const EvolutionParams& p,
                                   Statistics stats) {
    const double a2 = alpha * alpha;
    const double pre = -8.0 * a2 * p.t * std::exp(-p.gamma0 * p.t);
    const double c2 = std::cos(p.t) * std::cos(p.t);
    if (stats == Statistics::MB) return pre * c2;
    const double s = statistics_sign(stats);
    const double s2 = std::sin(p.t) * std::sin(p.t);
    const double e4 = std::exp(4.0 * a2);
    return pre * (e4 * c2 - s * s2) / (s + e4);
}

// Diagonal two-particle position density
// rho_pm(x1,x2,t) = 2 N^2 [rho_MB +- |f|^2 Re{psi_a(x1)psi_b*(x1)psi_b(x2)psi_a*(x2)}].
inline double two_particle_position_density(const TwoParticleState& tp,
                                            const EvolutionParams& p, double x1,
                                            double x2) {
    const auto psi_a = [&](double x) { return position_wavefunction(tp.alpha, p, x); };
    const auto psi_b = [&](double x) { return position_wavefunction(tp.beta, p, x); };
    const double mb = 0.5 * (std::norm(psi_a(x1)) * std::norm(psi_b(x2)) +
                             std::norm(psi_b(x1)) * std::norm(psi_a(x2)));
    if (tp.stats == Statistics::MB) return mb;
    const double s = statistics_sign(tp.stats);
    const double f2 = std::norm(decoherence_factor(tp.alpha, tp.beta, p));
    const double cross = std::real(psi_a(x1) * std::conj(psi_b(x1)) * psi_b(x2) *
                                   std::conj(psi_a(x2)));
    return 2.0 * tp.norm * tp.norm * (mb + s * f2 * cross);
}

namespace detail {

struct WindowIntegrals {
    double i_alpha = 0.0;
    double i_beta = 0.0;
    Complex i_cross{0.0, 0.0};
};

// The three window integrals over [-d, d]. Real beta = -alpha has erf
// closed forms; the general pair goes through adaptive quadrature.
inline WindowIntegrals window_integrals(const TwoParticleState& tp,
                                        const EvolutionParams& p, double d) {
    WindowIntegrals w;
    const bool closed_form = tp.alpha.im == 0.0 && tp.beta.im == 0.0 &&
                             tp.beta.re == -tp.alpha.re;
    if (closed_form) {
        const double a = tp.alpha.re;
        const double env = std::sqrt(2.0) * a * std::exp(-0.5 * p.gamma0 * p.t);
        const double xc = env * std::cos(p.t);
        w.i_alpha = 0.5 * (std::erf(d + xc) + std::erf(d - xc));
        w.i_beta = w.i_alpha;
        const double ps = env * std::sin(p.t);
        const double pre =
            0.5 * std::exp(-2.0 * a * a * std::exp(-p.gamma0 * p.t));
        w.i_cross = pre * (complex_erf(Complex(d, ps)) + complex_erf(Complex(d, -ps)));
        return w;
    }
    w.i_alpha = adaptive_quadrature(
        [&](double x) { return std::norm(position_wavefunction(tp.alpha, p, x)); },
        -d, d);
    w.i_beta = adaptive_quadrature(
        [&](double x) { return std::norm(position_wavefunction(tp.beta, p, x)); },
        -d, d);
    const double re = adaptive_quadrature(
        [&](double x) {
            return std::real(position_wavefunction(tp.alpha, p, x) *
                             std::conj(position_wavefunction(tp.beta, p, x)));
        },
        -d, d);
    const double im = adaptive_quadrature(
        [&](double x) {
            return std::imag(position_wavefunction(tp.alpha, p, x) *
                             std::conj(position_wavefunction(tp.beta, p, x)));
        },
        -d, d);
    w.i_cross = Complex(re, im);
    return w;
}

}  // namespace detail

// p_pm = 2 N_pm^2 { 1 +- |f(t)|^2 |I_cross|^2 / (I_alpha I_beta) },
// the BE/FD joint detection probability relative to MB.
inline double joint_detection_ratio(const TwoParticleState& tp,
                                    const EvolutionParams& p,
                                    const DetectorWindow& win) {
    if (tp.stats == Statistics::MB) return 1.0;
    const auto w = detail::window_integrals(tp, p, win.half_width);
    if (w.i_alpha < 1e-300 || w.i_beta < 1e-300)
        throw EmptyWindow("joint_detection_ratio: window misses both packets");
    const double s = statistics_sign(tp.stats);
    const double f2 = std::norm(decoherence_factor(tp.alpha, tp.beta, p));
    return 2.0 * tp.norm * tp.norm *
           (1.0 + s * f2 * std::norm(w.i_cross) / (w.i_alpha * w.i_beta));
}

}  // namespace dho
