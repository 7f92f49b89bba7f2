#pragma once

// Coherent-state algebra for the damped harmonic oscillator in scaled units:
// overlaps, dissipative evolution of the state label, the decoherence factor
// attached to superposition cross terms, and the position/momentum
// wavefunctions of an evolved coherent state.

#include <cmath>
#include <complex>
#include <vector>

#include "dho/types.hpp"

namespace dho {

// <a|b> = exp(-(|a|^2+|b|^2)/2 + a* b). Never exactly zero analytically,
// but may underflow for very distant labels.
inline Complex overlap(const CoherentAmplitude& a, const CoherentAmplitude& b) {
    const Complex za = a.value(), zb = b.value();
    return std::exp(-0.5 * (a.mod_sq() + b.mod_sq()) + std::conj(za) * zb);
}

// alpha(t) = alpha e^{-(i + gamma0/2) t}
inline CoherentAmplitude evolve_amplitude(const CoherentAmplitude& a,
                                          const EvolutionParams& p) {
    const Complex z = a.value() * std::exp(Complex(-0.5 * p.gamma0 * p.t, -p.t));
    return CoherentAmplitude(z);
}

// f(t) = <b|a>^{1 - e^{-gamma0 t}}, principal branch.
// If the overlap underflows to zero with a positive exponent the result is 0
// and *underflow (when given) is set.
inline Complex decoherence_factor(const CoherentAmplitude& a,
                                  const CoherentAmplitude& b,
                                  const EvolutionParams& p,
                                  bool* underflow = nullptr) {
    if (underflow) *underflow = false;
    const double expnt = 1.0 - std::exp(-p.gamma0 * p.t);
    if (expnt == 0.0) return Complex(1.0, 0.0);
    const Complex ov = overlap(b, a);
    if (std::abs(ov) == 0.0) {
        if (underflow) *underflow = true;
        return Complex(0.0, 0.0);
    }
    return std::exp(expnt * std::log(ov));
}

// Residual of <a(t)|b(t)> = <a|b>^{e^{-gamma0 t}}.
inline double evolved_overlap_identity_check(const CoherentAmplitude& a,
                                             const CoherentAmplitude& b,
                                             const EvolutionParams& p) {
    const Complex lhs = overlap(evolve_amplitude(a, p), evolve_amplitude(b, p));
    const Complex ov = overlap(a, b);
    const Complex rhs = std::exp(std::exp(-p.gamma0 * p.t) * std::log(ov));
    return std::abs(lhs - rhs);
}

// tau_D = (2/|a-b|^2) / gamma0
inline double decoherence_time(const CoherentAmplitude& a,
                               const CoherentAmplitude& b, double gamma0) {
    const double sep2 = std::norm(a.value() - b.value());
    if (sep2 == 0.0 || gamma0 == 0.0)
        throw DegenerateInput("decoherence_time: coincident labels or gamma0 = 0");
    return 2.0 / (gamma0 * sep2);
}

// psi_alpha(x,t) = pi^{-1/4} exp[-(x - sqrt2 ar)^2/2 + i sqrt2 ai x + i ar ai]
// with alpha(t) = evolve_amplitude(a, p).
inline Complex position_wavefunction(const CoherentAmplitude& a,
                                     const EvolutionParams& p, double x) {
    const CoherentAmplitude at = evolve_amplitude(a, p);
    const double ar = at.re, ai = at.im;
    const double dx = x - std::sqrt(2.0) * ar;
    const Complex ex(-0.5 * dx * dx, std::sqrt(2.0) * ai * x + ar * ai);
    return std::pow(pi, -0.25) * std::exp(ex);
}

// Fourier transform (e^{-ipx} convention) of the position wavefunction:
// phi(p) = pi^{-1/4} exp[-(p - sqrt2 ai)^2/2 - i sqrt2 ar p + 3 i ar ai].
// |phi|^2 is a unit-width Gaussian centred at sqrt2 ai(t).
inline Complex momentum_wavefunction(const CoherentAmplitude& a,
                                     const EvolutionParams& p, double mom) {
    const CoherentAmplitude at = evolve_amplitude(a, p);
    const double ar = at.re, ai = at.im;
    const double dp = mom - std::sqrt(2.0) * ai;
    const Complex ex(-0.5 * dp * dp, -std::sqrt(2.0) * ar * mom + 3.0 * ar * ai);
    return std::pow(pi, -0.25) * std::exp(ex);
}

// Normalized weighted list of coherent components. Covers a single coherent
// state, cat states and superpositions of cats. The stored coefficients are
// the raw component weights; `normalization` is the overall prefactor making
// the state unit norm via the Gram quadratic form c^dag G c.
struct SuperposedState {
    struct Component {
        Complex coeff;
        CoherentAmplitude amplitude;
    };
    std::vector<Component> components;
    double normalization = 1.0;

    static SuperposedState from_components(std::vector<Component> comps) {
        SuperposedState s;
        s.components = std::move(comps);
        double q = 0.0;
        for (const auto& ci : s.components)
            for (const auto& cj : s.components)
                q += std::real(std::conj(ci.coeff) * cj.coeff *
                               overlap(ci.amplitude, cj.amplitude));
        if (q <= 0.0)
            throw DegenerateInput("SuperposedState: non-positive Gram form");
        s.normalization = 1.0 / std::sqrt(q);
        return s;
    }

    static SuperposedState coherent(const CoherentAmplitude& a) {
        return from_components({{Complex(1.0, 0.0), a}});
    }

    // Squared norm before applying `normalization`; equals
    // normalization^{-2} by construction.
    double gram_form() const {
        double q = 0.0;
        for (const auto& ci : components)
            for (const auto& cj : components)
                q += std::real(std::conj(ci.coeff) * cj.coeff *
                               overlap(ci.amplitude, cj.amplitude));
        return q;
    }
};

enum class CatKind {
    plus_minus_alpha,     // |alpha> + |-alpha>
    half_alpha_pair,      // |alpha/2> + |-alpha/2>
    two_cat_superposition // (|Phi> + |Psi>)/sqrt2, each cat pre-normalized
};

inline SuperposedState make_cat(const CoherentAmplitude& alpha, CatKind kind) {
    const Complex z = alpha.value();
    switch (kind) {
        case CatKind::plus_minus_alpha:
            return SuperposedState::from_components(
                {{1.0, CoherentAmplitude(z)}, {1.0, CoherentAmplitude(-z)}});
        case CatKind::half_alpha_pair:
            return SuperposedState::from_components(
                {{1.0, CoherentAmplitude(0.5 * z)}, {1.0, CoherentAmplitude(-0.5 * z)}});
        case CatKind::two_cat_superposition: {
            const SuperposedState phi = make_cat(alpha, CatKind::plus_minus_alpha);
            const SuperposedState psi = make_cat(alpha, CatKind::half_alpha_pair);
            const double w = 1.0 / std::sqrt(2.0);
            std::vector<SuperposedState::Component> comps;
            for (const auto& c : phi.components)
                comps.push_back({w * phi.normalization * c.coeff, c.amplitude});
            for (const auto& c : psi.components)
                comps.push_back({w * psi.normalization * c.coeff, c.amplitude});
            return SuperposedState::from_components(std::move(comps));
        }
    }
    throw std::logic_error("make_cat: unknown kind");
}

}  // namespace dho
