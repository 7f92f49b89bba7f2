#pragma once

// Relative entropy of coherence C_r = S(rho_d) - S(rho) for the states of
// interest: closed-form series for coherent and cat states in the energy
// basis, Gaussian differential entropies for the position/momentum bases,
// thermal widths, and the superposition bounds.

#include <cmath>
#include <vector>

#include "dho/fock.hpp"
#include "dho/states.hpp"
#include "dho/types.hpp"

namespace dho {

enum class CoherenceBasis { energy, position, momentum };
enum class CoherenceMethod { closed_form, series, spectral };

struct CoherenceResult {
    double value = 0.0;  // nats
    CoherenceBasis basis = CoherenceBasis::energy;
    CoherenceMethod method = CoherenceMethod::closed_form;
};

namespace detail {
// sum_{n>=2} m^n ln(n!) / n!, stopped once the running term is negligible
// and n is past the Poisson bulk.
inline double poisson_logfact_series(double m) {
    double sum = 0.0;
    double term_base = m;  // m^n / n!
    double log_fact = 0.0;
    const double bulk = m + 10.0 * std::sqrt(m);
    for (int n = 2; n < 100000; ++n) {
        term_base *= m / double(n);
        log_fact += std::log(double(n));
        const double term = term_base * log_fact;
        sum += term;
        if (term < 1e-15 * (sum + 1e-300) && double(n) > bulk) break;
    }
    return sum;
}
}  // namespace detail

// Energy-basis C_r of a single coherent state, |alpha(t)|^2 = e^{-g0 t}|a|^2:
//   C_r = m(1 - ln m) + e^{-m} sum_n m^n ln(n!)/n!
inline CoherenceResult cr_coherent_energy(const CoherentAmplitude& a,
                                          const EvolutionParams& p) {
    const double m = a.mod_sq() * std::exp(-p.gamma0 * p.t);
    if (m == 0.0) return {0.0, CoherenceBasis::energy, CoherenceMethod::series};
    const double value =
        m * (1.0 - std::log(m)) + std::exp(-m) * detail::poisson_logfact_series(m);
    return {value, CoherenceBasis::energy, CoherenceMethod::series};
}

// Pure-state C_r in the energy basis: the diagonal entropy of the evolved
// state vector. Valid for unitary evolution of any superposition, or a
// single component under dissipation (which stays pure).
inline CoherenceResult cr_pure_state_energy(const SuperposedState& s,
                                            const EvolutionParams& p, int n_max) {
    if (p.gamma0 > 0.0 && s.components.size() >= 2)
        throw NotPure("cr_pure_state_energy: dissipative multi-component state is mixed");
    ComplexVector v = ComplexVector::Zero(n_max + 1);
    for (const auto& c : s.components) {
        const FockVector fv =
            coherent_fock_vector(evolve_amplitude(c.amplitude, p), n_max);
        v += s.normalization * c.coeff * fv.coeffs;
    }
    std::vector<double> probs(n_max + 1);
    for (int n = 0; n <= n_max; ++n) probs[n] = std::norm(v[n]);
    return {detail::entropy_of(probs), CoherenceBasis::energy,
            CoherenceMethod::spectral};
}

// Non-dissipative cat |alpha> + |-alpha>:
//   C_r = ln(2 cosh m) - m ln(m) tanh(m)
//         - (2 cosh m)^{-1} sum_n m^n (1+(-1)^n)/n! * ln[(1+(-1)^n)/n!]
// with m = |alpha|^2; only even n contribute.
inline CoherenceResult cr_cat_closed_form(double alpha_mod_sq) {
    const double m = alpha_mod_sq;
    if (m < 0.0) throw DomainError("cr_cat_closed_form: negative |alpha|^2");
    if (m == 0.0) return {0.0, CoherenceBasis::energy, CoherenceMethod::closed_form};
    double sum = 0.0;
    double m_pow = 1.0;    // m^n
    double log_fact = 0.0; // ln n!
    const double bulk = m + 10.0 * std::sqrt(m);
    for (int n = 0; n < 100000; ++n) {
        if (n > 0) {
            m_pow *= m;
            log_fact += std::log(double(n));
        }
        if (n % 2 == 0) {
            // (1+(-1)^n)/n! = 2/n!
            const double term = m_pow * std::exp(std::log(2.0) - log_fact) *
                                (std::log(2.0) - log_fact);
            sum += term;
            if (std::abs(term) < 1e-15 * (std::abs(sum) + 1e-300) && double(n) > bulk)
                break;
        }
    }
    const double value = std::log(2.0 * std::cosh(m)) -
                         m * std::log(m) * std::tanh(m) -
                         sum / (2.0 * std::cosh(m));
    return {value, CoherenceBasis::energy, CoherenceMethod::closed_form};
}

// Spectral route: diagonal entropy minus von Neumann entropy.
inline CoherenceResult cr_mixed_energy(const FockDensityMatrix& m) {
    double v = diagonal_entropy(m).nats - von_neumann_entropy(m).nats;
    if (v < 0.0) {
        if (v < -1e-9)
            throw NegativeBeyondTolerance("cr_mixed_energy: C_r = " + std::to_string(v));
        v = 0.0;
    }
    return {v, CoherenceBasis::energy, CoherenceMethod::spectral};
}

// Differential entropy of a Gaussian position density with the given
// variance; (1 + ln pi)/2 for the pure coherent width 1/2.
inline CoherenceResult cr_gaussian_position(double variance) {
    if (variance <= 0.0) throw DomainError("cr_gaussian_position: variance <= 0");
    return {0.5 * (1.0 + std::log(2.0 * pi * variance)), CoherenceBasis::position,
            CoherenceMethod::closed_form};
}

// sigma(t)^2 = (2 nbar (1 - e^{-g0 t}) + 1) / 2
inline double thermal_variance(const EvolutionParams& p) {
    return 0.5 * (2.0 * p.nbar * (1.0 - std::exp(-p.gamma0 * p.t)) + 1.0);
}

// nbar = 1/(e^{1/kBT} - 1) in scaled units (hbar omega0 = 1).
inline double nbar_from_kbt(double kbt) {
    if (kbt < 0.0) throw DomainError("nbar_from_kbt: negative temperature");
    if (kbt == 0.0) return 0.0;
    return 1.0 / std::expm1(1.0 / kbt);
}

inline double kbt_from_nbar(double nbar) {
    if (nbar < 0.0) throw DomainError("kbt_from_nbar: negative occupation");
    if (nbar == 0.0) return 0.0;
    return 1.0 / std::log1p(1.0 / nbar);
}

// Upper bound on the cat-state coherence:
//   [e^{-|a|^2} cosh|a|^2]^{-1} (C_r(coherent) + ln 2)
inline double cr_upper_bound_cat(const CoherentAmplitude& a,
                                 const EvolutionParams& p) {
    const double m = a.mod_sq();
    return (cr_coherent_energy(a, p).value + std::log(2.0)) /
           (std::exp(-m) * std::cosh(m));
}

struct TwoCatInequality {
    double lhs = 0.0;  // C_r(|T><T|)
    double rhs = 0.0;  // N_T^2 [C_r(Phi) + C_r(Psi) + 2 ln 2]
};

// Superposition-of-cats inequality, non-dissipative case.
inline TwoCatInequality cr_two_cat_inequality(const CoherentAmplitude& alpha,
                                              int n_max = -1) {
    const EvolutionParams p(0.0, 0.0);
    const SuperposedState t_state = make_cat(alpha, CatKind::two_cat_superposition);
    const SuperposedState phi = make_cat(alpha, CatKind::plus_minus_alpha);
    const SuperposedState psi = make_cat(alpha, CatKind::half_alpha_pair);
    if (n_max < 0) n_max = default_n_max(t_state);
    const double nt2 = t_state.normalization * t_state.normalization;
    TwoCatInequality r;
    r.lhs = cr_pure_state_energy(t_state, p, n_max).value;
    r.rhs = nt2 * (cr_pure_state_energy(phi, p, n_max).value +
                   cr_pure_state_energy(psi, p, n_max).value + 2.0 * std::log(2.0));
    return r;
}

}  // namespace dho
