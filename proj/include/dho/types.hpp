#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <cmath>

#include <Eigen/Dense>

namespace dho {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double pi = 3.14159265358979323846;

// Label of a coherent state in scaled phase-space units.
struct CoherentAmplitude {
    double re = 0.0;
    double im = 0.0;

    CoherentAmplitude() = default;
    CoherentAmplitude(double re_, double im_ = 0.0) : re(re_), im(im_) {
        if (!std::isfinite(re) || !std::isfinite(im))
            throw std::invalid_argument("CoherentAmplitude: non-finite label");
    }
    CoherentAmplitude(Complex z) : CoherentAmplitude(z.real(), z.imag()) {}

    Complex value() const { return {re, im}; }
    double mod_sq() const { return re * re + im * im; }

    friend bool operator==(const CoherentAmplitude& a, const CoherentAmplitude& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Scaled damping, time and thermal occupation (hbar = m = omega0 = 1).
struct EvolutionParams {
    double gamma0 = 0.0;
    double t = 0.0;
    double nbar = 0.0;

    EvolutionParams() = default;
    EvolutionParams(double gamma0_, double t_, double nbar_ = 0.0)
        : gamma0(gamma0_), t(t_), nbar(nbar_) {
        if (gamma0 < 0.0) throw std::invalid_argument("EvolutionParams: gamma0 < 0");
        if (t < 0.0) throw std::invalid_argument("EvolutionParams: t < 0");
        if (nbar < 0.0) throw std::invalid_argument("EvolutionParams: nbar < 0");
    }

    // Relaxation time 1/gamma0; undefined for the non-dissipative case.
    double relaxation_time() const {
        if (gamma0 == 0.0)
            throw std::domain_error("relaxation_time: gamma0 = 0");
        return 1.0 / gamma0;
    }
};

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TruncationTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPure : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NegativeBeyondTolerance : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyWindow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace dho
