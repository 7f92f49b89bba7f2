#pragma once

// Shared numerical kernels: Gauss-Legendre panels, adaptive Gauss-Kronrod
// quadrature, and the error function for complex argument.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dho/types.hpp"

namespace dho {

namespace detail {

// 20-point Gauss-Legendre nodes/weights on [-1,1], generated once by Newton
// iteration on P_20.
inline const std::array<std::pair<double, double>, 20>& gl20() {
    static const std::array<std::pair<double, double>, 20> table = [] {
        std::array<std::pair<double, double>, 20> t{};
        const int n = 20;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            t[i] = {x, 2.0 / ((1.0 - x * x) * pp * pp)};
        }
        return t;
    }();
    return table;
}

}  // namespace detail

// Composite 20-point Gauss-Legendre with panels no longer than max_panel.
template <typename F>
auto gauss_legendre(F&& f, double a, double b, double max_panel = 0.5)
    -> decltype(f(a)) {
    using R = decltype(f(a));
    if (a == b) return R{};
    const int n_panels = std::max(1, int(std::ceil(std::abs(b - a) / max_panel)));
    const double h = (b - a) / n_panels;
    R total{};
    for (int k = 0; k < n_panels; ++k) {
        const double lo = a + k * h;
        const double mid = lo + 0.5 * h;
        for (const auto& [x, w] : detail::gl20())
            total += (0.5 * h * w) * f(mid + 0.5 * h * x);
    }
    return total;
}

namespace detail {

// 15-point Kronrod nodes and weights with the embedded 7-point Gauss rule.
struct GK15 {
    static constexpr std::array<double, 8> xk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <typename F>
void gk15_panel(F& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double x = GK15::xk[j];
        const double fv = (j == 7) ? f(c) : f(c - h * x) + f(c + h * x);
        resk += GK15::wk[j] * fv;
        if (j % 2 == 1) resg += GK15::wg[j / 2] * fv;
    }
    result = resk * h;
    err = std::abs((resk - resg) * h);
}

}  // namespace detail

// Adaptive Gauss-Kronrod 15(7) by interval bisection.
template <typename F>
double adaptive_quadrature(F&& f, double a, double b, double tol = 1e-10,
                           int max_depth = 40) {
    std::function<double(double, double, int)> rec = [&](double lo, double hi,
                                                         int depth) -> double {
        double r, e;
        detail::gk15_panel(f, lo, hi, r, e);
        if (e < tol * std::max(1.0, std::abs(r)) || depth >= max_depth) return r;
        const double mid = 0.5 * (lo + hi);
        return rec(lo, mid, depth + 1) + rec(mid, hi, depth + 1);
    };
    return rec(a, b, 0);
}

namespace detail {

// erfi(y) for real y >= 0 via the everywhere-positive Maclaurin series.
inline double erfi_series(double y) {
    const double y2 = y * y;
    double term = y, sum = y;
    for (int n = 1; n < 100000; ++n) {
        term *= y2 / double(n);
        const double add = term / double(2 * n + 1);
        sum += add;
        if (add < 1e-17 * sum) break;
    }
    return 2.0 / std::sqrt(pi) * sum;
}

// Faddeeva w(z) by the Laplace continued fraction; accurate for |z| large.
inline Complex faddeeva_cf(Complex z, int levels = 40) {
    Complex f = z;
    for (int k = levels; k >= 1; --k) f = z - (0.5 * k) / f;
    return Complex(0.0, 1.0 / std::sqrt(pi)) / f;
}

}  // namespace detail

// Error function for complex argument. For |Im z| up to ~12 the value is
// built from erf(Re z) plus a vertical line integral of the Gaussian,
// evaluated by composite Gauss-Legendre; far outside that strip the
// Faddeeva continued fraction takes over.
inline Complex complex_erf(Complex z) {
    const double x = z.real(), y = z.imag();
    if (x < 0.0) return -complex_erf(-z);
    if (y < 0.0) return std::conj(complex_erf(std::conj(z)));
    if (y == 0.0) return Complex(std::erf(x), 0.0);
    if (x == 0.0) return Complex(0.0, detail::erfi_series(y));

    if (y <= 12.0) {
        // erf(x + iy) = erf(x) + (2i/sqrt(pi)) int_0^y e^{-(x+is)^2} ds
        const Complex corr = gauss_legendre(
            [x](double s) { return std::exp(-(Complex(x, s) * Complex(x, s))); }, 0.0,
            y, 0.25);
        return Complex(std::erf(x), 0.0) +
               Complex(0.0, 2.0 / std::sqrt(pi)) * corr;
    }
    // erfc(z) = e^{-z^2} w(iz); here |z| > 12.
    const Complex zeta = Complex(0.0, 1.0) * z;
    return 1.0 - std::exp(-z * z) * detail::faddeeva_cf(zeta);
}

}  // namespace dho
