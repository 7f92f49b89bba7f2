#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "dho/bohmian.hpp"
#include "dho/numerics.hpp"

using namespace dho;
using Catch::Matchers::WithinAbs;

TEST_CASE("position fields", "[bohmian]") {
    const auto cat = make_cat({2.0}, CatKind::plus_minus_alpha);
    const EvolutionParams p(0.3, 1.5);
    const PositionFields f(cat, p);

    SECTION("density is the diagonal of the position density matrix") {
        for (double x : {-2.0, 0.0, 1.3}) {
            REQUIRE_THAT(f.density(x), WithinAbs(f.density_matrix(x, x).real(), 1e-15));
            REQUIRE(f.density(x) >= 0.0);
        }
    }
    SECTION("density integrates to one under dissipation") {
        const double n =
            gauss_legendre([&](double x) { return f.density(x); }, -12.0, 12.0, 0.25);
        REQUIRE_THAT(n, WithinAbs(1.0, 1e-12));
    }
    SECTION("density matrix is hermitian") {
        REQUIRE(std::abs(f.density_matrix(0.7, -1.1) -
                         std::conj(f.density_matrix(-1.1, 0.7))) < 1e-15);
    }
    SECTION("analytic current derivative matches finite differences") {
        const double h = 1e-5;
        for (double x : {-1.5, 0.2, 2.4}) {
            const double fd = (f.current(x + h) - f.current(x - h)) / (2.0 * h);
            REQUIRE_THAT(f.current_derivative(x), WithinAbs(fd, 1e-7));
        }
    }
    SECTION("current vanishes at x = 0 for the symmetric cat") {
        REQUIRE_THAT(f.current(0.0), WithinAbs(0.0, 1e-14));
    }
}

TEST_CASE("continuity equation", "[bohmian]") {
    SECTION("single coherent state") {
        const auto s = SuperposedState::coherent({1.0});
        const auto g = sample_grid(s, 0.2, {0.5, 2.0}, -8.0, 8.0, 200);
        REQUIRE(continuity_residual(s, 0.2, g) < 1e-6);
    }
    SECTION("interfering cat") {
        const auto cat = make_cat({7.0 / std::sqrt(2.0)}, CatKind::plus_minus_alpha);
        const auto g = sample_grid(cat, 0.1, {0.4, 1.6}, -12.0, 12.0, 300);
        REQUIRE(continuity_residual(cat, 0.1, g) < 1e-5);
    }
}

TEST_CASE("grid sampling", "[bohmian]") {
    const auto s = SuperposedState::coherent({1.0});
    const auto g = sample_grid(s, 0.0, {0.0, 1.0}, -6.0, 6.0, 121);
    SECTION("shape and axis") {
        REQUIRE(g.P.rows() == 2);
        REQUIRE(g.P.cols() == 121);
        REQUIRE_THAT(g.x_at(0), WithinAbs(-6.0, 1e-15));
        REQUIRE_THAT(g.x_at(120), WithinAbs(6.0, 1e-15));
        REQUIRE_THAT(g.dx(), WithinAbs(0.1, 1e-15));
    }
    SECTION("each time slice is normalized on the grid") {
        for (int it = 0; it < 2; ++it) {
            double sum = 0.0;
            for (int k = 0; k < 121; ++k)
                sum += g.P(it, k) * ((k == 0 || k == 120) ? 0.5 : 1.0);
            REQUIRE_THAT(sum * g.dx(), WithinAbs(1.0, 1e-6));
        }
    }
    SECTION("degenerate grid is rejected") {
        REQUIRE_THROWS_AS(sample_grid(s, 0.0, {0.0}, -1.0, 1.0, 1),
                          std::invalid_argument);
    }
}

TEST_CASE("trajectories", "[bohmian]") {
    SECTION("a path from the packet center follows the classical center") {
        const CoherentAmplitude a(1.0);
        const auto s = SuperposedState::coherent(a);
        TrajectoryConfig cfg;
        cfg.t_final = 3.0;
        const auto e = integrate_trajectories(s, 0.0, {std::sqrt(2.0)}, cfg);
        double worst = 0.0;
        for (std::size_t k = 0; k < e.times.size(); ++k) {
            const double center =
                std::sqrt(2.0) * evolve_amplitude(a, {0.0, e.times[k]}).re;
            worst = std::max(worst, std::abs(e.paths(0, k) - center));
        }
        REQUIRE(worst < 1e-6);
    }
    SECTION("cat trajectories preserve ordering and never cross the node") {
        const auto cat = make_cat({2.5}, CatKind::plus_minus_alpha);
        TrajectoryConfig cfg;
        cfg.t_final = 3.0;
        const auto launch = quantile_launch_points(cat, 5);
        const auto e = integrate_trajectories(cat, 0.0, launch, cfg);
        for (std::size_t k = 0; k < e.times.size(); ++k) {
            for (int i = 0; i < e.paths.rows(); ++i) {
                const double sign0 = e.initial_positions[i] > 0.0 ? 1.0 : -1.0;
                REQUIRE(sign0 * e.paths(i, k) > 0.0);
            }
            // equivariance: initial ordering of paths is preserved
            for (int i = 1; i < e.paths.rows(); ++i)
                if (e.initial_positions[i - 1] < e.initial_positions[i])
                    REQUIRE(e.paths(i - 1, k) < e.paths(i, k) + 1e-9);
        }
    }
    SECTION("launching inside a dead zone throws") {
        const auto cat = make_cat({6.0}, CatKind::plus_minus_alpha);
        TrajectoryConfig cfg;
        REQUIRE_THROWS_AS(integrate_trajectories(cat, 0.0, {0.0}, cfg),
                          DegenerateInput);
    }
}

TEST_CASE("sampled trajectory ensemble transports the density", "[bohmian]") {
    // 10^4 positions drawn from P(x,0); the empirical distribution at t = 2
    // must match P(x,2) in Kolmogorov-Smirnov distance.
    const CoherentAmplitude a(1.0);
    const auto s = SuperposedState::coherent(a);
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(std::sqrt(2.0) * a.re,
                                           std::sqrt(0.5));
    const int n = 10000;
    std::vector<double> x0(n);
    for (auto& v : x0) v = gauss(rng);

    TrajectoryConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_final = 2.0;
    const auto e = integrate_trajectories(s, 0.0, x0, cfg);

    std::vector<double> xt(n);
    const int last = static_cast<int>(e.times.size()) - 1;
    for (int i = 0; i < n; ++i) xt[i] = e.paths(i, last);
    std::sort(xt.begin(), xt.end());

    const double mean_t = std::sqrt(2.0) * evolve_amplitude(a, {0.0, 2.0}).re;
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = 0.5 * (1.0 + std::erf(xt[i] - mean_t));
        ks = std::max(ks, std::abs(cdf - double(i + 1) / n));
        ks = std::max(ks, std::abs(cdf - double(i) / n));
    }
    REQUIRE(ks < 0.02);
}

TEST_CASE("quantile launch points", "[bohmian]") {
    const auto cat = make_cat({2.0}, CatKind::plus_minus_alpha);
    const auto pts = quantile_launch_points(cat, 5);
    SECTION("five per packet, centred on each packet") {
        REQUIRE(pts.size() == 10);
        REQUIRE_THAT(pts[2], WithinAbs(2.0 * std::sqrt(2.0), 1e-12));   // median
        REQUIRE_THAT(pts[7], WithinAbs(-2.0 * std::sqrt(2.0), 1e-12));
    }
    SECTION("symmetric spacing within a packet") {
        REQUIRE_THAT(pts[0] + pts[4], WithinAbs(2.0 * pts[2], 1e-12));
    }
}
