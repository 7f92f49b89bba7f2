#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <Eigen/Eigenvalues>

#include "dho/fock.hpp"

using namespace dho;
using Catch::Matchers::WithinAbs;

TEST_CASE("coherent Fock vector", "[fock]") {
    const CoherentAmplitude a(1.0, 0.5);
    const FockVector v = coherent_fock_vector(a, default_n_max(a.mod_sq()));
    SECTION("coefficients follow the Poisson amplitude law") {
        const auto lf = log_factorial_table(v.n_max);
        for (int n : {0, 1, 3, 7}) {
            const Complex expected = std::exp(Complex(-0.5 * a.mod_sq(), 0.0)) *
                                     std::pow(a.value(), n) /
                                     std::exp(0.5 * lf[n]);
            REQUIRE(std::abs(v.coeffs[n] - expected) < 1e-14);
        }
    }
    SECTION("unit norm within the truncation") {
        REQUIRE_THAT(v.coeffs.squaredNorm(), WithinAbs(1.0, 1e-12));
    }
    SECTION("inner products reproduce analytic overlaps") {
        const CoherentAmplitude b(-0.8, 0.2);
        const FockVector w = coherent_fock_vector(b, v.n_max);
        REQUIRE(std::abs(v.inner(w) - overlap(a, b)) < 1e-12);
    }
    SECTION("insufficient truncation throws") {
        REQUIRE_THROWS_AS(coherent_fock_vector({3.0}, 3), TruncationTooSmall);
    }
}

TEST_CASE("density matrix from a superposition", "[fock]") {
    const SuperposedState cat = make_cat({1.0}, CatKind::plus_minus_alpha);
    SECTION("unit trace and hermiticity at all times") {
        for (double t : {0.0, 0.7, 3.0}) {
            const auto rho = density_from_superposition(cat, {0.2, t}, 40);
            REQUIRE_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
            REQUIRE(rho.hermiticity_defect() < 1e-15);
        }
    }
    SECTION("pure at t = 0, mixed under dissipation, repurified at long times") {
        REQUIRE_THAT(density_from_superposition(cat, {0.2, 0.0}, 40).purity(),
                     WithinAbs(1.0, 1e-12));
        REQUIRE(density_from_superposition(cat, {0.2, 2.0}, 40).purity() < 1.0 - 1e-3);
        // everything decays to the vacuum, which is pure
        REQUIRE_THAT(density_from_superposition(cat, {0.2, 150.0}, 40).purity(),
                     WithinAbs(1.0, 1e-9));
    }
}

TEST_CASE("hermitian eigensolver", "[fock]") {
    SECTION("matches a reference solver on a random Hermitian matrix") {
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const int n = 24;
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
        m = (0.5 * (m + m.adjoint())).eval();

        const auto mine = hermitian_eigenvalues({m, n - 1});
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(m);
        for (int i = 0; i < n; ++i)
            REQUIRE_THAT(mine[i], WithinAbs(ref.eigenvalues()[n - 1 - i], 1e-12));
    }
    SECTION("2x2 closed form") {
        ComplexMatrix m(2, 2);
        m << Complex(0.3, 0.0), Complex(0.2, -0.4), Complex(0.2, 0.4),
            Complex(0.7, 0.0);
        const double mid = 0.5, half = std::sqrt(0.04 + std::norm(m(0, 1)));
        const auto ev = hermitian_eigenvalues({m, 1});
        REQUIRE_THAT(ev[0], WithinAbs(mid + half, 1e-14));
        REQUIRE_THAT(ev[1], WithinAbs(mid - half, 1e-14));
    }
    SECTION("descending order") {
        const auto rho = density_from_superposition(
            make_cat({1.5}, CatKind::plus_minus_alpha), {0.3, 1.0}, 40);
        const auto ev = hermitian_eigenvalues(rho);
        for (std::size_t i = 1; i < ev.size(); ++i) REQUIRE(ev[i - 1] >= ev[i]);
    }
}

TEST_CASE("entropies", "[fock]") {
    SECTION("pure states have zero von Neumann entropy") {
        const auto rho = density_from_superposition(
            make_cat({1.0}, CatKind::plus_minus_alpha), {0.0, 1.3}, 40);
        REQUIRE(von_neumann_entropy(rho).nats < 1e-10);
    }
    SECTION("diagonal entropy of a coherent state is the Poisson entropy") {
        const double m = 1.0;
        const auto rho =
            density_from_superposition(SuperposedState::coherent({1.0}), {0.0, 0.0}, 40);
        double expected = 0.0;
        double p = std::exp(-m);
        for (int n = 0; n <= 40; ++n) {
            if (p > 0.0) expected -= p * std::log(p);
            p *= m / double(n + 1);
        }
        REQUIRE_THAT(diagonal_entropy(rho).nats, WithinAbs(expected, 1e-10));
    }
    SECTION("entropy rejects significantly negative weights") {
        REQUIRE_THROWS_AS(detail::entropy_of({1.1, -0.1}), NegativeBeyondTolerance);
        REQUIRE_THAT(detail::entropy_of({1.0, -1e-12}), WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("trace distance", "[fock]") {
    const auto r1 =
        density_from_superposition(SuperposedState::coherent({1.0}), {0.0, 0.0}, 40);
    const auto r2 =
        density_from_superposition(SuperposedState::coherent({-1.0}), {0.0, 0.0}, 40);
    SECTION("identical states are at distance zero") {
        REQUIRE(trace_distance(r1, r1) < 1e-14);
    }
    SECTION("bounded by one and symmetric") {
        const double d = trace_distance(r1, r2);
        REQUIRE(d > 0.0);
        REQUIRE(d <= 1.0 + 1e-12);
        REQUIRE_THAT(trace_distance(r2, r1), WithinAbs(d, 1e-13));
    }
    SECTION("pure-state distance matches sqrt(1 - |overlap|^2)") {
        const double expected =
            std::sqrt(1.0 - std::exp(-4.0));  // |<1|-1>|^2 = e^{-4}
        REQUIRE_THAT(trace_distance(r1, r2), WithinAbs(expected, 1e-10));
    }
}
