#include <catch2/catch_amalgamated.hpp>

#include "dho/coherence.hpp"

using namespace dho;
using Catch::Matchers::WithinAbs;

namespace {
// Independent oracle: Shannon entropy of the Poisson(m) distribution by
// direct summation, which equals the energy-basis coherence of |alpha>.
double poisson_entropy(double m, int n_terms = 400) {
    double s = 0.0;
    double p = std::exp(-m);
    for (int n = 0; n < n_terms; ++n) {
        if (p > 0.0) s -= p * std::log(p);
        p *= m / double(n + 1);
    }
    return s;
}
}  // namespace

TEST_CASE("coherent-state energy coherence", "[coherence]") {
    SECTION("equals the Poisson entropy") {
        for (double m : {0.25, 1.0, 4.0, 9.0}) {
            const CoherentAmplitude a(std::sqrt(m));
            REQUIRE_THAT(cr_coherent_energy(a, {0.0, 0.0}).value,
                         WithinAbs(poisson_entropy(m), 1e-12));
        }
    }
    SECTION("vanishes for the vacuum") {
        REQUIRE(cr_coherent_energy({0.0}, {0.0, 0.0}).value == 0.0);
    }
    SECTION("depends on t and gamma0 only through e^{-g0 t}|alpha|^2") {
        const double v1 = cr_coherent_energy({1.0}, {0.2, 3.0}).value;
        const double v2 =
            cr_coherent_energy({std::exp(-0.3)}, {0.0, 0.0}).value;
        REQUIRE_THAT(v1, WithinAbs(v2, 1e-13));
    }
    SECTION("strictly decreasing under dissipation") {
        double prev = cr_coherent_energy({1.0}, {0.1, 0.0}).value;
        for (double t = 0.1; t <= 5.0; t += 0.1) {
            const double cur = cr_coherent_energy({1.0}, {0.1, t}).value;
            REQUIRE(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("pure-state coherence", "[coherence]") {
    SECTION("matches the coherent series for one component") {
        const double spectral =
            cr_pure_state_energy(SuperposedState::coherent({1.0}), {0.1, 1.0}, 40)
                .value;
        REQUIRE_THAT(spectral,
                     WithinAbs(cr_coherent_energy({1.0}, {0.1, 1.0}).value, 1e-10));
    }
    SECTION("dissipative superposition is rejected as mixed") {
        REQUIRE_THROWS_AS(
            cr_pure_state_energy(make_cat({1.0}, CatKind::plus_minus_alpha),
                                 {0.1, 1.0}, 40),
            NotPure);
    }
}

TEST_CASE("cat coherence closed form", "[coherence]") {
    SECTION("agrees with the spectral route") {
        for (double m : {0.25, 1.0, 4.0}) {
            const auto cat =
                make_cat({std::sqrt(m)}, CatKind::plus_minus_alpha);
            const double spectral =
                cr_pure_state_energy(cat, {0.0, 0.0}, default_n_max(cat)).value;
            REQUIRE_THAT(cr_cat_closed_form(m).value, WithinAbs(spectral, 1e-9));
        }
    }
    SECTION("vanishes at m = 0 and rejects negative m") {
        REQUIRE(cr_cat_closed_form(0.0).value == 0.0);
        REQUIRE_THROWS_AS(cr_cat_closed_form(-1.0), DomainError);
    }
}

TEST_CASE("mixed-state coherence", "[coherence]") {
    SECTION("non-negative and below the pure-state value under dissipation") {
        const auto cat = make_cat({1.0}, CatKind::plus_minus_alpha);
        const double pure = cr_pure_state_energy(cat, {0.0, 0.0}, 40).value;
        double prev = pure;
        for (double t : {0.5, 1.0, 2.0}) {
            const double v =
                cr_mixed_energy(density_from_superposition(cat, {0.2, t}, 40)).value;
            REQUIRE(v >= 0.0);
            REQUIRE(v < prev + 1e-12);
            prev = v;
        }
    }
    SECTION("diagonal states have zero coherence") {
        FockDensityMatrix diag{ComplexMatrix::Zero(5, 5), 4};
        diag.elements(0, 0) = 0.6;
        diag.elements(1, 1) = 0.3;
        diag.elements(2, 2) = 0.1;
        REQUIRE_THAT(cr_mixed_energy(diag).value, WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("Gaussian position coherence", "[coherence]") {
    SECTION("pure coherent width gives (1 + ln pi)/2") {
        REQUIRE_THAT(cr_gaussian_position(0.5).value,
                     WithinAbs(0.5 * (1.0 + std::log(pi)), 1e-15));
    }
    SECTION("rejects non-positive variance") {
        REQUIRE_THROWS_AS(cr_gaussian_position(0.0), DomainError);
    }
}

TEST_CASE("thermal quantities", "[coherence]") {
    SECTION("variance interpolates from 1/2 to nbar + 1/2") {
        REQUIRE_THAT(thermal_variance({1.0, 0.0, 2.0}), WithinAbs(0.5, 1e-15));
        REQUIRE_THAT(thermal_variance({1.0, 100.0, 2.0}), WithinAbs(2.5, 1e-12));
    }
    SECTION("occupation-temperature round trip") {
        for (double kbt : {0.1, 0.5, 2.0}) {
            REQUIRE_THAT(kbt_from_nbar(nbar_from_kbt(kbt)), WithinAbs(kbt, 1e-12));
        }
        REQUIRE(nbar_from_kbt(0.0) == 0.0);
        REQUIRE_THROWS_AS(nbar_from_kbt(-1.0), DomainError);
    }
}

TEST_CASE("superposition bounds", "[coherence]") {
    SECTION("cat bound dominates the cat coherence") {
        for (double a = 0.1; a <= 2.0; a += 0.1) {
            const double bound = cr_upper_bound_cat({a}, {0.0, 0.0});
            REQUIRE(cr_cat_closed_form(a * a).value <= bound + 1e-12);
        }
    }
    SECTION("two-cat inequality holds") {
        for (double a = 0.2; a <= 2.0; a += 0.2) {
            const auto ineq = cr_two_cat_inequality({a});
            REQUIRE(ineq.lhs <= ineq.rhs + 1e-10);
        }
    }
}
