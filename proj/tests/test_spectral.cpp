#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ptdimer/spectral.hpp"

using namespace ptdimer;

namespace {

SystemParams balanced_linear(double kappa, double gamma) {
    SystemParams p;
    p.kappa = kappa;
    p.gamma = gamma;
    p.gain = LinearGain{gamma};
    return p;
}

SystemParams saturable(double kappa, double gamma, double g1 = 3.0, double gamma1 = 0.05) {
    SystemParams p;
    p.kappa = kappa;
    p.gamma = gamma;
    p.gain = SaturableGain{g1, gamma1};
    return p;
}

} // namespace

TEST_CASE("linear eigenfrequencies in the unbroken region") {
    const EigenSet set = linear_eigenfrequencies(balanced_linear(0.5, 0.3));
    REQUIRE(set.modes.size() == 2);
    CHECK(set.region == SpectralRegion::Unbroken);
    CHECK(set.modes[0].frequency.real() == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(set.modes[0].frequency.imag() == 0.0);
    CHECK(set.modes[1].frequency.real() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(!set.g_sat.has_value());
}

TEST_CASE("linear eigenfrequencies degenerate at the exceptional point") {
    const EigenSet set = linear_eigenfrequencies(balanced_linear(0.5, 0.5));
    CHECK(set.region == SpectralRegion::ExceptionalPoint);
    CHECK(set.modes[0].frequency == Complex(1.0, 0.0));
    CHECK(set.modes[1].frequency == Complex(1.0, 0.0));
}

TEST_CASE("linear eigenfrequencies form a conjugate pair in the broken region") {
    const EigenSet set = linear_eigenfrequencies(balanced_linear(0.5, 0.7));
    CHECK(set.region == SpectralRegion::Broken);
    const double lam = std::sqrt(0.7 * 0.7 - 0.5 * 0.5);
    CHECK(set.modes[0].frequency.real() == doctest::Approx(1.0));
    CHECK(set.modes[0].frequency.imag() == doctest::Approx(lam).epsilon(1e-12));
    CHECK(set.modes[1].frequency == std::conj(set.modes[0].frequency));

    // And the 0.6 companion point.
    const EigenSet set6 = linear_eigenfrequencies(balanced_linear(0.5, 0.6));
    CHECK(set6.modes[0].frequency.imag() ==
          doctest::Approx(std::sqrt(0.11)).epsilon(1e-12));  // 0.33166...
}

TEST_CASE("linear preconditions are enforced") {
    SystemParams p = balanced_linear(0.5, 0.3);
    p.gain = LinearGain{0.2};
    CHECK_THROWS_AS((void)linear_eigenfrequencies(p), std::invalid_argument);
    p = balanced_linear(0.5, 0.3);
    p.omega_b = 1.1;
    CHECK_THROWS_AS((void)linear_eigenfrequencies(p), std::invalid_argument);
    p = balanced_linear(0.5, 0.3);
    p.gain = SaturableGain{3.0, 0.05};
    CHECK_THROWS_AS((void)linear_eigenfrequencies(p), std::invalid_argument);
}

TEST_CASE("characteristic residual vanishes on closed-form roots") {
    CHECK(characteristic_residual({1.4, 0.0}, 0.3, 0.3, 0.5, 1.0) < 1e-12);
    CHECK(characteristic_residual({1.0, 0.0}, 0.25 / 0.7, 0.7, 0.5, 1.0) < 1e-12);
    CHECK(characteristic_residual({0.0, 0.0}, 0.0, 0.0, 0.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("nonlinear eigenfrequencies: unbroken split plus central mode") {
    const EigenSet set = nonlinear_eigenfrequencies(saturable(0.5, 0.3));
    REQUIRE(set.modes.size() == 3);
    CHECK(set.region == SpectralRegion::Unbroken);
    CHECK(set.modes[0].frequency == Complex(1.0, 0.0));
    CHECK(set.modes[1].frequency.real() == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(set.modes[2].frequency.real() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(set.g_sat.value() == doctest::Approx(0.3));
}

TEST_CASE("nonlinear eigenfrequencies: broken pair and saturated gain") {
    const EigenSet set = nonlinear_eigenfrequencies(saturable(0.5, 0.7));
    REQUIRE(set.modes.size() == 2);
    CHECK(set.region == SpectralRegion::Broken);
    CHECK(set.modes[0].frequency == Complex(1.0, 0.0));
    CHECK(set.modes[1].frequency.real() == doctest::Approx(1.0));
    CHECK(set.modes[1].frequency.imag() ==
          doctest::Approx(0.25 / 0.7 - 0.7).epsilon(1e-12));
    CHECK(set.g_sat.value() == doctest::Approx(0.25 / 0.7).epsilon(1e-12));  // 0.35714...
}

TEST_CASE("saturated gain is continuous across the exceptional point") {
    const double kappa = 0.5;
    const auto below = nonlinear_eigenfrequencies(saturable(kappa, kappa * (1.0 - 1e-6)));
    const auto above = nonlinear_eigenfrequencies(saturable(kappa, kappa * (1.0 + 1e-6)));
    CHECK(std::abs(below.g_sat.value() - above.g_sat.value()) < 1e-5);
    const auto at = nonlinear_eigenfrequencies(saturable(kappa, kappa));
    CHECK(at.g_sat.value() == doctest::Approx(kappa));
}

TEST_CASE("saturated gain rises with loss in the unbroken region and falls past it") {
    const double kappa = 0.5;
    double prev = 0.0;
    for (double gamma = 0.05; gamma < kappa; gamma += 0.05) {
        const double g = nonlinear_eigenfrequencies(saturable(kappa, gamma)).g_sat.value();
        CHECK(g >= prev);
        prev = g;
    }
    prev = nonlinear_eigenfrequencies(saturable(kappa, kappa)).g_sat.value();
    for (double gamma = kappa + 0.05; gamma < 2.0; gamma += 0.05) {
        const double g = nonlinear_eigenfrequencies(saturable(kappa, gamma)).g_sat.value();
        CHECK(g <= prev);
        prev = g;
    }
}

TEST_CASE("gamma = 0 falls back to the unbroken split pair") {
    const EigenSet set = nonlinear_eigenfrequencies(saturable(0.5, 0.0));
    CHECK(set.region == SpectralRegion::Unbroken);
    REQUIRE(set.modes.size() == 2);  // no finite gain sustains the central mode
    CHECK(set.g_sat.value() == 0.0);
    CHECK(set.modes[0].frequency.real() == doctest::Approx(1.5));
    CHECK(set.modes[1].frequency.real() == doctest::Approx(0.5));
}

TEST_CASE("every returned mode satisfies the characteristic equation with its gain") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> rate(0.02, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double kappa = rate(rng);
        const double gamma = rate(rng);
        for (const auto& mode : linear_eigenfrequencies(balanced_linear(kappa, gamma)).modes) {
            CHECK(characteristic_residual(mode.frequency, mode.gain, gamma, kappa, 1.0) < 1e-10);
        }
        for (const auto& mode : nonlinear_eigenfrequencies(saturable(kappa, gamma)).modes) {
            CHECK(characteristic_residual(mode.frequency, mode.gain, gamma, kappa, 1.0) < 1e-10);
        }
    }
}

TEST_CASE("exceptional arc bisection on analytic curves") {
    CHECK(exceptional_arc([](double d) { return std::exp(-d); }, std::exp(-1.0), 0.0, 5.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(exceptional_arc([](double d) { return 0.5 / (1.0 + d * d); }, 0.25, 0.0, 10.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(
        (void)exceptional_arc([](double d) { return std::exp(-d); }, 2.0, 0.0, 5.0),
        std::domain_error);
    CHECK_THROWS_AS(
        (void)exceptional_arc([](double d) { return std::exp(-d); }, 1e-6, 0.0, 5.0),
        std::domain_error);
}
