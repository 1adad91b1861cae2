#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "ptdimer/analytic.hpp"
#include "ptdimer/dynamics.hpp"
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

TEST_CASE("balanced linear run matches the closed form") {
    IntegrationConfig cfg;
    cfg.t_end = 20.0;
    const auto run = integrate(balanced_linear(0.5, 0.3), AmplitudeState{}, cfg);
    REQUIRE(run.ok());
    const auto sol = make_linear_solution(0.5, 0.3);
    for (const auto& s : run.trajectory.samples) {
        const double e_ref = transfer_energy_closed_form(sol, s.t);
        CHECK(std::abs(s.e - e_ref) < 1e-6 * (1.0 + e_ref));
    }
}

TEST_CASE("lossless run conserves the norm") {
    IntegrationConfig cfg;
    cfg.t_end = 20.0;
    const auto run = integrate(balanced_linear(0.5, 0.0), AmplitudeState{}, cfg);
    REQUIRE(run.ok());
    for (const auto& s : run.trajectory.samples) {
        CHECK(std::norm(s.psi_a) + std::norm(s.psi_b) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("saturable run settles to the predicted steady energy") {
    IntegrationConfig cfg;
    cfg.t_end = 200.0;
    const auto run = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg);
    REQUIRE(run.ok());
    const auto steady = detect_steady_state(run.trajectory);
    CHECK(steady.converged);
    CHECK(steady.e_steady ==
          doctest::Approx(oracles::steady_transfer_energy(0.5, 0.3, 3.0, 0.05)).epsilon(1e-4));
    CHECK(steady.e_steady == doctest::Approx(16.4286).epsilon(1e-3));
    CHECK(steady.g_measured == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("saturated gain measurement across both regions") {
    IntegrationConfig cfg;
    cfg.t_end = 200.0;
    for (const double gamma : {0.2, 0.7}) {
        const auto run = integrate(saturable(0.5, gamma), AmplitudeState{}, cfg);
        REQUIRE(run.ok());
        const auto steady = detect_steady_state(run.trajectory);
        CHECK(steady.converged);
        CHECK(steady.g_measured ==
              doctest::Approx(oracles::saturated_gain(0.5, gamma)).epsilon(1e-4));
    }
}

TEST_CASE("linear broken run does not settle") {
    IntegrationConfig cfg;
    cfg.t_end = 60.0;
    const auto run = integrate(balanced_linear(0.5, 0.7), AmplitudeState{}, cfg);
    REQUIRE(run.ok());
    const auto steady = detect_steady_state(run.trajectory);
    CHECK(!steady.converged);
}

TEST_CASE("linear broken run diverges past the overflow guard") {
    IntegrationConfig cfg;
    cfg.t_end = 2000.0;
    cfg.overflow_guard = 1e30;
    const auto run = integrate(balanced_linear(0.5, 0.7), AmplitudeState{}, cfg);
    CHECK(run.status == IntegrationStatus::Diverged);
    CHECK(!run.trajectory.samples.empty());
    CHECK(run.trajectory.samples.back().t < 2000.0);
}

TEST_CASE("mode frequency lands on a spectral mode") {
    IntegrationConfig cfg;
    cfg.t_end = 200.0;

    const auto unbroken = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg);
    const double f_unbroken = measure_mode_frequency(unbroken.trajectory);
    const auto set = nonlinear_eigenfrequencies(saturable(0.5, 0.3));
    double best = 1e9;
    for (const auto& mode : set.modes) {
        best = std::min(best, std::abs(f_unbroken - mode.frequency.real()));
    }
    CHECK(best < 1e-3);

    const auto broken = integrate(saturable(0.5, 0.7), AmplitudeState{}, cfg);
    CHECK(measure_mode_frequency(broken.trajectory) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("beating two-mode motion has no single steady mode") {
    IntegrationConfig cfg;
    cfg.t_end = 100.0;
    const auto run = integrate(balanced_linear(0.5, 0.0), AmplitudeState{}, cfg);
    CHECK_THROWS_AS((void)measure_mode_frequency(run.trajectory), std::runtime_error);
}

TEST_CASE("norm rate identity along a saturable trajectory") {
    // d/dt (|a|^2 + |b|^2) = 2 g |a|^2 - 2 gamma |b|^2, central differences
    // on a fine recorded grid (the onset rates reach 2 g1, so the grid has
    // to resolve them).
    IntegrationConfig cfg;
    cfg.t_end = 8.0;
    cfg.record_stride = 1e-4;
    const auto run = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg);
    REQUIRE(run.ok());
    const auto& s = run.trajectory.samples;
    for (std::size_t i = 1; i + 1 < s.size(); i += 7) {
        const double h = s[i + 1].t - s[i - 1].t;
        const double n_prev = std::norm(s[i - 1].psi_a) + std::norm(s[i - 1].psi_b);
        const double n_next = std::norm(s[i + 1].psi_a) + std::norm(s[i + 1].psi_b);
        const double deriv = (n_next - n_prev) / h;
        const double expected =
            2.0 * s[i].gain * std::norm(s[i].psi_a) - 2.0 * 0.3 * std::norm(s[i].psi_b);
        const double norm_i = std::norm(s[i].psi_a) + std::norm(s[i].psi_b);
        CHECK(std::abs(deriv - expected) < 1e-6 * (1.0 + norm_i) +
                                               1e-8 * std::abs(expected));
    }
}

TEST_CASE("tolerance refinement changes the endpoint within the error budget") {
    // Run the check on trajectories without separatrix sensitivity: the
    // saturable escape from the metastable central mode amplifies solver
    // noise exponentially, so only settled or linear paths have a
    // tolerance-proportional endpoint error.
    IntegrationConfig coarse;
    coarse.t_end = 40.0;
    coarse.record_stride = 0.5;  // leave the controller free to pick steps
    coarse.rel_tol = 1e-7;
    coarse.abs_tol = 1e-10;
    IntegrationConfig fine = coarse;
    fine.rel_tol = 0.5e-7;
    fine.abs_tol = 0.5e-10;

    const auto a = integrate(balanced_linear(0.5, 0.3), AmplitudeState{}, coarse);
    const auto b = integrate(balanced_linear(0.5, 0.3), AmplitudeState{}, fine);
    const double ea = a.trajectory.samples.back().e;
    const double eb = b.trajectory.samples.back().e;
    CHECK(std::abs(ea - eb) / eb < 10.0 * coarse.rel_tol);

    const auto c = integrate(saturable(0.5, 0.7), AmplitudeState{}, coarse);
    const auto d = integrate(saturable(0.5, 0.7), AmplitudeState{}, fine);
    const double ec = c.trajectory.samples.back().e;
    const double ed = d.trajectory.samples.back().e;
    CHECK(std::abs(ec - ed) / ed < 10.0 * coarse.rel_tol);
}

TEST_CASE("steady state is attractor stable under a 1 percent kick") {
    IntegrationConfig cfg;
    cfg.t_end = 200.0;
    const auto run = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg);
    const auto steady = detect_steady_state(run.trajectory);
    REQUIRE(steady.converged);

    AmplitudeState kicked;
    kicked.psi_a = run.trajectory.samples.back().psi_a * 1.01;
    kicked.psi_b = run.trajectory.samples.back().psi_b * 0.99;
    IntegrationConfig cfg2;
    cfg2.t_end = 100.0;
    const auto rerun = integrate(saturable(0.5, 0.3), kicked, cfg2);
    const auto steady2 = detect_steady_state(rerun.trajectory);
    CHECK(steady2.converged);
    CHECK(steady2.e_steady == doctest::Approx(steady.e_steady).epsilon(1e-3));
}

TEST_CASE("identical inputs give bit-identical trajectories") {
    IntegrationConfig cfg;
    cfg.t_end = 50.0;
    const auto a = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg);
    const auto b = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg);
    REQUIRE(a.trajectory.samples.size() == b.trajectory.samples.size());
    for (std::size_t i = 0; i < a.trajectory.samples.size(); ++i) {
        CHECK(a.trajectory.samples[i].psi_a == b.trajectory.samples[i].psi_a);
        CHECK(a.trajectory.samples[i].psi_b == b.trajectory.samples[i].psi_b);
        CHECK(a.trajectory.samples[i].t == b.trajectory.samples[i].t);
    }
}

TEST_CASE("piecewise coupling schedule continues the state across switches") {
    IntegrationConfig cfg;
    cfg.t_end = 40.0;
    // Single-segment schedule must reproduce the plain run sample by sample.
    const auto plain = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg);
    const auto scheduled = integrate(saturable(0.123, 0.3), AmplitudeState{}, cfg,
                                     KappaSchedule{{0.0, 0.5}});
    REQUIRE(plain.trajectory.samples.size() == scheduled.trajectory.samples.size());
    for (std::size_t i = 0; i < plain.trajectory.samples.size(); ++i) {
        CHECK(plain.trajectory.samples[i].psi_b == scheduled.trajectory.samples[i].psi_b);
    }

    // A genuine switch is continuous at the boundary.
    const auto stepped = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg,
                                   KappaSchedule{{0.0, 0.5}, {20.0, 0.25}});
    REQUIRE(stepped.ok());
    const auto& samples = stepped.trajectory.samples;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        CHECK(std::abs(samples[i].psi_b - samples[i - 1].psi_b) < 0.2);
    }
}

TEST_CASE("schedule validation") {
    IntegrationConfig cfg;
    CHECK_THROWS_AS(
        (void)integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg, KappaSchedule{{1.0, 0.5}}),
        std::invalid_argument);
    CHECK_THROWS_AS((void)integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg,
                                    KappaSchedule{{0.0, 0.5}, {0.0, 0.2}}),
                    std::invalid_argument);
}

TEST_CASE("integration against the independent fixed-step oracle") {
    IntegrationConfig cfg;
    cfg.t_end = 15.0;
    const auto run = integrate(saturable(0.5, 0.4), AmplitudeState{}, cfg);
    const auto ref = oracles::rk4_integrate(
        1.0, 1.0, 0.5, 0.4,
        [](double amp) { return 2.0 * 3.05 / (1.0 + amp * amp) - 0.05; },
        {oracles::Complex(1.0, 0.0), oracles::Complex(0.0, 0.0)}, 15.0, 150000);
    // Compare at the shared endpoint.
    const auto& last = run.trajectory.samples.back();
    const auto& ref_last = ref.back().second;
    CHECK(std::abs(last.psi_b - ref_last[1]) < 1e-5 * (1.0 + std::abs(ref_last[1])));
}

TEST_CASE("detector rejects too-short trajectories") {
    IntegrationConfig cfg;
    cfg.t_end = 10.0;
    const auto run = integrate(saturable(0.5, 0.3), AmplitudeState{}, cfg);
    CHECK_THROWS_AS((void)detect_steady_state(run.trajectory, 20.0), std::invalid_argument);
}
