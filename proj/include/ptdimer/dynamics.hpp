#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptdimer/core.hpp"

namespace ptdimer {

struct IntegrationConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double t_end = 200.0;
    double max_step = 1.0;
    double record_stride = 0.01;
    double overflow_guard = 1e150;  ///< |amplitude| beyond this aborts as divergence
};

void validate(const IntegrationConfig& cfg);

struct TrajectorySample {
    double t;
    Complex psi_a;
    Complex psi_b;
    double gain;  ///< g(|psi_a|) at the sample
    double e;     ///< omega_b |psi_b|^2
    double e_a;   ///< omega_a |psi_a|^2
    double p;     ///< e / t, 0 at t = 0
};

struct Trajectory {
    SystemParams params;
    std::vector<TrajectorySample> samples;

    [[nodiscard]] double duration() const {
        return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
    }
};

/// Piecewise-constant coupling override: (t_start, kappa) segments with
/// strictly increasing t_start, the first at 0. Empty means the constant
/// params.kappa.
using KappaSchedule = std::vector<std::pair<double, double>>;

enum class IntegrationStatus { Ok, Diverged, StepUnderflow };

/// Divergence is an expected outcome for broken-region linear gain; the
/// trajectory holds everything recorded before the abort.
struct IntegrationResult {
    Trajectory trajectory;
    IntegrationStatus status = IntegrationStatus::Ok;
    std::string message;

    [[nodiscard]] bool ok() const { return status == IntegrationStatus::Ok; }
};

/// Adaptive Dormand-Prince 5(4) integration of the coupled-mode equations,
/// recording one sample per record_stride (plus t = 0 and t_end). Steps
/// land exactly on record and schedule-switch times.
IntegrationResult integrate(const SystemParams& params, const AmplitudeState& initial,
                            const IntegrationConfig& cfg, const KappaSchedule& schedule = {});

struct SteadyStateReport {
    bool converged = false;
    double t_settle = 0.0;       ///< earliest time after which the criterion holds
    double e_steady = 0.0;       ///< trailing-window mean of omega_b |psi_b|^2
    double g_measured = 0.0;     ///< trailing-window mean of g(|psi_a|)
    double mode_frequency = 0.0; ///< 0 when not converged
};

/// Converged iff (max-min)/mean of |psi_b|^2 over the trailing window stays
/// below threshold. Throws std::invalid_argument on trajectories shorter
/// than twice the window.
[[nodiscard]] SteadyStateReport detect_steady_state(const Trajectory& traj,
                                                    double window = 20.0,
                                                    double threshold = 1e-3);

/// Mean of -d(arg psi_b)/dt over the trailing window, from an unwrapped
/// linear phase fit. Throws std::runtime_error when the trajectory has no
/// steady trailing segment.
[[nodiscard]] double measure_mode_frequency(const Trajectory& traj, double window = 20.0,
                                            double threshold = 1e-3);

} // namespace ptdimer
