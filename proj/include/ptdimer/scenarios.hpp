#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptdimer/coupling.hpp"
#include "ptdimer/dynamics.hpp"
#include "ptdimer/spectral.hpp"

namespace ptdimer {

/// Gain family swept over a grid: balanced linear gain (g = gamma cell by
/// cell) or one saturable model shared by every cell.
struct LinearPtFamily {};
struct SaturableFamily {
    double g1 = 3.0;
    double gamma1 = 0.05;
};
using GainFamily = std::variant<LinearPtFamily, SaturableFamily>;

struct SweepGrid {
    std::vector<double> d_values;      ///< m, sorted ascending
    std::vector<double> gamma_values;  ///< units of omega0, sorted ascending
    GainFamily family;
};

struct SweepCell {
    double d = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
    SpectralRegion region = SpectralRegion::Unbroken;
    double e_max = 0.0;
    std::optional<double> e_s;  ///< saturable family only
    double p_max = 0.0;
    bool converged = true;      ///< steady-state detection outcome (saturable)
};

struct SweepResult {
    SweepGrid grid;
    std::vector<SweepCell> cells;                 ///< row-major, d outer, gamma inner
    std::vector<std::pair<double, double>> arc;   ///< (gamma, d*) exceptional-arc points
    std::vector<std::string> diagnostics;         ///< non-fatal cell notes

    [[nodiscard]] const SweepCell& at(std::size_t i_d, std::size_t i_gamma) const {
        return cells[i_d * grid.gamma_values.size() + i_gamma];
    }
};

/// Evaluate the transfer figures of merit over the (d, gamma) grid. Linear
/// cells use the closed forms over [0, cfg.t_end]; saturable cells are
/// integrated and steady-detected (non-convergence is flagged, not fatal).
SweepResult run_sweep(const SweepGrid& grid, const CoilGeometry& geom,
                      const IntegrationConfig& cfg, double detect_window = 20.0,
                      double detect_threshold = 1e-3);

/// Piecewise-constant distance plan: (t_start, d) with strictly increasing
/// t_start, the first at 0.
struct StepSchedule {
    std::vector<std::pair<double, double>> segments;
};

void validate(const StepSchedule& schedule);

struct StepSegmentReport {
    double t_start = 0.0;
    double t_end = 0.0;
    double d = 0.0;
    double kappa = 0.0;
    SteadyStateReport steady;  ///< detector run on this segment alone
};

struct StepResponse {
    Trajectory trajectory;
    std::vector<StepSegmentReport> segments;

    /// Distance active at time t (for serialization of the combined run).
    [[nodiscard]] double distance_at(double t) const;
};

/// Integrate one continuous trajectory whose coupling follows the distance
/// schedule (state carries across steps), then run the steady-state
/// detector per segment. Requires a saturable gain model.
StepResponse run_step_response(const StepSchedule& schedule, const CoilGeometry& geom,
                               const SystemParams& params, const IntegrationConfig& cfg,
                               double detect_window = 20.0, double detect_threshold = 1e-3);

struct StorageComparison {
    Trajectory numeric;
    /// Closed-form E and E_A on the numeric sample times; empty for
    /// saturable gain where no closed form exists.
    std::vector<double> closed_form_e;
    std::vector<double> closed_form_e_a;
};

/// Paired transfer/storage energy series for one parameter set.
StorageComparison run_storage_comparison(const SystemParams& params, const IntegrationConfig& cfg);

} // namespace ptdimer
