#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptdimer/circuit.hpp"
#include "ptdimer/coupling.hpp"
#include "ptdimer/dynamics.hpp"
#include "ptdimer/scenarios.hpp"
#include "ptdimer/spectral.hpp"

namespace ptdimer::io {

/// Shortest decimal representation that parses back to the same double.
[[nodiscard]] std::string format_double(double value);

/// Strict double parse; throws std::invalid_argument on trailing junk.
[[nodiscard]] double parse_double(const std::string& field);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Parse a comma-separated table with one header line. Empty fields are
/// preserved as empty strings.
[[nodiscard]] Table read_table(std::istream& in);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_step_csv(std::ostream& out, const StepResponse& response);
void write_coupling_csv(std::ostream& out, const CouplingCurve& curve);
[[nodiscard]] CouplingCurve read_coupling_csv(std::istream& in);
void write_waveform_csv(std::ostream& out, const std::vector<CircuitState>& run);

/// One row per gamma: gamma,region,re_w1,im_w1,re_w2,im_w2[,re_w3,im_w3],g_sat.
/// The third frequency column pair appears only for saturable sets; absent
/// modes and the linear g_sat column stay empty.
void write_eigen_csv(std::ostream& out, const std::vector<std::pair<double, EigenSet>>& rows,
                     bool saturable);

[[nodiscard]] std::string crossval_report_json(const CrossvalReport& report);

} // namespace ptdimer::io
