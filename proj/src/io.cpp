#include "ptdimer/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ptdimer::io {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return {buf, res.ptr};
}

double parse_double(const std::string& field) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw std::invalid_argument("parse_double: bad numeric field '" + field + "'");
    }
    return value;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace

Table read_table(std::istream& in) {
    Table table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("read_table: empty input");
    }
    table.header = split_fields(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        table.rows.push_back(split_fields(line));
        if (table.rows.back().size() != table.header.size()) {
            throw std::invalid_argument("read_table: ragged row in table");
        }
    }
    return table;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,re_psi_a,im_psi_a,re_psi_b,im_psi_b,g,e,e_a,p\n";
    for (const auto& s : traj.samples) {
        out << format_double(s.t) << ',' << format_double(s.psi_a.real()) << ','
            << format_double(s.psi_a.imag()) << ',' << format_double(s.psi_b.real()) << ','
            << format_double(s.psi_b.imag()) << ',' << format_double(s.gain) << ','
            << format_double(s.e) << ',' << format_double(s.e_a) << ',' << format_double(s.p)
            << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "d_m,gamma,region,e_max,e_s,p_max\n";
    for (const auto& cell : result.cells) {
        out << format_double(cell.d) << ',' << format_double(cell.gamma) << ','
            << to_string(cell.region) << ',' << format_double(cell.e_max) << ',';
        if (cell.e_s.has_value()) {
            out << format_double(*cell.e_s);
        }
        out << ',' << format_double(cell.p_max) << '\n';
    }
}

void write_step_csv(std::ostream& out, const StepResponse& response) {
    out << "t,d_m,kappa,e,e_a,g,p\n";
    std::size_t seg = 0;
    for (const auto& s : response.trajectory.samples) {
        while (seg + 1 < response.segments.size() &&
               s.t >= response.segments[seg + 1].t_start) {
            ++seg;
        }
        out << format_double(s.t) << ',' << format_double(response.segments[seg].d) << ','
            << format_double(response.segments[seg].kappa) << ',' << format_double(s.e) << ','
            << format_double(s.e_a) << ',' << format_double(s.gain) << ','
            << format_double(s.p) << '\n';
    }
}

void write_coupling_csv(std::ostream& out, const CouplingCurve& curve) {
    out << "d_m,kappa_per_omega0\n";
    for (std::size_t i = 0; i < curve.distances.size(); ++i) {
        out << format_double(curve.distances[i]) << ',' << format_double(curve.kappas[i])
            << '\n';
    }
}

CouplingCurve read_coupling_csv(std::istream& in) {
    const Table table = read_table(in);
    if (table.header != std::vector<std::string>{"d_m", "kappa_per_omega0"}) {
        throw std::invalid_argument("read_coupling_csv: unexpected header");
    }
    CouplingCurve curve;
    for (const auto& row : table.rows) {
        curve.distances.push_back(parse_double(row[0]));
        curve.kappas.push_back(parse_double(row[1]));
    }
    return curve;
}

void write_waveform_csv(std::ostream& out, const std::vector<CircuitState>& run) {
    out << "t_s,u_a_V,u_b_V,i_a_A,i_b_A\n";
    for (const auto& s : run) {
        out << format_double(s.t) << ',' << format_double(s.u_a) << ','
            << format_double(s.u_b) << ',' << format_double(s.i_a) << ','
            << format_double(s.i_b) << '\n';
    }
}

void write_eigen_csv(std::ostream& out, const std::vector<std::pair<double, EigenSet>>& rows,
                     bool saturable) {
    out << "gamma,region,re_w1,im_w1,re_w2,im_w2";
    if (saturable) {
        out << ",re_w3,im_w3";
    }
    out << ",g_sat\n";
    const std::size_t slots = saturable ? 3 : 2;
    for (const auto& [gamma, set] : rows) {
        out << format_double(gamma) << ',' << to_string(set.region);
        for (std::size_t i = 0; i < slots; ++i) {
            if (i < set.modes.size()) {
                out << ',' << format_double(set.modes[i].frequency.real()) << ','
                    << format_double(set.modes[i].frequency.imag());
            } else {
                out << ",,";
            }
        }
        out << ',';
        if (set.g_sat.has_value()) {
            out << format_double(*set.g_sat);
        }
        out << '\n';
    }
}

std::string crossval_report_json(const CrossvalReport& report) {
    nlohmann::ordered_json j;
    j["mapped"] = {
        {"omega0_rad_per_s", report.map.omega0},
        {"kappa", report.map.params.kappa},
        {"gamma", report.map.params.gamma},
    };
    if (const auto* lin = std::get_if<LinearGain>(&report.map.params.gain)) {
        j["mapped"]["gain"] = {{"model", "linear"}, {"g", lin->g}};
    } else {
        const auto& sat = std::get<SaturableGain>(report.map.params.gain);
        j["mapped"]["gain"] = {{"model", "saturable"}, {"g1", sat.g1}, {"gamma1", sat.gamma1}};
    }
    j["metrics"] = nlohmann::ordered_json::array();
    for (const auto& m : report.metrics) {
        j["metrics"].push_back({{"name", m.name},
                                {"measured", m.measured},
                                {"predicted", m.predicted},
                                {"relative_error", m.relative_error},
                                {"budget", m.budget},
                                {"pass", m.pass}});
    }
    j["observations"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.observations) {
        j["observations"][key] = value;
    }
    j["pass"] = report.pass;
    return j.dump(2) + "\n";
}

} // namespace ptdimer::io
