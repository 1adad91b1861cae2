#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "ptdimer/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_binary() {
    const char* env = std::getenv("PTDIMER_CLI");
    REQUIRE_MESSAGE(env != nullptr, "PTDIMER_CLI must point at the built binary");
    return env;
}

fs::path work_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "ptdimer_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run_cli(const std::string& args, const fs::path& stdout_path) {
    const std::string cmd =
        cli_binary() + " " + args + " > " + stdout_path.string() + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ptdimer::io::Table parse_table(const fs::path& path) {
    std::ifstream in(path);
    return ptdimer::io::read_table(in);
}

} // namespace

TEST_CASE("eigen: one unbroken linear row") {
    const fs::path out = work_dir() / "eigen_linear.csv";
    REQUIRE(run_cli("eigen --linear --kappa 0.5 --gamma 0.3", out) == 0);
    const auto table = parse_table(out);
    CHECK(table.header ==
          std::vector<std::string>{"gamma", "region", "re_w1", "im_w1", "re_w2", "im_w2",
                                   "g_sat"});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][1] == "unbroken");
    CHECK(ptdimer::io::parse_double(table.rows[0][2]) == doctest::Approx(1.4));
    CHECK(ptdimer::io::parse_double(table.rows[0][4]) == doctest::Approx(0.6));
    CHECK(table.rows[0][6].empty());  // no saturated gain for the linear family
}

TEST_CASE("eigen: saturated gain peaks at the exceptional point") {
    const fs::path out = work_dir() / "eigen_nl.csv";
    REQUIRE(run_cli("eigen --nonlinear --kappa 0.5 --gamma 0.01:1:101", out) == 0);
    const auto table = parse_table(out);
    REQUIRE(table.rows.size() == 101);
    double best_gamma = -1.0, best_gsat = -1.0;
    for (const auto& row : table.rows) {
        const double gsat = ptdimer::io::parse_double(row.back());
        if (gsat > best_gsat) {
            best_gsat = gsat;
            best_gamma = ptdimer::io::parse_double(row.front());
        }
    }
    CHECK(best_gamma == doctest::Approx(0.5).epsilon(0.02));
    CHECK(best_gsat == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("simulate: analytic exceptional point energy is quadratic in time") {
    const fs::path out = work_dir() / "sim_ep.csv";
    REQUIRE(run_cli("simulate --linear --gamma 0.5 --kappa 0.5 --t-end 20 --analytic", out) ==
            0);
    const auto table = parse_table(out);
    for (const auto& row : table.rows) {
        const double t = ptdimer::io::parse_double(row[0]);
        const double e = ptdimer::io::parse_double(row[6]);
        CHECK(e == doctest::Approx(0.25 * t * t).epsilon(1e-12));
    }
}

TEST_CASE("simulate: saturable run ends at the saturated gain") {
    const fs::path out = work_dir() / "sim_nl.csv";
    REQUIRE(run_cli("simulate --nonlinear --gamma 0.3 --kappa 0.5", out) == 0);
    const auto table = parse_table(out);
    REQUIRE(!table.rows.empty());
    const double g_last = ptdimer::io::parse_double(table.rows.back()[5]);
    CHECK(g_last == doctest::Approx(0.3).epsilon(1e-3));
}

TEST_CASE("usage errors exit with code 2") {
    const fs::path out = work_dir() / "usage.csv";
    CHECK(run_cli("eigen --linear --gamma 0.3", out) == 2);                  // missing kappa
    CHECK(run_cli("simulate --nonlinear --gamma 0.3 --analytic", out) == 2); // no closed form
    CHECK(run_cli("simulate --gamma 0.3", out) == 2);                        // family unpicked
    CHECK(run_cli("bogus", out) == 2);
}

TEST_CASE("sweep: grid cardinality and schema") {
    const fs::path out = work_dir() / "sweep.csv";
    REQUIRE(run_cli("sweep --linear --gamma-range 0.005:0.12:24 --d-range 0.2:1.2:21 "
                    "--t-end 20",
                    out) == 0);
    const auto table = parse_table(out);
    CHECK(table.header ==
          std::vector<std::string>{"d_m", "gamma", "region", "e_max", "e_s", "p_max"});
    CHECK(table.rows.size() == 24 * 21);
    for (const auto& row : table.rows) {
        CHECK(row[4].empty());  // linear family has no steady energy
    }
}

TEST_CASE("step: per-segment report") {
    const fs::path out = work_dir() / "step.csv";
    const fs::path report = work_dir() / "step.json";
    REQUIRE(run_cli("step --segments 0:0.25,300:0.3 --gamma 0.1 --t-end 600 --stride 0.05 "
                    "--report " +
                        report.string(),
                    out) == 0);
    const auto table = parse_table(out);
    CHECK(table.header ==
          std::vector<std::string>{"t", "d_m", "kappa", "e", "e_a", "g", "p"});
    CHECK(ptdimer::io::parse_double(table.rows.front()[1]) == 0.25);
    CHECK(ptdimer::io::parse_double(table.rows.back()[1]) == 0.3);

    const auto j = nlohmann::json::parse(slurp(report));
    REQUIRE(j["segments"].size() == 2);
    for (const auto& seg : j["segments"]) {
        CHECK(seg["converged"].get<bool>());
        CHECK(seg["e_steady"].get<double>() > 0.0);
    }
}

TEST_CASE("coupling: emitted curve re-imports") {
    const fs::path out = work_dir() / "curve.csv";
    REQUIRE(run_cli("coupling --d-range 0.2:1.2:11", out) == 0);
    std::ifstream in(out);
    const auto curve = ptdimer::io::read_coupling_csv(in);
    REQUIRE(curve.distances.size() == 11);
    CHECK(curve.distances.front() == 0.2);
    CHECK(curve.kappas.front() == doctest::Approx(0.0754).epsilon(1e-3));
    for (std::size_t i = 1; i < curve.kappas.size(); ++i) {
        CHECK(curve.kappas[i] < curve.kappas[i - 1]);
    }
}

TEST_CASE("circuit: saturating preset passes its validation gate") {
    const fs::path out = work_dir() / "fig8.csv";
    const fs::path report = work_dir() / "fig8.json";
    REQUIRE(run_cli("circuit --preset fig8 --report " + report.string(), out) == 0);
    const auto table = parse_table(out);
    CHECK(table.header ==
          std::vector<std::string>{"t_s", "u_a_V", "u_b_V", "i_a_A", "i_b_A"});
    CHECK(table.rows.size() > 5000);

    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["pass"].get<bool>());
    CHECK(j["mapped"]["kappa"].get<double>() == doctest::Approx(0.1));
}

TEST_CASE("circuit: reduced-model budget gate fails honestly on the level-split presets") {
    // The exact tank splitting sits ~6-8 percent away from the reduced
    // model at M/L = 0.2, beyond the 3 percent budget, so the gate trips;
    // --no-validate still emits the waveform.
    const fs::path out = work_dir() / "fig7.csv";
    const fs::path report = work_dir() / "fig7.json";
    CHECK(run_cli("circuit --preset fig7-unbroken --report " + report.string(), out) == 4);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(!j["pass"].get<bool>());
    CHECK(j["metrics"][0]["name"].get<std::string>() == "beat_frequency");
    CHECK(j["metrics"][0]["relative_error"].get<double>() > 0.03);
    CHECK(j["metrics"][0]["relative_error"].get<double>() < 0.10);

    CHECK(run_cli("circuit --preset fig7-unbroken --no-validate", out) == 0);
}

TEST_CASE("identical invocations produce byte-identical outputs") {
    const fs::path a = work_dir() / "det_a.csv";
    const fs::path b = work_dir() / "det_b.csv";
    const std::vector<std::string> invocations = {
        "eigen --nonlinear --kappa 0.5 --gamma 0.01:1:51",
        "simulate --nonlinear --gamma 0.3 --t-end 50",
        "coupling --d-range 0.2:1.2:11",
        "sweep --nonlinear --gamma-range 0.05:0.12:3 --d-range 0.2:0.3:3 --t-end 120",
        "circuit --preset fig8 --no-validate",
    };
    for (const auto& args : invocations) {
        REQUIRE(run_cli(args, a) == 0);
        REQUIRE(run_cli(args, b) == 0);
        CHECK_MESSAGE(slurp(a) == slurp(b), "non-deterministic output for: " << args);
    }
}

TEST_CASE("config files stand in for flags and reject unknown keys") {
    const fs::path cfg = work_dir() / "run.ini";
    {
        std::ofstream out(cfg);
        out << "[simulate]\nlinear=true\ngamma=0.5\nkappa=0.5\nt-end=5\nanalytic=true\n"
               "stride=0.5\n";
    }
    const fs::path from_cfg = work_dir() / "cfg.csv";
    const fs::path from_flags = work_dir() / "flags.csv";
    REQUIRE(run_cli("--config " + cfg.string() + " simulate", from_cfg) == 0);
    REQUIRE(run_cli("simulate --linear --gamma 0.5 --kappa 0.5 --t-end 5 --analytic "
                    "--stride 0.5",
                    from_flags) == 0);
    CHECK(slurp(from_cfg) == slurp(from_flags));

    {
        std::ofstream out(cfg, std::ios::app);
        out << "mystery=1\n";
    }
    CHECK(run_cli("--config " + cfg.string() + " simulate", from_cfg) == 2);
}

TEST_CASE("json output format wraps the same rows") {
    const fs::path out = work_dir() / "eigen.json";
    REQUIRE(run_cli("eigen --linear --kappa 0.5 --gamma 0.3 --format json", out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["header"][0].get<std::string>() == "gamma");
    CHECK(j["rows"][0][1].get<std::string>() == "unbroken");
    CHECK(j["rows"][0][2].get<double>() == doctest::Approx(1.4));
}
