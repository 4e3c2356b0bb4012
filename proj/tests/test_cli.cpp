#include <catch2/catch.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd =
      env_prefix + " \"" + BLOCHAPPROX_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t nread;
  while ((nread = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, nread);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kApproxPlus =
    "approx --a 0.5 --k 1 --phi 0 --theta 1.0471975512 --set sprime --out json";

}  // namespace

TEST_CASE("approx emits the documented schema with an oracle cross-check", "[cli]") {
  const RunResult r = run_cli(kApproxPlus);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["case"] == "I_ii");
  CHECK(std::abs(j["distance"].get<double>() - 0.3660254) < 1e-6);
  CHECK(std::abs(j["distance"].get<double>() - j["oracle_distance"].get<double>()) <= 1e-9);
  REQUIRE(j["weights"].is_array());
  CHECK(j["weights"].size() == 4);
  CHECK(j["free_params"].is_array());
  CHECK(j["input"]["a"] == 0.5);
  CHECK(j["input"]["set"] == "sprime");
}

TEST_CASE("approx reference invocations", "[cli]") {
  const RunResult mixed = run_cli("approx --a 0.5 --k 0 --phi 0 --theta 0.7853981634 --set sprime");
  REQUIRE(mixed.exit_code == 0);
  const json jm = json::parse(mixed.out);
  CHECK(jm["case"] == "I_i");
  CHECK(std::abs(jm["distance"].get<double>()) < 1e-12);
  REQUIRE(jm["free_params"].size() == 1);
  CHECK(jm["free_params"][0]["name"] == "t");
  CHECK(std::abs(jm["free_params"][0]["max"].get<double>() - 0.5) < 1e-12);

  const RunResult tip = run_cli(
      "approx --a 0.2113248654 --k 1 --phi 0.7853981634 --vartheta 1.2 --set sdoubleprime");
  REQUIRE(tip.exit_code == 0);
  const json jt = json::parse(tip.out);
  CHECK(jt["case"] == "II_i");
  CHECK(std::abs(jt["distance"].get<double>() - jt["oracle_distance"].get<double>()) <= 1e-9);
}

TEST_CASE("output is deterministic and re-parses to the same value", "[cli]") {
  const RunResult a = run_cli(kApproxPlus);
  const RunResult b = run_cli(kApproxPlus);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  const json j = json::parse(a.out);
  CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("validation failures exit with code 2 and no stdout payload", "[cli]") {
  const RunResult missing = run_cli("approx --a 0.5 --k 1 --phi 0 --set sprime");
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.empty());

  const RunResult bad_a = run_cli("approx --a 1.5 --k 1 --phi 0 --theta 0.5 --set sprime");
  CHECK(bad_a.exit_code == 2);

  const RunResult bad_axis = run_cli(
      "sweep --axis1 bogus --from1 0 --to1 1 --axis2 k --from2 0 --to2 1 --grid 4 --theta 0.5");
  CHECK(bad_axis.exit_code == 2);
  CHECK(bad_axis.out.empty());
}

TEST_CASE("non-canonical states exit 3 unless the oracle fallback is chosen", "[cli]") {
  const RunResult refused =
      run_cli("approx --a 0.7 --k 0.5 --phi 0 --theta 0.5 --set sprime");
  CHECK(refused.exit_code == 3);
  CHECK(refused.out.empty());

  const RunResult fallback = run_cli(
      "approx --a 0.7 --k 0.5 --phi 0 --theta 0.5 --set sprime --oracle-fallback");
  REQUIRE(fallback.exit_code == 0);
  const json j = json::parse(fallback.out);
  CHECK(j["case"] == "oracle");
  CHECK(std::abs(j["distance"].get<double>() - j["oracle_distance"].get<double>()) <= 1e-12);
}

TEST_CASE("help exits cleanly and csv output is available for approx", "[cli]") {
  const RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("approx") != std::string::npos);

  const RunResult csv =
      run_cli("approx --a 0.5 --k 1 --phi 0 --theta 1.0471975512 --set sprime --out csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("case,distance,oracle_distance,w0,w1,w2,w3\n", 0) == 0);
  CHECK(csv.out.find("I_ii,0.36602540378") != std::string::npos);
}

TEST_CASE("degree flag converts angles", "[cli]") {
  const RunResult rad = run_cli(kApproxPlus);
  const RunResult deg =
      run_cli("approx --a 0.5 --k 1 --phi 0 --theta 60 --set sprime --out json --deg");
  REQUIRE(rad.exit_code == 0);
  REQUIRE(deg.exit_code == 0);
  const double d1 = json::parse(rad.out)["distance"].get<double>();
  const double d2 = json::parse(deg.out)["distance"].get<double>();
  CHECK(std::abs(d1 - d2) < 1e-9);
}

TEST_CASE("sweep produces a deterministic CSV grid", "[cli]") {
  const std::string cmd =
      "sweep --axis1 a --from1 0 --to1 0.5 --axis2 k --from2 0 --to2 1 --grid 5 "
      "--phi 0 --theta 0.7853981634 --set sprime";
  const RunResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("axis1,axis2,case,distance,oracle_distance\n", 0) == 0);
  // Header plus 25 rows, LF endings only.
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 26);
  CHECK(r.out.find('\r') == std::string::npos);

  // Worker count must not affect the bytes.
  const RunResult one = run_cli(cmd, "BLOCHAPPROX_THREADS=1");
  const RunResult two = run_cli(cmd, "BLOCHAPPROX_THREADS=2");
  CHECK(one.out == r.out);
  CHECK(two.out == r.out);
}

namespace {

struct CsvRow {
  double axis1 = 0.0, axis2 = 0.0;
  std::string case_label;
  double distance = 0.0, oracle = 0.0;
};

std::vector<CsvRow> parse_csv(const std::string& out) {
  std::vector<CsvRow> rows;
  std::size_t pos = out.find('\n');  // skip header
  REQUIRE(pos != std::string::npos);
  ++pos;
  while (pos < out.size()) {
    const std::size_t eol = out.find('\n', pos);
    REQUIRE(eol != std::string::npos);
    const std::string line = out.substr(pos, eol - pos);
    pos = eol + 1;
    CsvRow row;
    std::size_t c1 = line.find(','), c2 = line.find(',', c1 + 1),
                c3 = line.find(',', c2 + 1), c4 = line.find(',', c3 + 1);
    row.axis1 = std::stod(line.substr(0, c1));
    row.axis2 = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    row.case_label = line.substr(c2 + 1, c3 - c2 - 1);
    row.distance = std::stod(line.substr(c3 + 1, c4 - c3 - 1));
    row.oracle = std::stod(line.substr(c4 + 1));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("pair sweep reproduces the case-i validity windows", "[cli]") {
  // A 200x200 sweep over (theta, vartheta) at the case-i reference state:
  // rows labelled I_i+II_i must fill exactly the product of the known windows
  // (0.3509, 0.6319) x (0.9061, 1.4501) u (2.4768, 3.0209), to one grid cell.
  const int grid = 200;
  const double t_lo = 0.05, t_hi = 1.5, v_lo = 0.05, v_hi = 3.09;
  const RunResult r = run_cli(
      "sweep --axis1 theta --from1 0.05 --to1 1.5 --axis2 vartheta --from2 0.05 --to2 3.09 "
      "--grid 200 --a 0.2113248654 --k 1 --phi 0.7853981634 --set pair");
  REQUIRE(r.exit_code == 0);
  const std::vector<CsvRow> rows = parse_csv(r.out);
  REQUIRE(rows.size() == 200 * 200);

  const double cell1 = (t_hi - t_lo) / (grid - 1);
  const double cell2 = (v_hi - v_lo) / (grid - 1);
  const auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  int checked = 0;
  for (const CsvRow& row : rows) {
    // Skip cells touching a window boundary; endpoints are grid-resolution.
    const bool near_edge =
        std::abs(row.axis1 - 0.3509) < cell1 || std::abs(row.axis1 - 0.6319) < cell1 ||
        std::abs(row.axis2 - 0.9061) < cell2 || std::abs(row.axis2 - 1.4501) < cell2 ||
        std::abs(row.axis2 - 2.4768) < cell2 || std::abs(row.axis2 - 3.0209) < cell2;
    if (near_edge) continue;
    ++checked;
    const bool inside = in(row.axis1, 0.3509, 0.6319) &&
                        (in(row.axis2, 0.9061, 1.4501) || in(row.axis2, 2.4768, 3.0209));
    const bool labelled = row.case_label == "I_i+II_i";
    INFO("theta " << row.axis1 << " vartheta " << row.axis2 << " label " << row.case_label);
    REQUIRE(labelled == inside);
  }
  CHECK(checked > 35000);
}

TEST_CASE("state-space sweep matches the case-condition contour", "[cli]") {
  // Over (a, k) at phi = 0, theta = pi/4 the case-i region is exactly
  // x <= 1-z and x <= 1+z with x = 2k sqrt(a(1-a)), z = 1-2a; the emitted
  // labels must follow that contour.
  const RunResult r = run_cli(
      "sweep --axis1 a --from1 0.01 --to1 0.49 --axis2 k --from2 0 --to2 1 --grid 40 "
      "--phi 0 --theta 0.7853981633974483 --set sprime");
  REQUIRE(r.exit_code == 0);
  const std::vector<CsvRow> rows = parse_csv(r.out);
  REQUIRE(rows.size() == 40 * 40);
  for (const CsvRow& row : rows) {
    CHECK(row.distance >= 0.0);
    CHECK(std::abs(row.distance - row.oracle) <= 1e-9);
    const double a = row.axis1, k = row.axis2;
    const double x = 2.0 * k * std::sqrt(a * (1.0 - a));
    const double z = 1.0 - 2.0 * a;
    const double margin = std::min((1.0 - z) - x, (1.0 + z) - x);
    if (std::abs(margin) < 1e-9) continue;
    CHECK((row.case_label == "I_i") == (margin >= 0.0));
  }

  // With phi = pi/2 the x expectation vanishes and the case-i condition is
  // vacuous: every grid point is labelled I_i.
  const RunResult ysweep = run_cli(
      "sweep --axis1 a --from1 0.01 --to1 0.49 --axis2 k --from2 0 --to2 1 --grid 10 "
      "--phi 1.5707963267948966 --theta 0.7853981633974483 --set sprime");
  REQUIRE(ysweep.exit_code == 0);
  for (const CsvRow& row : parse_csv(ysweep.out)) CHECK(row.case_label == "I_i");
}

TEST_CASE("verify passes and reports its tolerances", "[cli]") {
  const RunResult r = run_cli("verify --samples 300 --seed 42");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["samples"] == 300);
  CHECK(j["max_distance_discrepancy"].get<double>() <= 1e-9);
  CHECK(j["relation18_violations"] == 0);

  const RunResult again = run_cli("verify --samples 300 --seed 42");
  CHECK(again.out == r.out);

  const RunResult single = run_cli("verify --samples 1 --seed 7");
  CHECK(single.exit_code == 0);
}

TEST_CASE("decompose and uncertainty commands", "[cli]") {
  // theta = atan(0.5) sits inside this state's window tan(theta) in [3/8, 2/3].
  const RunResult d =
      run_cli("decompose --a 0.2 --k 0.75 --phi 0 --theta 0.4636476090008061");
  REQUIRE(d.exit_code == 0);
  const json jd = json::parse(d.out);
  CHECK(jd["decomposable"] == true);
  CHECK(jd["theta_admissible"] == true);
  CHECK(jd["weights"].size() == 6);
  CHECK(jd["free_params"].size() == 2);
  CHECK(std::abs(jd["tan_theta_min"].get<double>() - 0.375) < 1e-9);
  CHECK(std::abs(jd["tan_theta_max"].get<double>() - 2.0 / 3.0) < 1e-9);

  const RunResult u = run_cli(
      "uncertainty --a 0.2113248654 --k 1 --phi 0.7853981634 --theta 0.5 --vartheta 1.2");
  REQUIRE(u.exit_code == 0);
  const json ju = json::parse(u.out);
  CHECK(std::abs(ju["lhs18"].get<double>() - 0.5) < 1e-9);
  CHECK(std::abs(ju["rhs18"].get<double>() - 0.5) < 1e-9);
  CHECK(ju["applicable"] == true);
  CHECK(std::abs(ju["lhs19"].get<double>() - 0.5) < 1e-9);

  const RunResult ranges = run_cli(
      "uncertainty --a 0.2113248654 --k 1 --phi 0.7853981634 --ranges --grid 2048");
  REQUIRE(ranges.exit_code == 0);
  const json jr = json::parse(ranges.out);
  REQUIRE(jr["theta_intervals"].size() == 1);
  CHECK(std::abs(jr["theta_intervals"][0][0].get<double>() - 0.3509) < 5e-4);
  CHECK(std::abs(jr["theta_intervals"][0][1].get<double>() - 0.6319) < 5e-4);
  REQUIRE(jr["vartheta_intervals"].size() == 2);

  const RunResult oracle = run_cli(
      "oracle --a 0.3 --k 0.9 --phi 2.5 --set stripleprime --theta 0.9");
  REQUIRE(oracle.exit_code == 0);
  const json jo = json::parse(oracle.out);
  CHECK(jo["case"] == "oracle");
  CHECK(jo["kkt_residual"].get<double>() <= 1e-8);
}
