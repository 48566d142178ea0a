// End-to-end tests that drive the `acs` binary through a shell, checking
// subcommand output, exit codes, and the promise that successful runs keep
// standard error silent.

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string errfile = "/tmp/acs_cli_err_" + std::to_string(getpid()) +
                              "_" + std::to_string(counter++) + ".txt";
  const std::string cmd =
      std::string(ACS_BINARY_PATH) + " " + args + " 2>" + errfile;
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    std::remove(errfile.c_str());
    return res;
  }
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    res.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.err = slurp(errfile);
  std::remove(errfile.c_str());
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

constexpr const char* kHeader =
    "g,m1,m2,n,s,a_sq,ricci_positive,min_delta,status,paper_case,index_coeff";

} // namespace

TEST_CASE("spectrum renders the family in all three formats", "[cli][spectrum]") {
  SECTION("json") {
    const RunResult res = run_cli("spectrum --g 4 --m1 4 --m2 11 --format json");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    const nlohmann::json j = nlohmann::json::parse(res.out);
    REQUIRE(j["n"] == 29);
    REQUIRE(j["s"] == 15);
    REQUIRE(std::abs(j["a_sq"].get<double>() - 12.92261628933256) < 1e-9);
    REQUIRE(j["ricci_positive"] == true);
    REQUIRE(j["bounds"]["threshold_ok"] == true);
    REQUIRE(j["bounds"]["b_le_half_a"] == true);
    REQUIRE(std::abs(j["bounds"]["optimal"].get<double>() - 4.309534842669763) <
            1e-9);
  }

  SECTION("table shows multiplicity-annotated eigenvalues") {
    const RunResult res = run_cli("spectrum --g 1 --m1 7 --m2 7");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    REQUIRE(res.out.find("0 (x7)") != std::string::npos);
    REQUIRE(res.out.find("index_coeff") != std::string::npos);
  }

  SECTION("csv emits one header and one data row") {
    const RunResult res = run_cli("spectrum --g 4 --m1 2 --m2 2 --format csv");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    const std::vector<std::string> lines = lines_of(res.out);
    REQUIRE(lines.size() == 2);
    REQUIRE(lines[0] ==
            "g,m1,m2,n,s,d,theta1,a,a_sq,b,ricci_positive,rough_bound,"
            "refined_bound,index_coeff");
    REQUIRE(lines[1].rfind("4,2,2,7,4,10,", 0) == 0);
    REQUIRE(split_csv(lines[1]).size() == 14);
  }

  SECTION("invalid family exits 2 with a diagnostic") {
    const RunResult res = run_cli("spectrum --g 5 --m1 1 --m2 1");
    REQUIRE(res.exit_code == 2);
    REQUIRE(res.err.find("invalid family") != std::string::npos);
  }
}

TEST_CASE("min-delta computes and cross-checks both methods", "[cli][min-delta]") {
  SECTION("default runs both methods and reports their agreement") {
    const RunResult res = run_cli("min-delta --g 3 --m1 4 --m2 4 --samples 5000");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    REQUIRE(res.out.find("min_delta") != std::string::npos);
    REQUIRE(res.out.find("7.25") != std::string::npos);
    REQUIRE(res.out.find("vertex") != std::string::npos);
    REQUIRE(res.out.find("chord_B") != std::string::npos);
    REQUIRE(res.out.find("agreement_gap") != std::string::npos);
  }

  SECTION("multiplicity-1 families reject the exact method with exit 4") {
    for (const char* method : {"exact", "both"}) {
      const RunResult res = run_cli("min-delta --g 2 --m1 1 --m2 9 --method " +
                                    std::string(method));
      REQUIRE(res.exit_code == 4);
      REQUIRE(res.err.find("exact method unavailable") != std::string::npos);
    }
  }

  SECTION("sampling still covers multiplicity-1 families") {
    const RunResult res =
        run_cli("min-delta --g 2 --m1 1 --m2 9 --method sample --samples 20000");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    REQUIRE(res.out.find("-1.1111") != std::string::npos);
  }

  SECTION("an unreachable tolerance trips the agreement gate with exit 3") {
    const RunResult res =
        run_cli("min-delta --g 3 --m1 4 --m2 4 --samples 2000 --tol -1");
    REQUIRE(res.exit_code == 3);
    REQUIRE(res.err.find("methods disagree") != std::string::npos);
  }

  SECTION("invalid family exits 2") {
    const RunResult res = run_cli("min-delta --g 3 --m1 3 --m2 3");
    REQUIRE(res.exit_code == 2);
    REQUIRE(res.err.find("invalid family") != std::string::npos);
  }
}

TEST_CASE("verify-paper selects, runs, and reports criteria", "[cli][verify]") {
  SECTION("a fast subset passes") {
    const RunResult res = run_cli("verify-paper --only 6,8,11");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    REQUIRE(res.out.find("[ 6/11] PASS") != std::string::npos);
    REQUIRE(res.out.find("[ 8/11] PASS") != std::string::npos);
    REQUIRE(res.out.find("[11/11] PASS") != std::string::npos);
    REQUIRE(res.out.find("acceptance: 3/3 passed") != std::string::npos);
  }

  SECTION("worker parallelism does not change the verdict") {
    const RunResult res = run_cli("verify-paper --only 1 --jobs 2");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    REQUIRE(res.out.find("[ 1/11] PASS") != std::string::npos);
  }

  SECTION("a tampered spectrum is caught and fails the run") {
    const RunResult res = run_cli("verify-paper --only 2 --tamper 0.01");
    REQUIRE(res.exit_code == 1);
    REQUIRE(res.out.find("FAIL") != std::string::npos);
    REQUIRE(res.out.find("failing criteria: 2") != std::string::npos);
  }

  SECTION("criterion ids are validated") {
    for (const char* bad : {"0", "12", "6,99"}) {
      const RunResult res = run_cli("verify-paper --only " + std::string(bad));
      REQUIRE(res.exit_code == 1);
      REQUIRE(res.err.find("invalid --only id") != std::string::npos);
    }
  }
}

TEST_CASE("sweep enumerates families into CSV and JSON", "[cli][sweep]") {
  SECTION("g=4 sweep carries the expected verdict rows") {
    const RunResult res = run_cli("sweep --g 4 --max-s 12");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    const std::vector<std::string> lines = lines_of(res.out);
    REQUIRE(lines.at(0) == kHeader);
    bool saw_holds = false, saw_fails = false;
    for (const std::string& line : lines) {
      if (line.rfind("4,4,5,17,9,", 0) == 0) {
        REQUIRE(line.find("PointwiseHolds,g4_min_ge_4") != std::string::npos);
        saw_holds = true;
      }
      if (line.rfind("4,2,3,9,5,", 0) == 0) {
        REQUIRE(line.find("PointwiseFails,open") != std::string::npos);
        saw_fails = true;
      }
    }
    REQUIRE(saw_holds);
    REQUIRE(saw_fails);

    // Floating fields are %.12g-stable: parsing and re-rendering min_delta
    // reproduces the exact text.
    for (const std::string& line : lines) {
      if (line.rfind("4,4,5,", 0) != 0) continue;
      const std::vector<std::string> fields = split_csv(line);
      REQUIRE(fields.size() == 11);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", std::atof(fields[7].c_str()));
      REQUIRE(fields[7] == buf);
    }
  }

  SECTION("the all-g sweep includes curvature-negative and degenerate rows") {
    const RunResult res = run_cli("sweep --g all --max-s 8");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    REQUIRE(res.out.find("\n6,2,2,11,4,") != std::string::npos);
    REQUIRE(res.out.find("ricci_not_positive") != std::string::npos);
    // (1,1,1) admits no orthonormal pair; its minimum renders as nan.
    REQUIRE(res.out.find("\n1,1,1,0,2,0,true,nan,Indeterminate,") !=
            std::string::npos);
  }

  SECTION("json output parses and null-encodes the degenerate minimum") {
    const RunResult res = run_cli("sweep --g 1 --max-s 4 --format json");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.err.empty());
    const nlohmann::json parsed = nlohmann::json::parse(res.out);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 2);
    REQUIRE(parsed[0]["min_delta"].is_null());
    REQUIRE(parsed[1]["min_delta"].is_number());
  }

  SECTION("parallel output is byte-identical to serial output") {
    const RunResult serial = run_cli("sweep --g 2 --max-s 8 --jobs 1");
    const RunResult parallel = run_cli("sweep --g 2 --max-s 8 --jobs 8");
    REQUIRE(serial.exit_code == 0);
    REQUIRE(parallel.exit_code == 0);
    REQUIRE(serial.out == parallel.out);
  }

  SECTION("--out writes the same payload to a file") {
    const std::string path =
        "/tmp/acs_sweep_" + std::to_string(getpid()) + ".csv";
    const RunResult to_file = run_cli("sweep --g 3 --max-s 8 --out " + path);
    REQUIRE(to_file.exit_code == 0);
    REQUIRE(to_file.err.empty());
    REQUIRE(to_file.out.empty());
    const RunResult to_stdout = run_cli("sweep --g 3 --max-s 8");
    REQUIRE(slurp(path) == to_stdout.out);
    std::remove(path.c_str());
  }

  SECTION("an unwritable output path exits 1") {
    const RunResult res =
        run_cli("sweep --g 3 --max-s 8 --out /nonexistent/dir/x.csv");
    REQUIRE(res.exit_code == 1);
    REQUIRE(res.err.find("cannot open output path") != std::string::npos);
  }
}

TEST_CASE("the top-level parser demands a subcommand", "[cli][parser]") {
  const RunResult res = run_cli("");
  REQUIRE(res.exit_code != 0);
  REQUIRE_FALSE(res.err.empty());
}
