// test_cli.cpp -- end-to-end checks of the command line tool: exit codes,
// output determinism, catalog override, and the JSON report envelope.

#include "doctest.h"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string(HYPERFOL_CLI_PATH) + " " + args + " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

// drop the line carrying the run timestamp
std::string without_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("timestamp") == std::string::npos) out += line + "\n";
  return out;
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& content) : path_(name) {
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("cli classify") {
  SUBCASE("known space lists all families") {
    RunResult r = run_cli("classify SL4R");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("a1,a3") != std::string::npos);
    CHECK(r.out.find("RH2 x RH2 x E1") != std::string::npos);
  }

  SUBCASE("unknown space is a usage error") {
    RunResult r = run_cli("classify NOSUCH");
    CHECK(r.exit_code == 2);
  }

  SUBCASE("json output is deterministic apart from the timestamp") {
    RunResult a = run_cli("classify SL4R --json --orbits-under-diagram-auts");
    RunResult b = run_cli("classify SL4R --json --orbits-under-diagram-auts");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(without_timestamp(a.out) == without_timestamp(b.out));

    nlohmann::json doc = nlohmann::json::parse(a.out);
    CHECK(doc.contains("timestamp"));
    CHECK(doc["families"].is_array());
    CHECK(doc["families"].size() == 5);
    CHECK(doc["orbits"].size() == 4);
  }
}

TEST_CASE("cli curvatures") {
  SUBCASE("unit spectrum of the rank-one minimal leaf") {
    RunResult r = run_cli("curvatures SU12 --phi a1 --a 0 --json");
    REQUIRE(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["mean_curvature"]["minimal"] == true);
    REQUIRE(doc["normals"].is_array());
    REQUIRE(!doc["normals"].empty());
    bool saw_alpha = false;
    for (const auto& rep : doc["normals"])
      if (rep["kind"] == "alpha-type") {
        saw_alpha = true;
        CHECK(std::abs(rep["unit"]["trace"].get<double>()) < 1e-12);
        CHECK(rep["trace_identity_residual"].get<double>() < 1e-12);
      }
    CHECK(saw_alpha);
  }

  SUBCASE("shift list must match phi") {
    RunResult r = run_cli("curvatures SL4R --phi a1 --a 1,2");
    CHECK(r.exit_code == 2);
  }

  SUBCASE("phi must be orthogonal") {
    RunResult r = run_cli("curvatures SL4R --phi a1,a2");
    CHECK(r.exit_code == 2);
  }

  SUBCASE("named normal direction must belong to phi") {
    RunResult r = run_cli("curvatures SL4R --phi a1 --normal alpha:a2");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("cli verify") {
  SUBCASE("single applicable suite passes") {
    RunResult r = run_cli("verify SL4R --suite criterion");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }

  SUBCASE("inapplicable suite requested explicitly is a usage error") {
    RunResult r = run_cli("verify SL2C --suite nonpolar-example");
    CHECK(r.exit_code == 2);
  }

  SUBCASE("all suites on a rank-one space skip the inapplicable ones") {
    RunResult r = run_cli("verify SL2C --suite all");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("SKIP") != std::string::npos);
  }

  SUBCASE("unknown suite name is a usage error") {
    RunResult r = run_cli("verify SL4R --suite bogus");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("cli catalog") {
  SUBCASE("listing shows every bundled space") {
    RunResult r = run_cli("catalog");
    CHECK(r.exit_code == 0);
    for (const char* name :
         {"SL2R", "SL3R", "SL4R", "SL5R", "SL2C", "SU12"})
      CHECK(r.out.find(name) != std::string::npos);
  }

  SUBCASE("validation passes on the bundled catalog") {
    RunResult r = run_cli("catalog --validate");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("cli catalog override") {
  SUBCASE("custom catalog replaces the bundled one") {
    TempFile cat("tmp_catalog_g2.json", R"([
      {"name": "G2SPLIT", "root_type": "G2", "rank": 2,
       "multiplicities": {"short": 1, "long": 1}}
    ])");
    RunResult r =
        run_cli("classify G2SPLIT", "HYPERFOL_CATALOG=" + cat.path());
    CHECK(r.exit_code == 0);
    // old names are gone with the bundled catalog
    RunResult gone =
        run_cli("classify SL4R", "HYPERFOL_CATALOG=" + cat.path());
    CHECK(gone.exit_code == 2);
  }

  SUBCASE("unreadable catalog path is a usage error") {
    RunResult r =
        run_cli("catalog", "HYPERFOL_CATALOG=/nonexistent/catalog.json");
    CHECK(r.exit_code == 2);
  }

  SUBCASE("entry contradicting its realization fails validation") {
    TempFile cat("tmp_catalog_bad.json", R"([
      {"name": "BAD", "root_type": "A", "rank": 3,
       "multiplicities": {"short": 1}, "realization": "sl2_complex"}
    ])");
    RunResult r =
        run_cli("catalog --validate", "HYPERFOL_CATALOG=" + cat.path());
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
  }
}

TEST_CASE("cli usage errors") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--bogus-flag").exit_code == 2);
  CHECK(run_cli("classify").exit_code == 2);          // missing space
  CHECK(run_cli("curvatures SL4R").exit_code == 2);   // missing --phi
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("classify --help").exit_code == 0);
}
