#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCli = FLOWFORMS_CLI_PATH;

int run(const std::string& args, const fs::path& log) {
  std::string cmd = std::string(kCli) + " " + args + " > " + log.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  return rc < 0 ? rc : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path fresh_dir(const char* name) {
  fs::path p = fs::temp_directory_path() / "flowforms_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const char* kLinearConfig = R"({
  "flow": {"preset": "linear"},
  "form": {"periods": [-1.0, 0.0], "potential": []},
  "grid": [16, 16],
  "tau": 2.0,
  "margin": 0.5
})";

}  // namespace

TEST_CASE("cli reports usage and config errors") {
  fs::path dir = fresh_dir("errors");
  CHECK(run("--help", dir / "help.log") == 0);
  CHECK(run("analyze", dir / "noconfig.log") == 2);
  CHECK(run("analyze --config " + (dir / "absent.json").string() +
                " --out " + (dir / "o1").string(),
            dir / "absent.log") == 2);

  write(dir / "bad.json", "{\n  \"flow\": {,}\n}");
  CHECK(run("analyze --config " + (dir / "bad.json").string() + " --out " +
                (dir / "o2").string(),
            dir / "bad.log") == 2);
  CHECK(slurp(dir / "bad.log").find("line 2") != std::string::npos);

  write(dir / "unknown.json", R"({
    "flow": {"preset": "linear"},
    "form": {"periods": [-1.0, 0.0], "potential": []},
    "grid": [8, 8],
    "taus": 2.0
  })");
  CHECK(run("analyze --config " + (dir / "unknown.json").string() + " --out " +
                (dir / "o3").string(),
            dir / "unknown.log") == 2);
  CHECK(slurp(dir / "unknown.log").find("taus") != std::string::npos);
}

TEST_CASE("cli analyze writes reports and holds on the linear flow") {
  fs::path dir = fresh_dir("analyze");
  write(dir / "config.json", kLinearConfig);
  int rc = run("analyze --config " + (dir / "config.json").string() + " --out " +
                   (dir / "out").string(),
               dir / "run.log");
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "recurrence.json"));
  CHECK(fs::exists(dir / "out" / "recurrence.svg"));
  CHECK(fs::exists(dir / "out" / "condition_II.json"));
  CHECK(fs::exists(dir / "out" / "condition_III.json"));
  CHECK(fs::exists(dir / "out" / "condition_IV.json"));

  json eff = json::parse(slurp(dir / "out" / "effective_config.json"));
  CHECK(eff["theta"].is_number());  // default resolved and recorded
  CHECK(eff["tau"] == 2.0);
  CHECK(eff["grid"] == json::array({16, 16}));

  json ii = json::parse(slurp(dir / "out" / "condition_II.json"));
  CHECK(ii["holds"] == true);

  // a single named condition restricts the artifact set
  fs::path only = dir / "only";
  int rc2 = run("analyze --condition III --config " +
                    (dir / "config.json").string() + " --out " + only.string(),
                dir / "run2.log");
  CHECK(rc2 == 0);
  CHECK(fs::exists(only / "condition_III.json"));
  CHECK(!fs::exists(only / "condition_II.json"));
  CHECK(!fs::exists(only / "condition_IV.json"));
}

TEST_CASE("cli analyze exits 3 when conditions fail") {
  fs::path dir = fresh_dir("flip");
  write(dir / "config.json", R"({
    "flow": {"preset": "linear"},
    "form": {"periods": [1.0, 0.0], "potential": []},
    "grid": [16, 16]
  })");
  int rc = run("analyze --config " + (dir / "config.json").string() + " --out " +
                   (dir / "out").string(),
               dir / "run.log");
  CHECK(rc == 3);
  json ii = json::parse(slurp(dir / "out" / "condition_II.json"));
  CHECK(ii["holds"] == false);
  CHECK(ii["witness"]["weight"].get<double>() > 0.0);
}

TEST_CASE("cli synthesize produces a verified certificate") {
  fs::path dir = fresh_dir("synth");
  write(dir / "config.json", kLinearConfig);
  int rc = run("synthesize --config " + (dir / "config.json").string() +
                   " --out " + (dir / "out").string(),
               dir / "run.log");
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "lyapunov.json"));
  CHECK(fs::exists(dir / "out" / "total_form.json"));
  CHECK(fs::exists(dir / "out" / "verification.json"));
  CHECK(fs::exists(dir / "out" / "iota_heatmap.svg"));

  json v = json::parse(slurp(dir / "out" / "verification.json"));
  CHECK(v["pass"] == true);
  CHECK(v["worst_pairing"].get<double>() <= -0.5);

  json l = json::parse(slurp(dir / "out" / "lyapunov.json"));
  CHECK(l["feasible"] == true);

  // the total form of the linear run is the class representative itself
  json tf = json::parse(slurp(dir / "out" / "total_form.json"));
  CHECK(tf["periods"] == json::array({-1.0, 0.0}));
}

TEST_CASE("cli synthesize exits 4 on the obstructed class") {
  fs::path dir = fresh_dir("synth4");
  write(dir / "config.json", R"({
    "flow": {"preset": "linear"},
    "form": {"periods": [1.0, 0.0], "potential": []},
    "grid": [16, 16]
  })");
  int rc1 = run("synthesize --config " + (dir / "config.json").string() +
                    " --out " + (dir / "a").string(),
                dir / "run1.log");
  int rc2 = run("synthesize --config " + (dir / "config.json").string() +
                    " --out " + (dir / "b").string(),
                dir / "run2.log");
  CHECK(rc1 == 4);
  CHECK(rc2 == 4);
  CHECK(slurp(dir / "a" / "lyapunov.json") == slurp(dir / "b" / "lyapunov.json"));
  json l = json::parse(slurp(dir / "a" / "lyapunov.json"));
  CHECK(l["feasible"] == false);
  CHECK(!l["witness"].is_null());
}

TEST_CASE("cli discretize caches the graph for later runs") {
  fs::path dir = fresh_dir("disc");
  write(dir / "config.json", kLinearConfig);
  fs::path out = dir / "out";
  int rc = run("discretize --config " + (dir / "config.json").string() +
                   " --out " + out.string(),
               dir / "run.log");
  CHECK(rc == 0);
  CHECK(fs::exists(out / "graph.csv"));
  CHECK(fs::exists(out / "graph_meta.json"));
  std::string before = slurp(out / "graph.csv");

  int rc2 = run("analyze --config " + (dir / "config.json").string() + " --out " +
                    out.string(),
                dir / "run2.log");
  CHECK(rc2 == 0);
  CHECK(slurp(out / "graph.csv") == before);  // reused, not rebuilt
}

TEST_CASE("cli asymptotic writes one row per start") {
  fs::path dir = fresh_dir("asym");
  write(dir / "config.json", R"({
    "flow": {"preset": "linear"},
    "form": {"periods": [-1.0, 0.0], "potential": []},
    "trajectory": {"t_total": 50.0, "step": 0.01,
                   "x0": [[0.1, 0.2], [0.6, 0.7]]}
  })");
  int rc = run("asymptotic --config " + (dir / "config.json").string() +
                   " --out " + (dir / "out").string(),
               dir / "run.log");
  CHECK(rc == 0);
  std::string csv = slurp(dir / "out" / "asymptotic.csv");
  CHECK(csv.rfind("x0_0,x0_1,", 0) == 0);
  int rows = 0;
  for (size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; ++pos)
    ++rows;
  CHECK(rows == 3);  // header plus two starts
}

TEST_CASE("cli oracle selftest passes") {
  fs::path dir = fresh_dir("selftest");
  CHECK(run("oracle-selftest --seed 7", dir / "run.log") == 0);
  std::string log = slurp(dir / "run.log");
  CHECK(log.find("[ok]") != std::string::npos);
  CHECK(log.find("[FAIL]") == std::string::npos);
}
