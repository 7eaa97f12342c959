#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsq/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("rsq_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout", err = scratch_dir() / "stderr";
  const std::string cmd = std::string(RSQ_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

std::string fixture(const std::string& name) { return std::string(RSQ_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("info lists the interface") {
  const Run r = run_cli("info");
  CHECK(r.code == 0);
  const auto j = rsq::Json::parse(r.out);
  CHECK(j["numeric_suites"].size() == 6);
  CHECK(j["exit_codes"]["config_error"] == 2);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run_cli("verify --config " + write_config("bad.json", "{\"seed\": 1,").string()).code == 2);
  const Run unknown = run_cli("verify --config " + write_config("unknown.json", "{\"sed\": 1}").string());
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("sed") != std::string::npos);
  CHECK(run_cli("verify --config " + write_config("nested.json", "{\"quiver\": {\"m\": 1, \"k\": 2}}").string()).code == 2);
  CHECK(run_cli("verify --suite no-such-suite").code == 2);
  CHECK(run_cli("quantum --q -1 --t 0.5").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("a broken moment point fails and names the relation") {
  const Run bad = run_cli("verify --config " + fixture("broken_moment.json"));
  CHECK(bad.code == 1);
  CHECK(bad.err.find("(1+XY)(1+YX)^-1(1+VW) = q0") != std::string::npos);
  const auto report = rsq::Json::parse(bad.out);
  CHECK(report["pass"] == false);
  CHECK(report["suites"][0]["checks"][0]["pass"] == false);

  const Run good = run_cli("verify --config " + fixture("good_point.json"));
  CHECK(good.code == 0);
  CHECK(good.err.empty());
}

TEST_CASE("suite selection") {
  const fs::path out = scratch_dir() / "poisson.json";
  const Run r = run_cli("verify --suite poisson --m 1 --n 2 --samples 1 --out " + out.string());
  CHECK(r.code == 0);
  const auto report = rsq::Json::parse(slurp(out));
  REQUIRE(report["suites"].size() == 1);
  CHECK(report["suites"][0]["name"] == "poisson");
  for (const auto& c : report["suites"][0]["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("reports do not depend on the thread count") {
  const fs::path a = scratch_dir() / "t1.json", b = scratch_dir() / "t4.json";
  CHECK(run_cli("verify --suite moment --suite flows --samples 2 --seed 7 --threads 1 --out " + a.string()).code == 0);
  CHECK(run_cli("verify --suite moment --suite flows --samples 2 --seed 7 --threads 4 --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("n = 1 trajectory matches the scalar closed form") {
  const double x0 = 1.2, s0 = 0.7, c = 0.3;
  const fs::path cfg = write_config("sim.json", R"({
    "quiver": {"m": 1, "n": 1, "q": [[0.9, 0.2]]},
    "point": {"x": [1.2], "sigma": [0.7]},
    "flow": {"family": "H", "k": 1, "coefficient": 0.3, "t_end": 2.0, "steps": 21}
  })");
  const fs::path csv = scratch_dir() / "traj.csv";
  const Run r = run_cli("simulate --config " + cfg.string() + " --out " + csv.string());
  REQUIRE(r.code == 0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("time,re_pos_1,im_pos_1,re_H1,im_H1", 0) == 0);
  const double y = s0 - 1.0 / x0;  // Y = B - X^{-1} with B = sigma for n = 1
  int rows = 0;
  while (std::getline(in, line)) {
    double t = 0, re = 0, im = 0;
    char comma = 0;
    std::istringstream row(line);
    row >> t >> comma >> re >> comma >> im;
    const double e = std::exp(-t * c * y);
    const double expected = e * x0 + (e - 1.0) / y;
    CHECK(std::abs(re - expected) < 1e-12);
    CHECK(std::abs(im) < 1e-12);
    ++rows;
  }
  CHECK(rows == 21);
  const auto summary = rsq::Json::parse(r.out);
  CHECK(summary["max_conservation_drift"].get<double>() < 1e-12);
}

TEST_CASE("symbolic suites from the command line") {
  CHECK(run_cli("symbolic --quiver tadpole --suite tadpole-mixed --max-deg 4").code == 0);
  const Run cyc = run_cli("symbolic --quiver cyclic --m 3 --suite cyclic-mixed");
  CHECK(cyc.code == 0);
  CHECK(rsq::Json::parse(cyc.out)["pass"] == true);
  CHECK(run_cli("symbolic --quiver tadpole --suite y-powers").code == 2);
}

TEST_CASE("quantum checks from the command line") {
  const Run control = run_cli("quantum --check quasi-invariance --control --n 2 --m 1 --samples 5");
  CHECK(control.code == 0);
  const auto j = rsq::Json::parse(control.out);
  CHECK(j["expected_fail"] == true);
  CHECK(j["observed_fail"] == true);
  const Run plain = run_cli("quantum --check quasi-invariance --n 2 --m 2 --samples 5");
  CHECK(plain.code == 0);
  CHECK(rsq::Json::parse(plain.out)["expected_fail"] == false);
  CHECK(run_cli("quantum --op macdonald --check symbol --n 3").code == 0);
  CHECK(run_cli("quantum --op macdonald --check quasi-invariance").code == 2);
}
