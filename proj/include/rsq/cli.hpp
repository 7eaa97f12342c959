/**
 * @file cli.hpp
 * @brief The `rsq` front end: run configuration, subcommands and exit codes.
 *
 * Exit codes: 0 pass, 1 suite failure, 2 configuration error, 3 numerical
 * error. Reports go to --out (or output.report) and otherwise to stdout.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsq/darboux.hpp"
#include "rsq/hamiltonians.hpp"
#include "rsq/quiver.hpp"
#include "rsq/report.hpp"
#include "rsq/suites.hpp"

namespace rsq {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitConfig = 2, kExitNumerical = 3 };

struct FlowConfig {
  Family family = Family::H;
  int k = 0;  ///< 0 selects m
  cplx coefficient{0.3, 0.2};
  double t_end = 1.0;
  int steps = 100;
};

struct TadpoleInput {
  TadpoleData data;
  cplx q0;
};

struct SymbolicConfig {
  std::string suite;  ///< empty: every suite that applies to m
  int m = 2;
  int max_deg = 0;
};

struct QuantumConfig {
  std::string op = "dtilde21";
  std::string check = "symbol";
  int n = 3;
  int m = 1;
  std::optional<cplx> q, t;
  cplx alpha = 0.0, beta = 0.0;
  bool control = false;  ///< run at t = 1.1 q^-m and expect failure
  int samples = 20;
  int points = 30;
};

struct RunConfig {
  std::uint64_t seed = 42;
  unsigned threads = 0;
  int m = 1, n = 3;                   ///< quiver for simulate
  std::vector<cplx> q;                ///< empty: drawn from the seed
  std::optional<DarbouxPoint> point;  ///< chart point for simulate
  std::optional<TadpoleInput> matrices;
  FlowConfig flow;
  SuiteConfig grid;
  std::vector<std::string> suites;  ///< empty: all numerical suites
  SymbolicConfig symbolic;
  QuantumConfig quantum;
  std::string report_path, trajectory_path;
};

/// Strict parser: unknown keys and malformed values throw Error(ConfigError).
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);

int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_symbolic(const RunConfig& cfg, std::ostream& out);
int cmd_quantum(const RunConfig& cfg, std::ostream& out);
int cmd_info(std::ostream& out);

/// Parses argv, dispatches and maps exceptions to exit codes.
int run_cli(int argc, char** argv);

}  // namespace rsq
