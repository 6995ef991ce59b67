#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nonlocal/scenario.hpp"

namespace nonlocal {

enum ExitCode : int { kExitPass = 0, kExitUsage = 1, kExitDivergence = 2, kExitFailure = 3 };

enum class SuiteStatus { pass, fail, skipped };

const char* to_string(SuiteStatus status) noexcept;

const char* toolkit_version() noexcept;

nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

struct SuiteVerdict {
  std::string name;
  SuiteStatus status = SuiteStatus::pass;
  std::string reason;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct RunOutcome {
  int exit_code = kExitPass;
  nlohmann::ordered_json manifest;
  std::vector<SuiteVerdict> verdicts;
};

struct RunContext {
  Scenario scenario;
  std::filesystem::path base_dir;    // for relative kernel paths
  std::filesystem::path output_dir;  // resolved output directory
};

/// Integrates, writes trajectory.csv and norms.csv, then manifest.json.
RunOutcome run_simulate(const RunContext& ctx);

/// Runs the requested suites and writes manifest.json with their verdicts.
RunOutcome run_verify(const RunContext& ctx);

/// Damped fixed point from the initial condition, Newton polish, and
/// equilibrium.csv / manifest.json.
RunOutcome run_equilibria(const RunContext& ctx);

/// Kernel summary (norms, row and tail mass) as JSON.
nlohmann::ordered_json kernel_info(const RunContext& ctx);

/// Evaluates one suite on a prebuilt model. Trajectory-based suites integrate
/// from u0 themselves unless `trajectory` is given.
SuiteVerdict run_suite(const std::string& name, const Scenario& scenario, const Model& model,
                       const std::vector<double>& u0, const Trajectory* trajectory);

}  // namespace nonlocal
