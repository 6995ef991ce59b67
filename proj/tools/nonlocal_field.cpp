#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nonlocal/error.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/runner.hpp"
#include "nonlocal/scenario.hpp"

namespace fs = std::filesystem;
using namespace nonlocal;

namespace {

int usage_error(const std::string& message) {
  std::cerr << "nonlocal-field: " << message << "\n";
  return kExitUsage;
}

int report(const RunOutcome& outcome, const fs::path& dir) {
  std::cout << "status: " << outcome.manifest.value("status", "unknown") << "\n";
  for (const auto& v : outcome.verdicts) {
    std::cout << "  " << v.name << ": " << to_string(v.status);
    if (!v.reason.empty()) std::cout << " (" << v.reason << ")";
    std::cout << "\n";
  }
  std::cout << "manifest: " << (dir / "manifest.json").string() << "\n";
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate and verify nonlocal field evolution equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", toolkit_version());

  std::string scenario_path;
  std::string output_dir;
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("scenario", scenario_path, "Scenario file")->required();
    sub->add_option("--output-dir", output_dir, "Override the scenario's output directory");
    return sub;
  };
  CLI::App* simulate = add("simulate", "Integrate and write trajectory and norms CSV");
  CLI::App* verify = add("verify", "Run the requested verification suites");
  CLI::App* equilibria = add("equilibria", "Solve for an equilibrium from the initial condition");
  CLI::App* info = add("kernel-info", "Print kernel norms and mass summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    apply_env_thread_cap();
    RunContext ctx;
    ctx.scenario = parse_scenario(scenario_path);
    ctx.base_dir = fs::path(scenario_path).parent_path();
    ctx.output_dir = output_dir.empty() ? ctx.scenario.output.directory : output_dir;

    if (*info) {
      std::cout << kernel_info(ctx).dump(2) << "\n";
      return kExitPass;
    }
    if (*simulate) return report(run_simulate(ctx), ctx.output_dir);
    if (*verify) return report(run_verify(ctx), ctx.output_dir);
    if (*equilibria) return report(run_equilibria(ctx), ctx.output_dir);
  } catch (const DivergenceError& e) {
    std::cerr << "nonlocal-field: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::parse:
      case ErrorKind::validation:
      case ErrorKind::io:
      case ErrorKind::dimension_mismatch:
      case ErrorKind::degenerate_domain:
      case ErrorKind::asymmetric_kernel:
      case ErrorKind::kernel_sign:
      case ErrorKind::invalid_exponent:
      case ErrorKind::invalid_step:
        return usage_error(e.what());
      default:
        std::cerr << "nonlocal-field: " << e.what() << "\n";
        return kExitFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "nonlocal-field: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
