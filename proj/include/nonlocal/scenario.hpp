#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nonlocal/dynamics.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/nonlinearity.hpp"

namespace nonlocal {

struct NonlinearitySpec {
  std::string family = "identity";
  ParamMap params;

  Nonlinearity build() const { return Nonlinearity::from_config(family, params); }
  friend bool operator==(const NonlinearitySpec&, const NonlinearitySpec&) = default;
};

enum class InitialKind { constant, random, expression };

const char* to_string(InitialKind kind) noexcept;

inline constexpr const char* kSuiteNames[] = {"boundK", "absorbing", "comparison", "lyapunov",
                                              "equilibria"};

/// Everything a run needs, as read from a scenario file. INI layout with
/// sections [model] [kernel] [f] [g] [run] [analysis] [output].
struct Scenario {
  struct ModelSection {
    int dim = 1;
    std::vector<Interval> bounds{{0.0, 1.0}};
    std::vector<std::size_t> resolution{129};
    double beta = 1.0;
    double h = 0.0;
    friend bool operator==(const ModelSection&, const ModelSection&) = default;
  };
  struct KernelSection {
    KernelFamily family = KernelFamily::gaussian;
    double width = 0.1;
    double radius = 0.1;
    std::string path;  // custom matrix CSV, relative to the scenario file
    friend bool operator==(const KernelSection&, const KernelSection&) = default;
  };
  struct RunSection {
    double t_end = 10.0;
    double dt = 0.01;
    Scheme scheme = Scheme::etd1;
    InitialKind initial = InitialKind::constant;
    double value = 0.0;
    std::optional<std::uint64_t> seed;
    double amplitude = 1.0;
    double offset = 0.0;
    std::string expression;
    friend bool operator==(const RunSection&, const RunSection&) = default;
  };
  struct AnalysisSection {
    std::vector<std::string> suites;
    double p = 2.0;
    double sigma = 1.0;
    friend bool operator==(const AnalysisSection&, const AnalysisSection&) = default;
  };
  struct OutputSection {
    std::string directory = "output";
    std::vector<std::string> formats{"csv", "json"};
    std::size_t stride = 1;
    friend bool operator==(const OutputSection&, const OutputSection&) = default;
  };

  ModelSection model;
  KernelSection kernel;
  NonlinearitySpec f{"identity", {}};
  NonlinearitySpec g{"tanh", {}};
  RunSection run;
  AnalysisSection analysis;
  OutputSection output;

  bool wants(const std::string& suite) const;
  bool wants_format(const std::string& format) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates. Unknown sections or keys raise a parse error naming
/// them; inconsistent settings raise a validation error.
Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::filesystem::path& path);

/// Canonical text form; parse_scenario_text(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& scenario);

void validate_scenario(const Scenario& scenario);

/// base_dir resolves a relative custom kernel path.
Model build_model(const Scenario& scenario, const std::filesystem::path& base_dir = {});

/// constant: value. random: offset + amplitude * U(-1, 1) from mt19937_64(seed).
/// expression: evaluated at each node.
std::vector<double> initial_condition(const Scenario& scenario, const DomainGrid& grid);

}  // namespace nonlocal
