#include "nonlocal/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "nonlocal/bounds.hpp"
#include "nonlocal/comparison.hpp"
#include "nonlocal/equilibrium.hpp"
#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"
#include "nonlocal/lyapunov.hpp"

namespace nonlocal {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr double kComparisonShift = 0.1;
constexpr double kGOperatorHorizon = 0.5;
constexpr double kGOperatorStep = 1e-3;
constexpr double kGOperatorAgreement = 1e-3;
constexpr std::size_t kGOperatorMaxNodes = 1024;
constexpr std::size_t kBoundKRandomFields = 20;
constexpr double kEquilibriumTolerance = 1e-10;
constexpr double kNewtonPolishTolerance = 1e-12;
constexpr double kEquilibriumDissipation = 1e-8;
constexpr std::size_t kFixedPointIterations = 100000;

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

std::string node_label(const DomainGrid& grid, std::size_t i) {
  const Point& p = grid.node(i);
  if (grid.dim() == 1) return format_double(p[0]);
  return format_double(p[0]) + ";" + format_double(p[1]);
}

std::string trajectory_csv(const DomainGrid& grid, const Trajectory& traj) {
  std::string out = "t";
  for (std::size_t i = 0; i < grid.size(); ++i) out += "," + node_label(grid, i);
  out += '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += format_double(traj.times[k]);
    for (double v : traj.states[k]) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string norms_csv(const Trajectory& traj) {
  std::string out = "t,L1,L2,Linf";
  for (const auto& name : traj.extra_names) out += "," + name;
  out += '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += format_double(traj.times[k]) + "," + format_double(traj.l1[k]) + "," +
           format_double(traj.l2[k]) + "," + format_double(traj.linf[k]);
    if (!traj.extra_names.empty()) {
      for (double v : traj.extra[k]) out += "," + format_double(v);
    }
    out += '\n';
  }
  return out;
}

json base_manifest(const RunContext& ctx, const char* command) {
  json m;
  m["toolkit"] = "nonlocal-field";
  m["version"] = toolkit_version();
  m["command"] = command;
  m["scenario"] = scenario_to_json(ctx.scenario);
  m["timing_file"] = "timing.json";
  return m;
}

void write_manifest(const RunContext& ctx, json& manifest, json outputs,
                    std::chrono::steady_clock::time_point start) {
  outputs.push_back({{"file", "manifest.json"}, {"kind", "manifest"}});
  manifest["outputs"] = std::move(outputs);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // Wall-clock lives apart from the manifest so that reruns compare byte for byte.
  write_file(ctx.output_dir / "timing.json",
             json{{"wall_clock_seconds", seconds}}.dump(2) + "\n");
  write_file(ctx.output_dir / "manifest.json", manifest.dump(2) + "\n");
}

Trajectory simulate(const Model& model, const Scenario& s, const std::vector<double>& u0,
                    const Recorder& recorder = {}) {
  return integrate(model, u0, s.run.t_end, s.run.dt, s.run.scheme, recorder);
}

SuiteVerdict skipped(const std::string& name, const std::string& reason) {
  SuiteVerdict v;
  v.name = name;
  v.status = SuiteStatus::skipped;
  v.reason = reason;
  return v;
}

SuiteVerdict suite_boundK(const Scenario& s, const Model& model, const std::vector<double>& u0) {
  SuiteVerdict v;
  v.name = "boundK";
  std::vector<std::vector<double>> fields{u0};
  std::mt19937_64 rng(s.run.seed.value_or(0));
  for (std::size_t k = 0; k < kBoundKRandomFields; ++k) {
    std::vector<double> u(model.size());
    for (double& x : u) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    fields.push_back(std::move(u));
  }
  std::vector<double> exponents{1.0, 2.0, kInfinity};
  if (std::find(exponents.begin(), exponents.end(), s.analysis.p) == exponents.end()) {
    exponents.push_back(s.analysis.p);
  }
  double min_slack = kInfinity;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t unit_violations = 0;
  for (double p : exponents) {
    for (const auto& u : fields) {
      const BoundKReport r = verify_boundK(*model.kernel, u, p);
      ++checks;
      min_slack = std::min(min_slack, r.min_slack);
      if (!r.pass) ++failures;
      if (r.lp_unit.slack() < -kBoundKTolerance) ++unit_violations;
    }
  }
  v.status = failures == 0 ? SuiteStatus::pass : SuiteStatus::fail;
  if (failures > 0) v.reason = std::to_string(failures) + " operator estimates violated";
  json ps = json::array();
  for (double p : exponents) ps.push_back(number(p));
  v.details = {{"exponents", ps},
               {"fields", fields.size()},
               {"checks", checks},
               {"failures", failures},
               {"min_slack", number(min_slack)},
               {"tolerance", kBoundKTolerance},
               {"unit_bound_violations", unit_violations}};
  return v;
}

SuiteVerdict suite_absorbing(const Scenario& s, const Model& model, const Trajectory& traj) {
  BoundsReport report;
  const GrowthConstants gc = GrowthConstants::from_model(model);
  try {
    report = absorbing_radius(model, gc, s.analysis.p, s.analysis.sigma);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::hypothesis_violation || e.kind() == ErrorKind::invalid_exponent) {
      return skipped("absorbing", e.what());
    }
    throw;
  }
  report.rho = linfty_rho(model, gc, s.analysis.p, report.R);
  const AbsorbingVerdict a = check_absorbing(model.grid(), traj, report);
  SuiteVerdict v;
  v.name = "absorbing";
  v.status = a.pass ? SuiteStatus::pass : SuiteStatus::fail;
  if (!a.pass) v.reason = a.entered ? "decay or containment violated" : "ball never entered";
  v.details = {{"k1", gc.k1},
               {"k2", gc.k2},
               {"c1", gc.c1},
               {"c2", gc.c2},
               {"epsilon", report.epsilon},
               {"R", report.R},
               {"decay_rate", report.decay_rate},
               {"rho", number(report.rho)},
               {"entered", a.entered},
               {"entry_time", number(a.entry_time)},
               {"outside_steps", a.outside_steps},
               {"max_outside_slope", number(a.max_outside_slope)},
               {"slope_threshold", a.slope_threshold},
               {"max_ratio_after_entry", a.max_ratio_after_entry},
               {"final_linf", traj.linf.back()},
               {"final_within_rho", traj.linf.back() <= report.rho}};
  return v;
}

SuiteVerdict suite_comparison(const Scenario& s, const Model& model,
                              const std::vector<double>& u0) {
  if (!model.f.nondecreasing() || !model.g.nondecreasing()) {
    return skipped("comparison", "f and g must be nondecreasing");
  }
  const auto steps = static_cast<std::size_t>(std::floor(s.run.t_end / s.run.dt + 1e-9));
  if (steps < 1) return skipped("comparison", "t_end shorter than one step");
  const double T = static_cast<double>(steps) * s.run.dt;

  std::vector<double> lo(u0), hi(u0);
  for (double& x : lo) x -= kComparisonShift;
  for (double& x : hi) x += kComparisonShift;
  const auto field = [&](const std::vector<double>& start) {
    return SpaceTimeField::from_trajectory(integrate(model, start, T, s.run.dt, Scheme::etd1));
  };
  SuiteVerdict v;
  v.name = "comparison";
  const SpaceTimeField sol = field(u0);
  const SpaceTimeField sub = field(lo);
  const SpaceTimeField super = field(hi);
  bool pass = true;
  try {
    const OrderingVerdict o = verify_ordering(model, sub, sol, super);
    pass = o.pass;
    v.details["ordering"] = {{"pass", o.pass},
                             {"max_sub_excess", o.max_sub_excess},
                             {"max_super_deficit", o.max_super_deficit},
                             {"tolerance", kOrderingTolerance},
                             {"shift", kComparisonShift},
                             {"horizon", T}};
    if (!o.pass) v.reason = "ordering violated";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::invalid_certificate) throw;
    pass = false;
    v.reason = e.what();
  }

  json g_part;
  if (model.size() > kGOperatorMaxNodes) {
    g_part = {{"status", "skipped"}, {"reason", "grid too large for the space-time iteration"}};
  } else {
    const double Tg = std::min(kGOperatorHorizon, T);
    const auto n_g = static_cast<std::size_t>(std::ceil(Tg / std::min(s.run.dt, kGOperatorStep) - 1e-9));
    const double dtg = Tg / static_cast<double>(n_g);
    try {
      const GFixedPointResult g = g_fixed_point(model, u0, Tg, dtg, 1e-12);
      const Trajectory ref = integrate(model, u0, Tg, dtg, Scheme::etd1);
      const SpaceTimeField etd = SpaceTimeField::from_trajectory(ref);
      const double diff = sup_distance(g.field, etd);
      const bool contract_ok =
          g.horizons > 1 || g.contraction_bound >= 1.0 || g.max_ratio <= g.contraction_bound;
      const bool ok = diff <= kGOperatorAgreement && contract_ok;
      g_part = {{"status", ok ? "pass" : "fail"},
                {"horizon", Tg},
                {"dt", dtg},
                {"sub_horizons", g.horizons},
                {"iterations", g.iterations},
                {"contraction_bound", g.contraction_bound},
                {"max_ratio", g.max_ratio},
                {"distance_to_etd1", diff},
                {"agreement_tolerance", kGOperatorAgreement}};
      if (!ok) {
        pass = false;
        if (v.reason.empty()) v.reason = "G-operator check failed";
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::hypothesis_violation) {
        pass = false;
        if (v.reason.empty()) v.reason = e.what();
      }
      g_part = {{"status", e.kind() == ErrorKind::hypothesis_violation ? "skipped" : "fail"},
                {"reason", e.what()}};
    }
  }
  v.details["g_operator"] = g_part;
  v.status = pass ? SuiteStatus::pass : SuiteStatus::fail;
  return v;
}

SuiteVerdict suite_lyapunov(const Model& model, const Trajectory& traj) {
  std::optional<PotentialTable> table;
  try {
    table = PotentialTable::build(PotentialInputs::from_model(model));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::no_interior_minimum ||
        e.kind() == ErrorKind::hypothesis_violation) {
      return skipped("lyapunov", e.what());
    }
    throw;
  }
  DescentReport d;
  try {
    d = descent_check(model, *table, traj);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::domain) return skipped("lyapunov", e.what());
    throw;
  }
  SuiteVerdict v;
  v.name = "lyapunov";
  const bool integrand_ok = d.min_integrand >= -1e-12;
  v.status = d.monotone && integrand_ok ? SuiteStatus::pass : SuiteStatus::fail;
  if (!d.monotone) v.reason = "F increased along the trajectory";
  else if (!integrand_ok) v.reason = "negative dissipation integrand";
  v.details = {{"mbar", table->mbar()},
               {"theta_mbar", table->theta_mbar()},
               {"F_initial", d.F.front()},
               {"F_final", d.F.back()},
               {"max_increase", d.max_increase},
               {"slack", kDescentSlack},
               {"identity_residual", d.identity_residual},
               {"min_integrand", d.min_integrand}};
  return v;
}

json equilibrium_json(const EquilibriumResult& r) {
  return {{"residual", number(r.residual)},
          {"dissipation", number(r.dissipation)},
          {"lyapunov", number(r.lyapunov)},
          {"iterations", r.iterations}};
}

struct EquilibriumRun {
  EquilibriumResult result;
  json details;
  bool converged = false;
  std::string reason;
};

EquilibriumRun find_equilibrium(const Model& model, const std::vector<double>& start) {
  EquilibriumRun run;
  std::optional<PotentialTable> table;
  try {
    if (model.g.range_bound()) table = PotentialTable::build(PotentialInputs::from_model(model));
  } catch (const Error&) {
  }
  const PotentialTable* tp = table ? &*table : nullptr;
  try {
    run.result = solve_equilibrium_fixed_point(model, start, 1.0, kEquilibriumTolerance,
                                               kFixedPointIterations, tp);
  } catch (const NonConvergenceError& e) {
    run.reason = e.what();
    run.details["fixed_point"] = {{"converged", false}, {"residual", number(e.residual())}};
    return run;
  }
  run.details["fixed_point"] = equilibrium_json(run.result);
  if (run.result.residual > kNewtonPolishTolerance) {
    try {
      EquilibriumResult polished =
          refine_newton(model, run.result.state.values, kNewtonPolishTolerance, tp);
      run.details["newton"] = equilibrium_json(polished);
      if (polished.residual < run.result.residual) run.result = std::move(polished);
    } catch (const Error& e) {
      run.details["newton"] = {{"status", "fell back to fixed point"}, {"reason", e.what()}};
    }
  }
  run.converged = run.result.residual <= kEquilibriumTolerance;
  if (!run.converged) run.reason = "residual above tolerance";
  return run;
}

SuiteVerdict suite_equilibria(const Model& model, const Trajectory& traj) {
  SuiteVerdict v;
  v.name = "equilibria";
  EquilibriumRun run = find_equilibrium(model, traj.states.back());
  v.details = run.details;
  bool pass = run.converged;
  if (pass && std::isfinite(run.result.dissipation) &&
      run.result.dissipation > kEquilibriumDissipation) {
    pass = false;
    run.reason = "dissipation at the equilibrium exceeds 1e-8";
  }
  if (run.converged) {
    v.details["residual"] = run.result.residual;
    v.details["dissipation"] = number(run.result.dissipation);
    v.details["sup_norm"] = lp_norm(model.grid(), run.result.state.values, kInfinity);
  }
  v.status = pass ? SuiteStatus::pass : SuiteStatus::fail;
  v.reason = pass ? "" : run.reason;
  return v;
}

json verdict_json(const SuiteVerdict& v) {
  json j{{"suite", v.name}, {"verdict", to_string(v.status)}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  j["details"] = v.details;
  return j;
}

}  // namespace

const char* to_string(SuiteStatus status) noexcept {
  switch (status) {
    case SuiteStatus::pass: return "pass";
    case SuiteStatus::fail: return "fail";
    case SuiteStatus::skipped: return "skipped";
  }
  return "?";
}

const char* toolkit_version() noexcept { return NONLOCAL_FIELD_VERSION; }

json scenario_to_json(const Scenario& s) {
  json bounds = json::array();
  for (const auto& b : s.model.bounds) bounds.push_back({b.lo, b.hi});
  auto nl = [](const NonlinearitySpec& spec) {
    json params = json::object();
    for (const auto& [k, v] : spec.params) params[k] = v;
    return json{{"family", spec.family}, {"params", params}};
  };
  json run{{"t_end", s.run.t_end},
           {"dt", s.run.dt},
           {"scheme", to_string(s.run.scheme)},
           {"initial", to_string(s.run.initial)},
           {"value", s.run.value},
           {"amplitude", s.run.amplitude},
           {"offset", s.run.offset}};
  if (s.run.seed) run["seed"] = *s.run.seed;
  if (!s.run.expression.empty()) run["expression"] = s.run.expression;
  json kernel{{"family", to_string(s.kernel.family)},
              {"width", s.kernel.width},
              {"radius", s.kernel.radius}};
  if (!s.kernel.path.empty()) kernel["path"] = s.kernel.path;
  return {{"model",
           {{"dim", s.model.dim},
            {"bounds", bounds},
            {"resolution", s.model.resolution},
            {"beta", s.model.beta},
            {"h", s.model.h}}},
          {"kernel", kernel},
          {"f", nl(s.f)},
          {"g", nl(s.g)},
          {"run", run},
          {"analysis",
           {{"suites", s.analysis.suites},
            {"p", number(s.analysis.p)},
            {"sigma", s.analysis.sigma}}},
          {"output", {{"formats", s.output.formats}, {"stride", s.output.stride}}}};
}

SuiteVerdict run_suite(const std::string& name, const Scenario& scenario, const Model& model,
                       const std::vector<double>& u0, const Trajectory* trajectory) {
  std::optional<Trajectory> own;
  auto traj = [&]() -> const Trajectory& {
    if (trajectory != nullptr) return *trajectory;
    if (!own) own = simulate(model, scenario, u0);
    return *own;
  };
  if (name == "boundK") return suite_boundK(scenario, model, u0);
  if (name == "absorbing") return suite_absorbing(scenario, model, traj());
  if (name == "comparison") return suite_comparison(scenario, model, u0);
  if (name == "lyapunov") return suite_lyapunov(model, traj());
  if (name == "equilibria") return suite_equilibria(model, traj());
  throw Error(ErrorKind::validation, "unknown suite '" + name + "'");
}

RunOutcome run_simulate(const RunContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario& s = ctx.scenario;
  const Model model = build_model(s, ctx.base_dir);
  const std::vector<double> u0 = initial_condition(s, model.grid());
  fs::create_directories(ctx.output_dir);

  RunOutcome outcome;
  json manifest = base_manifest(ctx, "simulate");
  Recorder recorder;
  recorder.state_stride = s.output.stride;
  std::optional<PotentialTable> table;
  if (s.wants("lyapunov")) {
    try {
      table = PotentialTable::build(PotentialInputs::from_model(model));
      recorder.extra_names = {"F", "I"};
      recorder.extra = [&](std::span<const double> u) {
        return std::vector<double>{lyapunov_F(model, *table, u), dissipation_I(model, u)};
      };
    } catch (const Error& e) {
      manifest["lyapunov"] = {{"status", "skipped"}, {"reason", e.what()}};
    }
  }

  json outputs = json::array();
  try {
    const Trajectory traj = simulate(model, s, u0, recorder);
    if (s.wants_format("csv")) {
      write_file(ctx.output_dir / "trajectory.csv", trajectory_csv(model.grid(), traj));
      write_file(ctx.output_dir / "norms.csv", norms_csv(traj));
      outputs.push_back({{"file", "trajectory.csv"}, {"kind", "trajectory"}});
      outputs.push_back({{"file", "norms.csv"}, {"kind", "norms"}});
    }
    manifest["status"] = "completed";
    manifest["records"] = traj.size();
    manifest["final"] = {{"t", traj.times.back()},
                         {"L1", traj.l1.back()},
                         {"L2", traj.l2.back()},
                         {"Linf", traj.linf.back()}};
    if (table) manifest["lyapunov"] = {{"mbar", table->mbar()}, {"theta_mbar", table->theta_mbar()}};
  } catch (const DivergenceError& e) {
    manifest["status"] = "diverged";
    manifest["failure_time"] = e.time();
    manifest["message"] = e.what();
    outcome.exit_code = kExitDivergence;
  }
  write_manifest(ctx, manifest, outputs, start);
  outcome.manifest = std::move(manifest);
  return outcome;
}

RunOutcome run_verify(const RunContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario& s = ctx.scenario;
  const Model model = build_model(s, ctx.base_dir);
  const std::vector<double> u0 = initial_condition(s, model.grid());
  fs::create_directories(ctx.output_dir);

  RunOutcome outcome;
  json manifest = base_manifest(ctx, "verify");

  const bool needs_trajectory =
      s.wants("absorbing") || s.wants("lyapunov") || s.wants("equilibria");
  std::optional<Trajectory> traj;
  std::string divergence;
  if (needs_trajectory) {
    try {
      traj = simulate(model, s, u0);
    } catch (const DivergenceError& e) {
      divergence = e.what();
      manifest["failure_time"] = e.time();
      outcome.exit_code = kExitDivergence;
    }
  }

  std::vector<std::future<SuiteVerdict>> pending;
  for (const auto& name : s.analysis.suites) {
    const bool uses_traj = name != "boundK" && name != "comparison";
    if (uses_traj && !traj) {
      std::promise<SuiteVerdict> p;
      SuiteVerdict v;
      v.name = name;
      v.status = SuiteStatus::fail;
      v.reason = "trajectory diverged: " + divergence;
      p.set_value(std::move(v));
      pending.push_back(p.get_future());
      continue;
    }
    pending.push_back(std::async(std::launch::async, [&, name] {
      try {
        return run_suite(name, s, model, u0, traj ? &*traj : nullptr);
      } catch (const DivergenceError& e) {
        SuiteVerdict v;
        v.name = name;
        v.status = SuiteStatus::fail;
        v.reason = std::string("diverged: ") + e.what();
        return v;
      }
    }));
  }
  json suites = json::array();
  bool failed = false;
  for (auto& f : pending) {
    SuiteVerdict v = f.get();
    failed = failed || v.status == SuiteStatus::fail;
    suites.push_back(verdict_json(v));
    outcome.verdicts.push_back(std::move(v));
  }
  manifest["suites"] = std::move(suites);
  if (outcome.exit_code == kExitPass && failed) outcome.exit_code = kExitFailure;
  manifest["status"] = outcome.exit_code == kExitPass ? "pass" : "fail";
  write_manifest(ctx, manifest, json::array(), start);
  outcome.manifest = std::move(manifest);
  return outcome;
}

RunOutcome run_equilibria(const RunContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario& s = ctx.scenario;
  const Model model = build_model(s, ctx.base_dir);
  const std::vector<double> u0 = initial_condition(s, model.grid());
  fs::create_directories(ctx.output_dir);

  RunOutcome outcome;
  json manifest = base_manifest(ctx, "equilibria");
  const EquilibriumRun run = find_equilibrium(model, u0);
  json outputs = json::array();
  json eq = run.details;
  eq["converged"] = run.converged;
  if (!run.reason.empty()) eq["reason"] = run.reason;
  if (run.converged) {
    eq["result"] = equilibrium_json(run.result);
    if (s.wants_format("csv")) {
      const DomainGrid& grid = model.grid();
      std::string csv = grid.dim() == 1 ? "x,u\n" : "x,y,u\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point& p = grid.node(i);
        csv += format_double(p[0]) + ",";
        if (grid.dim() == 2) csv += format_double(p[1]) + ",";
        csv += format_double(run.result.state.values[i]) + "\n";
      }
      write_file(ctx.output_dir / "equilibrium.csv", csv);
      outputs.push_back({{"file", "equilibrium.csv"}, {"kind", "equilibrium"}});
    }
  }
  manifest["equilibrium"] = std::move(eq);
  manifest["status"] = run.converged ? "pass" : "fail";
  outcome.exit_code = run.converged ? kExitPass : kExitFailure;
  write_manifest(ctx, manifest, outputs, start);
  outcome.manifest = std::move(manifest);
  return outcome;
}

json kernel_info(const RunContext& ctx) {
  const Model model = build_model(ctx.scenario, ctx.base_dir);
  const Kernel& k = *model.kernel;
  const auto mass = k.row_mass();
  const auto tail = k.tail_mass();
  return {{"family", to_string(k.spec().family)},
          {"dim", model.grid().dim()},
          {"nodes", k.size()},
          {"measure", model.grid().measure()},
          {"norm_1", kernel_norm(k, 1.0)},
          {"norm_2", kernel_norm(k, 2.0)},
          {"norm_inf", kernel_norm(k, kInfinity)},
          {"row_mass_min", *std::min_element(mass.begin(), mass.end())},
          {"row_mass_max", *std::max_element(mass.begin(), mass.end())},
          {"tail_mass_max", *std::max_element(tail.begin(), tail.end())}};
}

}  // namespace nonlocal
