#include "nonlocal/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nonlocal/error.hpp"
#include "nonlocal/expression.hpp"
#include "nonlocal/io_format.hpp"

namespace nonlocal {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"dim", "bounds", "resolution", "beta", "h"}},
      {"kernel", {"family", "width", "radius", "path"}},
      {"f", {"family", "rho", "tau", "s", "blend", "a", "b"}},
      {"g", {"family", "rho", "tau", "s", "blend", "a", "b"}},
      {"run", {"t_end", "dt", "scheme", "initial", "value", "seed", "amplitude", "offset",
               "expression"}},
      {"analysis", {"suites", "p", "sigma"}},
      {"output", {"directory", "formats", "stride"}},
  };
  return keys;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

template <typename Int>
Int parse_integer(std::string_view text, const std::string& what) {
  text = trim(text);
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::parse, what + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

double number(const std::string& text, const std::string& what) {
  try {
    return parse_double(text, what);
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, e.what());
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

InitialKind initial_from_string(const std::string& name) {
  if (name == "constant") return InitialKind::constant;
  if (name == "random") return InitialKind::random;
  if (name == "expression") return InitialKind::expression;
  throw Error(ErrorKind::validation, "unknown initial condition '" + name + "'");
}

void read_nonlinearity(const pt::ptree& section, NonlinearitySpec& spec) {
  spec.params.clear();
  for (const auto& [key, node] : section) {
    const std::string value = node.get_value<std::string>();
    if (key == "family") {
      spec.family = std::string(trim(value));
    } else {
      spec.params[key] = number(value, key);
    }
  }
}

}  // namespace

const char* to_string(InitialKind kind) noexcept {
  switch (kind) {
    case InitialKind::constant: return "constant";
    case InitialKind::random: return "random";
    case InitialKind::expression: return "expression";
  }
  return "?";
}

bool Scenario::wants(const std::string& suite) const {
  return std::find(analysis.suites.begin(), analysis.suites.end(), suite) !=
         analysis.suites.end();
}

bool Scenario::wants_format(const std::string& format) const {
  return std::find(output.formats.begin(), output.formats.end(), format) !=
         output.formats.end();
}

Scenario parse_scenario_text(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  // The INI reader drops empty sections, so headers are collected separately.
  std::set<std::string> headers;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const std::string_view t = trim(line);
      if (t.size() >= 2 && t.front() == '[' && t.back() == ']') {
        const std::string name(trim(t.substr(1, t.size() - 2)));
        if (!known_keys().contains(name)) {
          throw Error(ErrorKind::parse, "unknown section [" + name + "]");
        }
        headers.insert(name);
      }
    }
  }

  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (body.empty()) {
        throw Error(ErrorKind::parse, "key '" + section + "' outside any section");
      }
      throw Error(ErrorKind::parse, "unknown section [" + section + "]");
    }
    for (const auto& entry : body) {
      if (!it->second.contains(entry.first)) {
        throw Error(ErrorKind::parse, "unknown key '" + section + "." + entry.first + "'");
      }
    }
  }
  if (!headers.contains("model")) {
    throw Error(ErrorKind::validation, "missing [model] section");
  }

  Scenario s;
  auto get = [&](const char* section, const char* key) -> std::optional<std::string> {
    const auto sec = tree.find(section);
    if (sec == tree.not_found()) return std::nullopt;
    const auto node = sec->second.find(key);
    if (node == sec->second.not_found()) return std::nullopt;
    return std::string(trim(node->second.get_value<std::string>()));
  };
  auto real = [&](const char* section, const char* key, double& out) {
    if (auto v = get(section, key)) out = number(*v, std::string(section) + "." + key);
  };

  if (auto v = get("model", "dim")) s.model.dim = parse_integer<int>(*v, "model.dim");
  if (auto v = get("model", "bounds")) {
    const auto parts = split_list(*v);
    if (parts.size() % 2 != 0 || parts.empty()) {
      throw Error(ErrorKind::parse, "model.bounds: expected 'lo hi' pairs");
    }
    s.model.bounds.clear();
    for (std::size_t i = 0; i < parts.size(); i += 2) {
      s.model.bounds.push_back(
          {number(parts[i], "model.bounds"), number(parts[i + 1], "model.bounds")});
    }
  } else if (s.model.dim == 2) {
    s.model.bounds = {{0.0, 1.0}, {0.0, 1.0}};
  }
  if (auto v = get("model", "resolution")) {
    s.model.resolution.clear();
    for (const auto& part : split_list(*v)) {
      s.model.resolution.push_back(parse_integer<std::size_t>(part, "model.resolution"));
    }
  }
  real("model", "beta", s.model.beta);
  real("model", "h", s.model.h);

  if (auto v = get("kernel", "family")) s.kernel.family = kernel_family_from_string(*v);
  real("kernel", "width", s.kernel.width);
  real("kernel", "radius", s.kernel.radius);
  if (auto v = get("kernel", "path")) s.kernel.path = *v;

  if (auto sec = tree.find("f"); sec != tree.not_found()) read_nonlinearity(sec->second, s.f);
  if (auto sec = tree.find("g"); sec != tree.not_found()) read_nonlinearity(sec->second, s.g);

  real("run", "t_end", s.run.t_end);
  real("run", "dt", s.run.dt);
  if (auto v = get("run", "scheme")) s.run.scheme = scheme_from_string(*v);
  if (auto v = get("run", "initial")) s.run.initial = initial_from_string(*v);
  real("run", "value", s.run.value);
  if (auto v = get("run", "seed")) s.run.seed = parse_integer<std::uint64_t>(*v, "run.seed");
  real("run", "amplitude", s.run.amplitude);
  real("run", "offset", s.run.offset);
  if (auto v = get("run", "expression")) s.run.expression = *v;

  if (auto v = get("analysis", "suites")) s.analysis.suites = split_list(*v);
  real("analysis", "p", s.analysis.p);
  real("analysis", "sigma", s.analysis.sigma);

  if (auto v = get("output", "directory")) s.output.directory = *v;
  if (auto v = get("output", "formats")) s.output.formats = split_list(*v);
  if (auto v = get("output", "stride")) {
    s.output.stride = parse_integer<std::size_t>(*v, "output.stride");
  }

  validate_scenario(s);
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open scenario " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_text(text.str());
}

void validate_scenario(const Scenario& s) {
  auto invalid = [](const std::string& msg) { throw Error(ErrorKind::validation, msg); };
  const auto& m = s.model;
  if (m.dim != 1 && m.dim != 2) invalid("model.dim must be 1 or 2");
  if (static_cast<int>(m.bounds.size()) != m.dim) invalid("model.bounds needs one pair per dimension");
  if (m.resolution.size() != 1 && static_cast<int>(m.resolution.size()) != m.dim) {
    invalid("model.resolution needs one value or one per dimension");
  }
  for (const auto& b : m.bounds) {
    if (!(b.hi > b.lo)) invalid("model.bounds must have lo < hi");
  }
  for (std::size_t r : m.resolution) {
    if (r < 2) invalid("model.resolution must be at least 2");
  }
  if (!(m.beta >= 0.0) || !std::isfinite(m.beta)) invalid("model.beta must be nonnegative");
  if (!(m.h >= 0.0) || !std::isfinite(m.h)) invalid("model.h must be nonnegative");

  if (s.kernel.family == KernelFamily::gaussian && !(s.kernel.width > 0.0)) {
    invalid("kernel.width must be positive");
  }
  if (s.kernel.family == KernelFamily::tophat && !(s.kernel.radius > 0.0)) {
    invalid("kernel.radius must be positive");
  }
  if (s.kernel.family == KernelFamily::custom && s.kernel.path.empty()) {
    invalid("custom kernel needs kernel.path");
  }

  const Nonlinearity f = s.f.build();
  const Nonlinearity g = s.g.build();

  if (!(s.run.t_end > 0.0) || !std::isfinite(s.run.t_end)) invalid("run.t_end must be positive");
  if (!(s.run.dt > 0.0) || !std::isfinite(s.run.dt)) invalid("run.dt must be positive");
  if (s.run.initial == InitialKind::random && !s.run.seed) {
    invalid("random initial condition needs run.seed");
  }
  if (s.run.initial == InitialKind::expression) {
    if (s.run.expression.empty()) invalid("expression initial condition needs run.expression");
    Expression::parse(s.run.expression);
  }

  std::set<std::string> seen;
  for (const auto& suite : s.analysis.suites) {
    if (std::find(std::begin(kSuiteNames), std::end(kSuiteNames), suite) == std::end(kSuiteNames)) {
      invalid("unknown suite '" + suite + "'");
    }
    if (!seen.insert(suite).second) invalid("suite '" + suite + "' listed twice");
  }
  if (!(s.analysis.p >= 1.0)) invalid("analysis.p must be >= 1");
  if (!(s.analysis.sigma > 0.0) || !std::isfinite(s.analysis.sigma)) {
    invalid("analysis.sigma must be positive");
  }
  if (s.wants("lyapunov")) {
    if (!g.range_bound()) invalid("lyapunov suite: bounded-range hypothesis |g| < rho violated");
    if (!g.invertible()) invalid("lyapunov suite: g must be strictly increasing");
    if (!f.monotone()) invalid("lyapunov suite: f must have positive derivative");
    if (!(m.beta > 0.0)) invalid("lyapunov suite: beta must be positive");
  }

  for (const auto& fmt : s.output.formats) {
    if (fmt != "csv" && fmt != "json") invalid("unknown output format '" + fmt + "'");
  }
  if (s.output.stride < 1) invalid("output.stride must be at least 1");
  if (s.output.directory.empty()) invalid("output.directory must not be empty");
}

std::string emit_scenario(const Scenario& s) {
  std::ostringstream out;
  const auto d = [](double v) { return format_double(v); };
  out << "[model]\n";
  out << "dim = " << s.model.dim << "\n";
  out << "bounds =";
  for (const auto& b : s.model.bounds) out << ' ' << d(b.lo) << ' ' << d(b.hi);
  out << "\nresolution =";
  for (std::size_t r : s.model.resolution) out << ' ' << r;
  out << "\nbeta = " << d(s.model.beta) << "\n";
  out << "h = " << d(s.model.h) << "\n\n";

  out << "[kernel]\n";
  out << "family = " << to_string(s.kernel.family) << "\n";
  out << "width = " << d(s.kernel.width) << "\n";
  out << "radius = " << d(s.kernel.radius) << "\n";
  if (!s.kernel.path.empty()) out << "path = " << s.kernel.path << "\n";

  for (const auto* spec : {&s.f, &s.g}) {
    out << "\n[" << (spec == &s.f ? "f" : "g") << "]\n";
    out << "family = " << spec->family << "\n";
    for (const auto& [key, value] : spec->params) out << key << " = " << d(value) << "\n";
  }

  out << "\n[run]\n";
  out << "t_end = " << d(s.run.t_end) << "\n";
  out << "dt = " << d(s.run.dt) << "\n";
  out << "scheme = " << to_string(s.run.scheme) << "\n";
  out << "initial = " << to_string(s.run.initial) << "\n";
  out << "value = " << d(s.run.value) << "\n";
  if (s.run.seed) out << "seed = " << *s.run.seed << "\n";
  out << "amplitude = " << d(s.run.amplitude) << "\n";
  out << "offset = " << d(s.run.offset) << "\n";
  if (!s.run.expression.empty()) out << "expression = " << s.run.expression << "\n";

  out << "\n[analysis]\n";
  if (!s.analysis.suites.empty()) out << "suites = " << join(s.analysis.suites) << "\n";
  out << "p = " << d(s.analysis.p) << "\n";
  out << "sigma = " << d(s.analysis.sigma) << "\n";

  out << "\n[output]\n";
  out << "directory = " << s.output.directory << "\n";
  out << "formats = " << join(s.output.formats) << "\n";
  out << "stride = " << s.output.stride << "\n";
  return out.str();
}

Model build_model(const Scenario& s, const std::filesystem::path& base_dir) {
  std::vector<std::size_t> resolution = s.model.resolution;
  if (resolution.size() == 1 && s.model.dim == 2) resolution.push_back(resolution.front());
  const DomainGrid grid = build_grid(s.model.dim, s.model.bounds, resolution);

  KernelSpec spec;
  switch (s.kernel.family) {
    case KernelFamily::gaussian: spec = KernelSpec::gaussian(s.kernel.width); break;
    case KernelFamily::tophat: spec = KernelSpec::tophat(s.kernel.radius); break;
    case KernelFamily::uniform: spec = KernelSpec::uniform(); break;
    case KernelFamily::custom: {
      std::filesystem::path path = s.kernel.path;
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      spec = KernelSpec::custom(load_kernel_csv(path));
      break;
    }
  }
  return Model::make(build_kernel(spec, grid), s.f.build(), s.g.build(), s.model.beta,
                     s.model.h);
}

std::vector<double> initial_condition(const Scenario& s, const DomainGrid& grid) {
  std::vector<double> u(grid.size(), s.run.value);
  switch (s.run.initial) {
    case InitialKind::constant: break;
    case InitialKind::random: {
      if (!s.run.seed) throw Error(ErrorKind::validation, "random initial condition needs a seed");
      std::mt19937_64 rng(*s.run.seed);
      for (double& x : u) {
        // 53 random bits mapped to [0, 1), then to [-1, 1); fixed across platforms.
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        x = s.run.offset + s.run.amplitude * (2.0 * unit - 1.0);
      }
      break;
    }
    case InitialKind::expression: {
      const Expression e = Expression::parse(s.run.expression);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const Point p = grid.node(i);
        u[i] = e(p[0], p[1]);
      }
      break;
    }
  }
  return u;
}

}  // namespace nonlocal
