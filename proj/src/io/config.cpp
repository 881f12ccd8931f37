#include "ssns/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ssns/error.hpp"

namespace ssns {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"grid", {"n", "length"}},
      {"data", {"alpha", "delta", "window_radius", "window_width"}},
      {"solver",
       {"epsilon", "dt", "t_end", "snapshot_t0", "snapshot_ratio", "snapshot_times",
        "nonlinear", "cfl"}},
      {"output", {"directory", "seed"}},
      {"sweep", {"epsilon", "delta", "alpha", "lambda"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(const std::string& field, const std::string& value,
                            const char* expected) {
  throw ValidationError("config: " + field + " = '" + value + "' is not " + expected);
}

double to_double(const std::string& field, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
    bad_value(field, text, "a number");
  return v;
}

long long to_integer(const std::string& field, const std::string& text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
    bad_value(field, text, "an integer");
  return v;
}

bool to_bool(const std::string& field, const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "on") return true;
  if (s == "false" || s == "0" || s == "off") return false;
  bad_value(field, text, "a boolean");
}

std::vector<double> to_list(const std::string& field, const std::string& text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    bad_value(field, text, "a list [a, b, ...]");
  s = s.substr(1, s.size() - 2);
  std::vector<double> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(field, item));
  return out;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += number(v[i]);
  }
  return out + "]";
}

[[noreturn]] void constraint(const std::string& field, const std::string& what) {
  throw ValidationError("config: " + field + " " + what);
}

}  // namespace

Grid RunConfig::grid() const { return Grid(n, length); }

InitialDataSpec RunConfig::data() const {
  const Grid g = grid();
  InitialDataSpec spec = InitialDataSpec::defaults(g, alpha);
  if (delta) spec.delta = *delta;
  if (window_radius) spec.window.radius = *window_radius;
  if (window_width) spec.window.width = *window_width;
  return spec;
}

void RunConfig::validate() const {
  if (n < 8 || (n & (n - 1)) != 0) constraint("grid.n", "must be a power of two >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) constraint("grid.length", "must be > 0");
  if (!std::isfinite(alpha)) constraint("data.alpha", "must be finite");
  const Grid g = grid();
  const InitialDataSpec spec = data();
  if (!(spec.delta >= 0.0)) constraint("data.delta", "must be >= 0");
  if (!(spec.window.radius > spec.delta) || !(spec.window.radius < g.length() / 2.0))
    constraint("data.window_radius", "must satisfy delta < window_radius < length/2");
  if (!(spec.window.width > 0.0) || !(spec.window.width < spec.window.radius))
    constraint("data.window_width", "must lie in (0, window_radius)");
  const SolverConfig& s = solver;
  if (!(s.epsilon >= 0.0) || !(s.epsilon < g.length() / 4.0))
    constraint("solver.epsilon", "must lie in [0, length/4)");
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) constraint("solver.dt", "must be > 0");
  if (!(s.t_end > 0.0) || !std::isfinite(s.t_end)) constraint("solver.t_end", "must be > 0");
  if (!(s.cfl > 0.0)) constraint("solver.cfl", "must be > 0");
  if (!(s.snapshot_ratio > 1.0)) constraint("solver.snapshot_ratio", "must be > 1");
  if (s.snapshot_t0 < 0.0 || s.snapshot_t0 > s.t_end)
    constraint("solver.snapshot_t0", "must lie in [0, t_end]");
  double prev = 0.0;
  for (double t : s.snapshot_times) {
    if (!(t > prev) || t > s.t_end * (1.0 + 1e-12))
      constraint("solver.snapshot_times", "must be strictly increasing in (0, t_end]");
    prev = t;
  }
  for (double e : sweep_epsilon)
    if (!(e >= 0.0) || !(e < g.length() / 4.0)) constraint("sweep.epsilon", "entries must lie in [0, length/4)");
  for (double d : sweep_delta)
    if (!(d >= 0.0) || !(d < spec.window.radius)) constraint("sweep.delta", "entries must lie in [0, window_radius)");
  for (double a : sweep_alpha)
    if (!std::isfinite(a)) constraint("sweep.alpha", "entries must be finite");
  for (double l : sweep_lambda)
    if (!(l > 0.0) || l > 1.0) constraint("sweep.lambda", "entries must lie in (0, 1]");
  if (directory.empty()) constraint("output.directory", "must not be empty");
}

std::string RunConfig::normalized() const {
  const InitialDataSpec spec = data();
  std::ostringstream o;
  o << "[grid]\n"
    << "n = " << n << "\n"
    << "length = " << number(length) << "\n"
    << "\n[data]\n"
    << "alpha = " << number(alpha) << "\n"
    << "delta = " << number(spec.delta) << "\n"
    << "window_radius = " << number(spec.window.radius) << "\n"
    << "window_width = " << number(spec.window.width) << "\n"
    << "\n[solver]\n"
    << "epsilon = " << number(solver.epsilon) << "\n"
    << "dt = " << number(solver.dt) << "\n"
    << "t_end = " << number(solver.t_end) << "\n"
    << "snapshot_t0 = " << number(solver.snapshot_t0) << "\n"
    << "snapshot_ratio = " << number(solver.snapshot_ratio) << "\n"
    << "snapshot_times = " << list(solver.snapshot_times) << "\n"
    << "nonlinear = " << (solver.nonlinear ? "true" : "false") << "\n"
    << "cfl = " << number(solver.cfl) << "\n"
    << "\n[output]\n"
    << "directory = " << directory << "\n"
    << "seed = " << seed << "\n"
    << "\n[sweep]\n"
    << "epsilon = " << list(sweep_epsilon) << "\n"
    << "delta = " << list(sweep_delta) << "\n"
    << "alpha = " << list(sweep_alpha) << "\n"
    << "lambda = " << list(sweep_lambda) << "\n";
  return o.str();
}

std::string RunConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : normalized()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<RunPlan> expand_sweeps(const RunConfig& cfg) {
  auto axis = [](const std::vector<double>& v) {
    return v.empty() ? std::vector<std::optional<double>>{std::nullopt}
                     : std::vector<std::optional<double>>(v.begin(), v.end());
  };
  std::vector<RunPlan> plans;
  for (auto eps : axis(cfg.sweep_epsilon))
    for (auto delta : axis(cfg.sweep_delta))
      for (auto alpha : axis(cfg.sweep_alpha)) {
        RunPlan plan;
        plan.config = cfg;
        plan.config.sweep_epsilon.clear();
        plan.config.sweep_delta.clear();
        plan.config.sweep_alpha.clear();
        std::string label;
        auto tag = [&label](const char* name, double v) {
          char buf[48];
          std::snprintf(buf, sizeof buf, "%s%s%g", label.empty() ? "" : "_", name, v);
          label += buf;
        };
        if (eps) {
          plan.config.solver.epsilon = *eps;
          tag("eps", *eps);
        }
        if (delta) {
          plan.config.delta = *delta;
          tag("delta", *delta);
        }
        if (alpha) {
          plan.config.alpha = *alpha;
          tag("alpha", *alpha);
        }
        plan.label = label;
        plan.config.validate();
        plans.push_back(std::move(plan));
      }
  return plans;
}

RunConfig parse_config(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream msg;
    msg << "config: line " << e.line() << ": " << e.message();
    throw ValidationError(msg.str());
  }
  RunConfig cfg;
  const auto& keys = known_keys();
  for (const auto& [section, body] : tree) {
    const auto sec = keys.find(section);
    const bool declared = text.find("[" + section + "]") != std::string_view::npos;
    if (!body.data().empty() || (body.empty() && !declared))
      throw ValidationError("config: key '" + section + "' outside any section");
    if (sec == keys.end()) throw ValidationError("config: unknown section [" + section + "]");
    for (const auto& [key, node] : body) {
      if (!sec->second.count(key))
        throw ValidationError("config: unknown key '" + key + "' in [" + section + "]");
      const std::string field = section + "." + key;
      const std::string v = node.get_value<std::string>();
      if (section == "grid") {
        if (key == "n") cfg.n = static_cast<int>(to_integer(field, v));
        else cfg.length = to_double(field, v);
      } else if (section == "data") {
        if (key == "alpha") cfg.alpha = to_double(field, v);
        else if (key == "delta") cfg.delta = to_double(field, v);
        else if (key == "window_radius") cfg.window_radius = to_double(field, v);
        else cfg.window_width = to_double(field, v);
      } else if (section == "solver") {
        SolverConfig& s = cfg.solver;
        if (key == "epsilon") s.epsilon = to_double(field, v);
        else if (key == "dt") s.dt = to_double(field, v);
        else if (key == "t_end") s.t_end = to_double(field, v);
        else if (key == "snapshot_t0") s.snapshot_t0 = to_double(field, v);
        else if (key == "snapshot_ratio") s.snapshot_ratio = to_double(field, v);
        else if (key == "snapshot_times") s.snapshot_times = to_list(field, v);
        else if (key == "nonlinear") s.nonlinear = to_bool(field, v);
        else s.cfl = to_double(field, v);
      } else if (section == "output") {
        if (key == "directory") cfg.directory = trim(v);
        else {
          const long long seed = to_integer(field, v);
          if (seed < 0) bad_value(field, v, "a nonnegative integer");
          cfg.seed = static_cast<std::uint64_t>(seed);
        }
      } else {
        std::vector<double> l = to_list(field, v);
        if (key == "epsilon") cfg.sweep_epsilon = std::move(l);
        else if (key == "delta") cfg.sweep_delta = std::move(l);
        else if (key == "alpha") cfg.sweep_alpha = std::move(l);
        else cfg.sweep_lambda = std::move(l);
      }
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ssns
