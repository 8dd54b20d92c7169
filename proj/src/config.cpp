#include "bourgen/config.hpp"

#include <cmath>
#include <set>

#include "bourgen/errors.hpp"
#include "bourgen/expression.hpp"

namespace bourgen {

namespace {

using nlohmann::json;

std::pair<double, double> read_range(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(what) + " must be [min, max]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

MemberSpec read_member(const json& j, int epsilon, double theta0) {
  if (j.is_number()) return {j.get<double>(), epsilon, theta0};
  return {j.at("m").get<double>(), j.value("epsilon", epsilon), j.value("theta0", theta0)};
}

}  // namespace

RunConfig RunConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
  RunConfig c;
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    c.name = j.value("name", c.name);
    c.space = SpaceSpec::from_json(j.at("space"));
    if (j.contains("generatrix")) {
      const json& g = j.at("generatrix");
      if (g.is_string()) {
        c.expression = g.get<std::string>();
      } else if (g.contains("expression")) {
        c.expression = g.at("expression").get<std::string>();
      } else if (g.contains("csv")) {
        c.generatrix_csv = resolve(base_dir, g.at("csv").get<std::string>());
      } else {
        throw ConfigError("generatrix needs 'expression' or 'csv'");
      }
    }
    if (j.contains("curve")) c.curve_csv = resolve(base_dir, j.at("curve").get<std::string>());
    if (j.contains("s_range")) std::tie(c.s_min, c.s_max) = read_range(j.at("s_range"), "s_range");

    const int epsilon = j.value("epsilon", 1);
    const double theta0 = j.value("theta0", 0.0);
    if (j.contains("members")) {
      for (const auto& m : j.at("members")) c.members.push_back(read_member(m, epsilon, theta0));
    } else if (j.contains("m")) {
      const json& m = j.at("m");
      if (m.is_array()) {
        for (const auto& x : m) c.members.push_back(read_member(x, epsilon, theta0));
      } else {
        c.members.push_back(read_member(m, epsilon, theta0));
      }
    }

    c.step = j.value("step", c.step);
    if (j.contains("integrator")) c.integrator = parse_integrator(j.at("integrator").get<std::string>());
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      c.grid.s_count = g.value("s_count", c.grid.s_count);
      c.grid.t_count = g.value("t_count", c.grid.t_count);
      if (g.contains("t_range")) std::tie(c.grid.t_min, c.grid.t_max) = read_range(g.at("t_range"), "grid.t_range");
      c.grid.fd_step = g.value("fd_step", c.grid.fd_step);
    }
    if (j.contains("mesh")) {
      const json& g = j.at("mesh");
      c.mesh.s_count = g.value("s_count", c.mesh.s_count);
      c.mesh.t_count = g.value("t_count", c.mesh.t_count);
      if (g.contains("t_range")) std::tie(c.mesh.t_min, c.mesh.t_max) = read_range(g.at("t_range"), "mesh.t_range");
    }
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      c.tolerances.isometry = t.value("isometry", c.tolerances.isometry);
      c.tolerances.cross_check = t.value("cross_check", c.tolerances.cross_check);
      c.tolerances.orthogonality = t.value("orthogonality", c.tolerances.orthogonality);
    }
    c.seed = j.value("seed", c.seed);
    c.random_checks = j.value("random_checks", c.random_checks);
    if (j.contains("output")) c.output_dir = resolve(base_dir, j.at("output").get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  return from_json(read_json(path), path.parent_path());
}

json RunConfig::to_json() const {
  json members = json::array();
  for (const MemberSpec& m : this->members) members.push_back({{"m", m.m}, {"epsilon", m.epsilon}, {"theta0", m.theta0}});
  json generatrix = expression.empty() ? json{{"csv", generatrix_csv.string()}} : json{{"expression", expression}};
  json out = {{"name", name},
              {"space", space.to_json()},
              {"generatrix", generatrix},
              {"s_range", {s_min, s_max}},
              {"members", members},
              {"step", step},
              {"integrator", to_string(integrator)},
              {"grid",
               {{"s_count", grid.s_count},
                {"t_count", grid.t_count},
                {"t_range", {grid.t_min, grid.t_max}},
                {"fd_step", grid.fd_step}}},
              {"mesh", {{"s_count", mesh.s_count}, {"t_count", mesh.t_count}, {"t_range", {mesh.t_min, mesh.t_max}}}},
              {"tolerances",
               {{"isometry", tolerances.isometry},
                {"cross_check", tolerances.cross_check},
                {"orthogonality", tolerances.orthogonality}}},
              {"seed", seed},
              {"random_checks", random_checks}};
  if (!curve_csv.empty()) out["curve"] = curve_csv.string();
  return out;
}

void RunConfig::validate() const {
  space.validate();
  if (expression.empty() && generatrix_csv.empty()) throw ConfigError("config: generatrix is required");
  if (!expression.empty()) Expression::parse(expression);
  if (!(s_max > s_min)) throw ConfigError("s_range must be increasing");
  if (members.empty()) throw ConfigError("config: at least one m is required");
  std::set<double> seen;
  for (const MemberSpec& m : members) {
    if (!(m.m > 0.0) || !std::isfinite(m.m)) throw ConfigError("m must be positive");
    if (m.epsilon != 1 && m.epsilon != -1) throw ConfigError("epsilon must be +1 or -1");
    if (!seen.insert(m.m).second) throw ConfigError("m values must be distinct");
  }
  if (grid.s_count < 2 || grid.t_count < 2 || mesh.s_count < 2 || mesh.t_count < 2)
    throw ConfigError("grid and mesh counts must be at least 2");
  if (!(grid.fd_step > 0.0)) throw ConfigError("grid.fd_step must be positive");
  if (!(tolerances.isometry > 0.0) || !(tolerances.cross_check > 0.0) || !(tolerances.orthogonality > 0.0))
    throw ConfigError("tolerances must be positive");
  if (random_checks < 0) throw ConfigError("random_checks must be non-negative");
  params(members.front()).validate();
}

GeneratrixMetric RunConfig::generatrix() const {
  if (!expression.empty()) return GeneratrixMetric::from_expression(Expression::parse(expression), s_min, s_max);
  return read_generatrix_csv(generatrix_csv);
}

BourParams RunConfig::params(const MemberSpec& member) const {
  return {member.m, member.epsilon, s_min, s_max, step, integrator};
}

RunConfig demo_config(const std::string& name) {
  RunConfig c;
  c.name = name;
  c.output_dir = "bourgen_out/" + name;
  if (name == "catenoid") {
    c.space = {SpaceKind::euclidean_rotational, 0.0, 0.0, 0.0};
    c.expression = "sqrt(s^2+1)";
    c.s_min = -2.0;
    c.s_max = 2.0;
    c.step = 0.01;
    c.members = {{1.0, 1, 0.0}};
  } else if (name == "helicoid") {
    c.space = {SpaceKind::euclidean_helicoidal, 1.0, 0.0, 0.0};
    c.expression = "sqrt(s^2+1)";
    c.s_min = 0.5;
    c.s_max = 2.0;
    c.step = 0.005;
    c.members = {{1.0, 1, 0.0}};
  } else if (name == "bcv") {
    c.space = {SpaceKind::bcv_helicoidal, 1.0, 1.0, 1.0};
    c.expression = "sqrt(s^2+4)";
    c.s_min = 0.0;
    c.s_max = 1.0;
    c.step = 0.005;
    c.members = {{1.0, 1, -2.0}};
  } else {
    throw ConfigError("unknown demo '" + name + "' (expected catenoid, helicoid or bcv)");
  }
  return c;
}

}  // namespace bourgen
