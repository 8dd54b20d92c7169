#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bourgen/bour.hpp"
#include "bourgen/generatrix.hpp"
#include "bourgen/io.hpp"
#include "bourgen/spaces.hpp"

namespace bourgen {

struct MemberSpec {
  double m = 1.0;
  int epsilon = 1;
  double theta0 = 0.0;
};

struct GridSpec {
  int s_count = 21;
  int t_count = 21;
  double t_min = 0.0, t_max = 1.0;
  double fd_step = 1e-5;
};

struct Tolerances {
  double isometry = 1e-5;
  double cross_check = 1e-5;
  double orthogonality = 1e-8;
};

struct RunConfig {
  std::string name = "run";
  SpaceSpec space;
  std::string expression;                 // U(s) as text, or
  std::filesystem::path generatrix_csv;   // sampled U (columns s, U)
  std::filesystem::path curve_csv;        // lifted curve for `natural`
  double s_min = 0.0, s_max = 1.0;
  std::vector<MemberSpec> members;
  double step = 0.005;
  Integrator integrator = Integrator::rk4;
  GridSpec grid;
  MeshOptions mesh;
  Tolerances tolerances;
  std::uint64_t seed = 1234567;
  int random_checks = 100;
  std::filesystem::path output_dir = "bourgen_out";

  // Relative paths are resolved against base_dir.
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
  static RunConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  void validate() const;

  GeneratrixMetric generatrix() const;
  BourParams params(const MemberSpec& member) const;
};

// Built-in demos: catenoid, helicoid, bcv.
RunConfig demo_config(const std::string& name);

}  // namespace bourgen
