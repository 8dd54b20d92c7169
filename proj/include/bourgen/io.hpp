#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bourgen/generatrix.hpp"
#include "bourgen/member.hpp"
#include "bourgen/natural.hpp"
#include "bourgen/spaces.hpp"

namespace bourgen {

// Shortest round-trip decimal ("%.17g").
std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& content);
nlohmann::json read_json(const std::filesystem::path& path);
std::string dump_json(const nlohmann::json& j);

// Numeric CSV with a header row; returns columns by name.
std::map<std::string, std::vector<double>> parse_csv(const std::string& text, const std::string& source);

// Columns u, x1, x2, x3.
LiftedCurve read_curve_csv(const std::filesystem::path& path);
// Columns s, U; monotone cubic interpolation with finite-difference slopes.
GeneratrixMetric read_generatrix_csv(const std::filesystem::path& path);

std::string generatrix_csv(const GeneratrixMetric& U, std::span<const double> s);
// s, x1, x2, omega, theta, V
std::string profile_csv(const SurfaceMember& member);

nlohmann::json member_to_json(const SurfaceMember& member);
SurfaceMember member_from_json(const nlohmann::json& j);

struct MeshOptions {
  int s_count = 41;
  int t_count = 41;
  double t_min = 0.0;
  double t_max = 6.283185307179586;
};

// Row-major (s outer, t inner) grid, two triangles per cell, vertices in
// display coordinates of `space`.
std::string mesh_obj(const SurfaceMember& member, const SpaceSpec& space, const MeshOptions& options);

}  // namespace bourgen
