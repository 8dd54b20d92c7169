#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bourgen/config.hpp"
#include "bourgen/member.hpp"
#include "bourgen/verify.hpp"

namespace bourgen {

struct RunOverrides {
  std::optional<double> step;
  std::optional<double> tol;  // isometry and cross-check tolerance
  std::optional<std::filesystem::path> out;
};

void apply_overrides(RunConfig& config, const RunOverrides& overrides);

struct OrthogonalityCheck {
  std::uint64_t seed = 0;
  int points = 0;
  double max_abs_pairing = 0.0;
  bool pass = true;
};

struct MemberResult {
  MemberSpec spec;
  std::optional<SurfaceMember> member;
  std::string failed_stage;  // empty on success
  std::string error;
  std::optional<IsometryReport> isometry;
  std::optional<CrossCheck> cross;
  std::optional<OrthogonalityCheck> orthogonality;

  bool ok() const { return failed_stage.empty(); }
  bool verified(const Tolerances& tol) const;
  nlohmann::json to_json(const Tolerances& tol) const;
};

struct RunResult {
  std::vector<MemberResult> members;
  nlohmann::json report;
  std::vector<std::filesystem::path> files;
  bool errored = false;
  bool verified = false;
  std::string diagnostic;  // single line, first failure
};

// Generic pipeline, closed-form cross-check, isometry and orthogonality
// checks for every m; no files are written.
RunResult compute_family(const RunConfig& config);
// compute_family plus profile CSV, OBJ mesh and member JSON per m and a report JSON.
RunResult run_family(const RunConfig& config);
// Natural parameters of config.curve_csv: generatrix CSV, member JSON, report.
RunResult run_natural(const RunConfig& config);
// Re-check a serialized member against its recorded space.
RunResult run_verify(const std::filesystem::path& member_json, const GridSpec& grid, double tol,
                     const std::optional<std::filesystem::path>& out);
// Re-export the OBJ mesh of a serialized member.
RunResult run_mesh(const std::filesystem::path& member_json, const MeshOptions& mesh,
                   const std::filesystem::path& out);

// 0 pass, 2 failed verification in strict mode, 1 errors.
int exit_status(const RunResult& result, bool strict);

}  // namespace bourgen
