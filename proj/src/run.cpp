#include "bourgen/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "bourgen/bour.hpp"
#include "bourgen/errors.hpp"
#include "bourgen/io.hpp"
#include "bourgen/natural.hpp"
#include "bourgen/spaces.hpp"

namespace bourgen {

void apply_overrides(RunConfig& config, const RunOverrides& overrides) {
  if (overrides.step) config.step = *overrides.step;
  if (overrides.tol) {
    config.tolerances.isometry = *overrides.tol;
    config.tolerances.cross_check = *overrides.tol;
  }
  if (overrides.out) config.output_dir = *overrides.out;
}

bool MemberResult::verified(const Tolerances& tol) const {
  if (!ok()) return false;
  if (isometry && !isometry->pass) return false;
  if (cross && !cross->within(tol.cross_check)) return false;
  if (orthogonality && !orthogonality->pass) return false;
  return true;
}

nlohmann::json MemberResult::to_json(const Tolerances& tol) const {
  nlohmann::json j = {{"m", spec.m}, {"epsilon", spec.epsilon}, {"theta0", spec.theta0}};
  if (!ok()) {
    j["status"] = "error";
    j["stage"] = failed_stage;
    j["error"] = error;
  } else {
    j["status"] = "ok";
  }
  if (isometry) j["isometry"] = isometry->to_json();
  if (cross) {
    j["cross_check"] = cross->to_json();
    j["cross_check"]["tolerance"] = tol.cross_check;
    j["cross_check"]["pass"] = cross->within(tol.cross_check);
  }
  if (orthogonality) {
    j["orthogonality"] = {{"seed", orthogonality->seed},
                          {"points", orthogonality->points},
                          {"max_abs_pairing", orthogonality->max_abs_pairing},
                          {"tolerance", tol.orthogonality},
                          {"pass", orthogonality->pass}};
  }
  j["pass"] = verified(tol);
  return j;
}

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string member_stem(const RunConfig& config, const MemberSpec& m) {
  std::string stem = config.name + "_m" + fmt_g(m.m);
  if (m.epsilon < 0) stem += "_eps-1";
  return stem;
}

OrthogonalityCheck check_orthogonality(const BuiltinSpace& space, const SurfaceMember& member, std::uint64_t seed,
                                       int points, double tol) {
  double lo1 = INFINITY, hi1 = -INFINITY, lo2 = INFINITY, hi2 = -INFINITY;
  for (const MemberSample& p : member.samples()) {
    lo1 = std::min(lo1, p.x1);
    hi1 = std::max(hi1, p.x1);
    lo2 = std::min(lo2, p.x2);
    hi2 = std::max(hi2, p.x2);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d1(lo1, hi1), d2(lo2 - 0.1, hi2 + 0.1);
  const InvariantFunction omega = volume_function(space.chart);
  OrthogonalityCheck out;
  out.seed = seed;
  for (int i = 0; i < points; ++i) {
    const Point2 x{d1(rng), d2(rng)};
    if (!space.chart.contains(x)) continue;
    out.max_abs_pairing = std::max(out.max_abs_pairing, std::abs(invariant_pairing(space.chart, omega, space.theta, x)));
    ++out.points;
  }
  out.pass = out.max_abs_pairing <= tol;
  return out;
}

MemberResult compute_member(const RunConfig& config, const GeneratrixMetric& U, const BuiltinSpace& space,
                            const MemberSpec& spec) {
  MemberResult r;
  r.spec = spec;
  std::string stage = "integrate_profile";
  try {
    const BourParams params = config.params(spec);
    const SurfaceMember raw = generate_member(U, params, space.frame, spec.theta0);
    MemberMetadata meta = raw.metadata();
    meta.space = config.space.to_json();
    r.member.emplace(raw.samples(), meta);

    stage = "isometry_report";
    const IsometryGrid grid = IsometryGrid::covering(*r.member, config.grid.s_count, config.grid.t_count,
                                                     config.grid.t_min, config.grid.t_max, config.grid.fd_step);
    r.isometry = isometry_report(space.chart, *r.member, U, grid, config.tolerances.isometry);

    stage = "closed_form";
    std::vector<double> s;
    for (const MemberSample& p : r.member->samples()) s.push_back(p.s);
    const ClosedFormFamily closed = closed_form(config.space, U, spec.m, spec.epsilon, s);
    stage = "cross_check";
    r.cross = cross_check(closed, *r.member);

    stage = "orthogonality";
    r.orthogonality = check_orthogonality(space, *r.member, config.seed, config.random_checks,
                                          config.tolerances.orthogonality);
  } catch (const std::exception& e) {
    r.failed_stage = stage;
    r.error = e.what();
  }
  return r;
}

std::string diagnostic_for(const MemberResult& r) {
  return "m=" + fmt_g(r.spec.m) + ": stage " + r.failed_stage + ": " + r.error;
}

void finish(RunResult& result, const Tolerances& tol) {
  result.verified = true;
  for (const MemberResult& m : result.members) {
    if (!m.ok() && !result.errored) {
      result.errored = true;
      result.diagnostic = diagnostic_for(m);
    }
    if (!m.verified(tol)) result.verified = false;
  }
}

}  // namespace

RunResult compute_family(const RunConfig& config) {
  config.validate();
  const GeneratrixMetric U = config.generatrix();
  const BuiltinSpace space = make_space(config.space);

  RunResult result;
  result.members.resize(config.members.size());
  const long n = static_cast<long>(config.members.size());
  // Members are independent; compute_member never throws.
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) result.members[i] = compute_member(config, U, space, config.members[i]);
  finish(result, config.tolerances);

  nlohmann::json members = nlohmann::json::array();
  for (const MemberResult& m : result.members) members.push_back(m.to_json(config.tolerances));
  result.report = {{"config", config.to_json()}, {"members", members}, {"pass", result.verified && !result.errored}};
  return result;
}

RunResult run_family(const RunConfig& config) {
  RunResult result = compute_family(config);
  const auto& dir = config.output_dir;
  for (std::size_t i = 0; i < result.members.size(); ++i) {
    const MemberResult& m = result.members[i];
    if (!m.member) continue;
    const std::string stem = member_stem(config, m.spec);
    const auto csv = dir / (stem + "_profile.csv");
    const auto obj = dir / (stem + ".obj");
    const auto json = dir / (stem + "_member.json");
    write_text(csv, profile_csv(*m.member));
    write_text(obj, mesh_obj(*m.member, config.space, config.mesh));
    write_text(json, dump_json(member_to_json(*m.member)));
    result.report["members"][i]["files"] = {csv.filename().string(), obj.filename().string(),
                                            json.filename().string()};
    result.files.insert(result.files.end(), {csv, obj, json});
  }
  const auto report = dir / (config.name + "_report.json");
  write_text(report, dump_json(result.report));
  result.files.push_back(report);
  return result;
}

RunResult run_natural(const RunConfig& config) {
  if (config.curve_csv.empty()) throw ConfigError("natural: config needs 'curve' (CSV with u, x1, x2, x3)");
  config.space.validate();
  const AdaptedChart3 chart = make_chart(config.space);
  const LiftedCurve curve = read_curve_csv(config.curve_csv);

  RunResult result;
  MemberResult r;
  std::string stage = "pullback_coefficients";
  try {
    const auto coeffs = pullback_coefficients(chart, curve);
    stage = "to_natural";
    const NaturalParameters nat = to_natural(coeffs);
    stage = "natural_member";
    const SurfaceMember raw = natural_member(chart, curve, nat);
    MemberMetadata meta = raw.metadata();
    meta.space = config.space.to_json();
    r.member.emplace(raw.samples(), meta);
    stage = "isometry_report";
    const IsometryGrid grid = IsometryGrid::covering(*r.member, config.grid.s_count, config.grid.t_count,
                                                     config.grid.t_min, config.grid.t_max, config.grid.fd_step);
    r.isometry = isometry_report(chart, *r.member, nat.U, grid, config.tolerances.isometry);

    const auto gen = config.output_dir / (config.name + "_generatrix.csv");
    const auto json = config.output_dir / (config.name + "_member.json");
    write_text(gen, generatrix_csv(nat.U, nat.s));
    write_text(json, dump_json(member_to_json(*r.member)));
    result.files = {gen, json};
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    r.failed_stage = stage;
    r.error = e.what();
  }
  result.members.push_back(std::move(r));
  finish(result, config.tolerances);
  nlohmann::json j = result.members.front().to_json(config.tolerances);
  j.erase("epsilon");
  j.erase("theta0");
  result.report = {{"curve", config.curve_csv.string()}, {"space", config.space.to_json()}, {"natural", j},
                   {"pass", result.verified && !result.errored}};
  const auto report = config.output_dir / (config.name + "_natural_report.json");
  write_text(report, dump_json(result.report));
  result.files.push_back(report);
  return result;
}

namespace {

SpaceSpec space_of(const SurfaceMember& member) {
  if (member.metadata().space.is_null()) throw ConfigError("member JSON has no space stanza");
  return SpaceSpec::from_json(member.metadata().space);
}

}  // namespace

RunResult run_verify(const std::filesystem::path& member_json, const GridSpec& grid, double tol,
                     const std::optional<std::filesystem::path>& out) {
  const SurfaceMember member = member_from_json(read_json(member_json));
  const SpaceSpec spec = space_of(member);
  const AdaptedChart3 chart = make_chart(spec);
  RunResult result;
  MemberResult r;
  r.spec = {member.m(), member.metadata().epsilon, member.metadata().theta0};
  try {
    const IsometryGrid g =
        IsometryGrid::covering(member, grid.s_count, grid.t_count, grid.t_min, grid.t_max, grid.fd_step);
    r.isometry = isometry_report(chart, member, member.generatrix(), g, tol);
  } catch (const std::exception& e) {
    r.failed_stage = "isometry_report";
    r.error = e.what();
  }
  result.members.push_back(std::move(r));
  Tolerances t;
  t.isometry = tol;
  finish(result, t);
  result.report = {{"member", member_json.string()},
                   {"space", spec.to_json()},
                   {"result", result.members.front().to_json(t)},
                   {"pass", result.verified && !result.errored}};
  if (out) {
    const auto path = *out / (member_json.stem().string() + "_verify.json");
    write_text(path, dump_json(result.report));
    result.files.push_back(path);
  }
  return result;
}

RunResult run_mesh(const std::filesystem::path& member_json, const MeshOptions& mesh,
                   const std::filesystem::path& out) {
  const SurfaceMember member = member_from_json(read_json(member_json));
  const SpaceSpec spec = space_of(member);
  RunResult result;
  std::string stem = member_json.stem().string();
  const std::string suffix = "_member";
  if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
  const auto path = out / (stem + ".obj");
  write_text(path, mesh_obj(member, spec, mesh));
  result.files.push_back(path);
  result.verified = true;
  result.report = {{"member", member_json.string()}, {"obj", path.string()}};
  return result;
}

int exit_status(const RunResult& result, bool strict) {
  if (result.errored) return 1;
  if (strict && !result.verified) return 2;
  return 0;
}

}  // namespace bourgen
