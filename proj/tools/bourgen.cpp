// bourgen: generate and verify Bour families of invariant surfaces.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "bourgen/config.hpp"
#include "bourgen/errors.hpp"
#include "bourgen/io.hpp"
#include "bourgen/run.hpp"

namespace {

struct CommonFlags {
  std::string config;
  bool strict = false;
  std::optional<double> step;
  std::optional<double> tol;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_config) {
  if (with_config) cmd->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_flag("--strict", f.strict, "exit with status 2 when a verification fails");
  cmd->add_option("--step", f.step, "integration step in s");
  cmd->add_option("--tol", f.tol, "verification tolerance");
  cmd->add_option("--out", f.out, "output directory");
}

bourgen::RunOverrides overrides(const CommonFlags& f) {
  bourgen::RunOverrides o;
  o.step = f.step;
  o.tol = f.tol;
  if (f.out) o.out = *f.out;
  return o;
}

void summarize(const bourgen::RunResult& r) {
  for (const auto& m : r.members) {
    if (!m.ok()) continue;
    std::printf("m=%g", m.spec.m);
    if (m.isometry)
      std::printf("  isometry max|E-1|=%.3g max|F|=%.3g max|G-U^2|=%.3g %s", m.isometry->max_e, m.isometry->max_f,
                  m.isometry->max_g, m.isometry->pass ? "pass" : "FAIL");
    if (m.cross)
      std::printf("  cross-check rho=%.3g angle=%.3g V=%.3g", m.cross->max_rho, m.cross->max_angle, m.cross->max_v);
    std::printf("\n");
  }
  for (const auto& f : r.files) std::printf("wrote %s\n", f.string().c_str());
}

int finish(const bourgen::RunResult& r, bool strict) {
  summarize(r);
  if (r.errored) std::fprintf(stderr, "bourgen: %s\n", r.diagnostic.c_str());
  else if (!r.verified) std::fprintf(stderr, "bourgen: verification failed\n");
  return bourgen::exit_status(r, strict);
}

bourgen::RunConfig load_config(const CommonFlags& f, const char* cmd, bool family = true) {
  if (f.config.empty()) throw bourgen::ConfigError(std::string(cmd) + ": --config is required");
  bourgen::RunConfig c = bourgen::RunConfig::load(f.config);
  bourgen::apply_overrides(c, overrides(f));
  if (family) c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bourgen: isometric families of invariant surfaces"};
  app.require_subcommand(1);

  CommonFlags family_flags, natural_flags, verify_flags, mesh_flags, demo_flags;
  std::string member_path, demo_name;

  auto* family = app.add_subcommand("family", "generate and verify every member of a configured family");
  add_common(family, family_flags, true);
  auto* natural = app.add_subcommand("natural", "natural parameters and generatrix of a lifted curve");
  add_common(natural, natural_flags, true);
  auto* verify = app.add_subcommand("verify", "re-check a serialized member");
  add_common(verify, verify_flags, false);
  verify->add_option("member", member_path, "member JSON")->required()->check(CLI::ExistingFile);
  auto* mesh = app.add_subcommand("mesh", "re-export the OBJ mesh of a serialized member");
  add_common(mesh, mesh_flags, false);
  mesh->add_option("member", member_path, "member JSON")->required()->check(CLI::ExistingFile);
  auto* demo = app.add_subcommand("demo", "built-in examples");
  add_common(demo, demo_flags, false);
  demo->add_option("name", demo_name, "catenoid | helicoid | bcv")
      ->required()
      ->check(CLI::IsMember({"catenoid", "helicoid", "bcv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const char* stage = "config";
  try {
    if (*family) {
      const auto c = load_config(family_flags, "family");
      stage = "family";
      return finish(bourgen::run_family(c), family_flags.strict);
    }
    if (*natural) {
      const auto c = load_config(natural_flags, "natural", false);
      stage = "natural";
      return finish(bourgen::run_natural(c), natural_flags.strict);
    }
    if (*demo) {
      auto c = bourgen::demo_config(demo_name);
      bourgen::apply_overrides(c, overrides(demo_flags));
      c.validate();
      stage = "demo";
      return finish(bourgen::run_family(c), demo_flags.strict);
    }
    if (*verify) {
      bourgen::GridSpec grid;
      stage = "verify";
      std::optional<std::filesystem::path> out;
      if (verify_flags.out) out = *verify_flags.out;
      const auto r = bourgen::run_verify(member_path, grid, verify_flags.tol.value_or(1e-5), out);
      std::printf("%s", bourgen::dump_json(r.report).c_str());
      return finish(r, verify_flags.strict);
    }
    if (*mesh) {
      stage = "mesh";
      const std::filesystem::path out =
          mesh_flags.out ? std::filesystem::path(*mesh_flags.out) : std::filesystem::path(member_path).parent_path();
      return finish(bourgen::run_mesh(member_path, bourgen::MeshOptions{}, out), mesh_flags.strict);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bourgen: stage %s: %s\n", stage, e.what());
    return 1;
  }
  return 1;
}
