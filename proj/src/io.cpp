#include "bourgen/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bourgen/errors.hpp"

namespace bourgen {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace

std::map<std::string, std::vector<double>> parse_csv(const std::string& text, const std::string& source) {
  std::stringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::map<std::string, std::vector<double>> cols;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const auto cells = split(line);
    if (header.empty()) {
      header = cells;
      for (const auto& h : header) cols[h];
      continue;
    }
    if (cells.size() != header.size())
      throw IoError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                    " columns");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      char* end = nullptr;
      const double v = std::strtod(cells[i].c_str(), &end);
      if (cells[i].empty() || *end != '\0')
        throw IoError(source + ":" + std::to_string(line_no) + ": not a number: '" + cells[i] + "'");
      cols[header[i]].push_back(v);
    }
  }
  if (header.empty()) throw IoError(source + ": empty CSV");
  return cols;
}

namespace {

const std::vector<double>& column(const std::map<std::string, std::vector<double>>& cols, const std::string& name,
                                  const std::string& source) {
  const auto it = cols.find(name);
  if (it == cols.end()) throw IoError(source + ": missing column '" + name + "'");
  return it->second;
}

}  // namespace

LiftedCurve read_curve_csv(const std::filesystem::path& path) {
  const auto cols = parse_csv(read_text(path), path.string());
  const auto& u = column(cols, "u", path.string());
  const auto& x1 = column(cols, "x1", path.string());
  const auto& x2 = column(cols, "x2", path.string());
  const auto& x3 = column(cols, "x3", path.string());
  std::vector<CurveSample> samples(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) samples[k] = {u[k], x1[k], x2[k], x3[k]};
  return LiftedCurve(std::move(samples));
}

GeneratrixMetric read_generatrix_csv(const std::filesystem::path& path) {
  const auto cols = parse_csv(read_text(path), path.string());
  std::vector<double> s = column(cols, "s", path.string());
  std::vector<double> u = column(cols, "U", path.string());
  if (s.size() < 4) throw IoError(path.string() + ": at least 4 samples required");
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!(s[k] > s[k - 1])) throw IoError(path.string() + ": s must be strictly increasing");
  return GeneratrixMetric::from_table(std::move(s), std::move(u));
}

std::string generatrix_csv(const GeneratrixMetric& U, std::span<const double> s) {
  std::string out = "s,U\n";
  for (const double x : s) out += format_double(x) + "," + format_double(U(x)) + "\n";
  return out;
}

std::string profile_csv(const SurfaceMember& member) {
  std::string out = "s,x1,x2,omega,theta,V\n";
  for (const MemberSample& p : member.samples()) {
    out += format_double(p.s) + "," + format_double(p.x1) + "," + format_double(p.x2) + "," +
           format_double(p.omega) + "," + format_double(p.theta) + "," + format_double(p.V) + "\n";
  }
  return out;
}

namespace {

const char* const kSampleColumns[] = {"s", "x1", "x2", "omega", "theta", "V", "dx1", "dx2", "dV", "U", "dU"};

}  // namespace

nlohmann::json member_to_json(const SurfaceMember& member) {
  const MemberMetadata& meta = member.metadata();
  nlohmann::json rows = nlohmann::json::array();
  for (const MemberSample& p : member.samples())
    rows.push_back({p.s, p.x1, p.x2, p.omega, p.theta, p.V, p.dx1, p.dx2, p.dV, p.U, p.dU});
  nlohmann::json cols = nlohmann::json::array();
  for (const char* c : kSampleColumns) cols.push_back(c);
  return {{"m", meta.m},
          {"epsilon", meta.epsilon},
          {"theta0", meta.theta0},
          {"chart", meta.chart_label},
          {"generatrix", meta.generatrix},
          {"space", meta.space},
          {"columns", cols},
          {"samples", rows}};
}

SurfaceMember member_from_json(const nlohmann::json& j) {
  try {
    MemberMetadata meta;
    meta.m = j.at("m").get<double>();
    meta.epsilon = j.value("epsilon", 1);
    meta.theta0 = j.value("theta0", 0.0);
    meta.chart_label = j.value("chart", std::string());
    meta.generatrix = j.value("generatrix", std::string());
    meta.space = j.value("space", nlohmann::json());
    const auto& cols = j.at("columns");
    if (cols.size() != std::size(kSampleColumns)) throw ConfigError("member: unexpected sample columns");
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i].get<std::string>() != kSampleColumns[i]) throw ConfigError("member: unexpected sample columns");
    std::vector<MemberSample> samples;
    for (const auto& r : j.at("samples")) {
      if (r.size() != cols.size()) throw ConfigError("member: sample row has the wrong length");
      std::array<double, std::size(kSampleColumns)> v{};
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = r[i].get<double>();
      samples.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10]});
    }
    return SurfaceMember(std::move(samples), std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("member JSON: ") + e.what());
  }
}

std::string mesh_obj(const SurfaceMember& member, const SpaceSpec& space, const MeshOptions& options) {
  if (options.s_count < 2 || options.t_count < 2) throw ConfigError("mesh: counts must be at least 2");
  const auto ss = linspace(member.s_min(), member.s_max(), static_cast<std::size_t>(options.s_count));
  const auto ts = linspace(options.t_min, options.t_max, static_cast<std::size_t>(options.t_count));
  std::string out = "# bourgen member m=" + format_double(member.m()) + " in " + to_string(space.kind) + "\n";
  for (const double s : ss)
    for (const double t : ts) {
      const Point3 p = to_display_coords(space, member.map(s, t));
      out += "v " + format_double(p[0]) + " " + format_double(p[1]) + " " + format_double(p[2]) + "\n";
    }
  const int nt = options.t_count;
  for (int i = 0; i + 1 < options.s_count; ++i)
    for (int j = 0; j + 1 < nt; ++j) {
      const int a = i * nt + j + 1, b = a + 1, c = a + nt, d = c + 1;
      out += "f " + std::to_string(a) + " " + std::to_string(c) + " " + std::to_string(d) + "\n";
      out += "f " + std::to_string(a) + " " + std::to_string(d) + " " + std::to_string(b) + "\n";
    }
  return out;
}

}  // namespace bourgen
