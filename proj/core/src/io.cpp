#include "tseek/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "tseek/error.hpp"

namespace tseek {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) throw Error(ErrorCode::Io, "empty number");
  const char* first = s.data() + a;
  const char* last = s.data() + b + 1;
  if (*first == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw Error(ErrorCode::Io, "not a number: '" + s + "'");
  return v;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }
json point_json(Point3 p) { return json::array({p.x, p.y, p.z}); }
Point2 json_point2(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
Point3 json_point3(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

json bound_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double json_bound(const json& j) { return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>(); }

json meta_json(const std::string& id, const InstanceMeta& meta) {
  json params = json::object();
  for (const auto& [k, v] : meta.params) params[k] = v;
  return {{"id", id}, {"generator", meta.generator}, {"params", params}, {"seed", meta.seed}};
}

InstanceMeta json_meta(const json& j) {
  InstanceMeta m;
  m.generator = j.value("generator", "");
  m.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) m.params.push_back({k, v.get<double>()});
  }
  return m;
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, path + ": " + e.what());
  }
}

std::string sibling(const std::string& manifest, const std::string& name) {
  return (fs::path(manifest).parent_path() / name).string();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path);
}

void write_terrain1d_csv(std::ostream& out, const Terrain1D& terrain) {
  out << "x,height\n";
  for (const auto& v : terrain.vertices()) out << format_double(v.x) << ',' << format_double(v.y) << '\n';
}

Terrain1D read_terrain1d_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "x,height") throw Error(ErrorCode::Io, "expected header x,height");
  std::vector<Point2> v;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 2) throw Error(ErrorCode::Io, "expected two columns: " + line);
    v.push_back({parse_double(cells[0]), parse_double(cells[1])});
  }
  return Terrain1D::from_vertices(std::move(v));
}

void write_raster_csv(std::ostream& out, const Terrain25D& terrain) {
  for (std::size_t r = 0; r < terrain.rows(); ++r) {
    for (std::size_t c = 0; c < terrain.cols(); ++c) {
      if (c) out << ',';
      out << format_double(terrain.node(c, r));
    }
    out << '\n';
  }
}

void save_raster(const std::string& manifest_path, const std::string& csv_path, const Terrain25D& terrain) {
  std::ostringstream csv;
  write_raster_csv(csv, terrain);
  write_file(csv_path, csv.str());
  const json j{{"cols", terrain.cols()},
               {"rows", terrain.rows()},
               {"spacing", terrain.spacing()},
               {"origin_offset", point_json(terrain.origin())},
               {"heights", fs::path(csv_path).filename().string()}};
  write_file(manifest_path, j.dump(2) + "\n");
}

namespace {

Terrain25D raster_from_json(const json& j, const std::string& manifest_path) {
  try {
    const auto cols = j.at("cols").get<std::size_t>();
    const auto rows = j.at("rows").get<std::size_t>();
    std::istringstream in(read_file(sibling(manifest_path, j.at("heights").get<std::string>())));
    std::vector<double> h;
    std::string line;
    while (std::getline(in, line)) {
      line = strip_cr(line);
      if (line.empty()) continue;
      const auto cells = split(line);
      if (cells.size() != cols) throw Error(ErrorCode::Io, "raster row has wrong width");
      for (const auto& c : cells) h.push_back(parse_double(c));
    }
    return Terrain25D::from_raster(std::move(h), cols, rows, j.at("spacing").get<double>(),
                                   json_point2(j.at("origin_offset")));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, manifest_path + ": " + e.what());
  }
}

std::string event_names_at(std::size_t vertex, const std::multimap<std::size_t, std::string>& events) {
  std::string out;
  const auto [a, b] = events.equal_range(vertex);
  for (auto it = a; it != b; ++it) {
    if (!out.empty()) out += '+';
    out += it->second;
  }
  return out;
}

}  // namespace

Terrain25D load_raster(const std::string& manifest_path) { return raster_from_json(read_json(manifest_path), manifest_path); }

void write_path1d_csv(std::ostream& out, const SearchPath1D& path) {
  std::multimap<std::size_t, std::string> ev;
  for (const auto& e : path.events) ev.insert({e.vertex, std::string(to_string(e.kind))});
  out << "arclen,x,y,event\n";
  const auto& v = path.polyline.vertices();
  const auto& cum = path.polyline.cumulative_length();
  for (std::size_t k = 0; k < v.size(); ++k) {
    out << format_double(cum[k]) << ',' << format_double(v[k].x) << ',' << format_double(v[k].y) << ','
        << event_names_at(k, ev) << '\n';
  }
}

void write_path25d_csv(std::ostream& out, const SearchPath3D& path) {
  std::multimap<std::size_t, std::string> ev;
  for (const auto& e : path.events) ev.insert({e.vertex, std::string(to_string(e.kind))});
  out << "arclen,x,y,z,event\n";
  const auto& v = path.polyline.vertices();
  const auto& cum = path.polyline.cumulative_length();
  for (std::size_t k = 0; k < v.size(); ++k) {
    out << format_double(cum[k]) << ',' << format_double(v[k].x) << ',' << format_double(v[k].y) << ','
        << format_double(v[k].z) << ',' << event_names_at(k, ev) << '\n';
  }
}

void write_results_csv(std::ostream& out, const std::vector<RatioReport>& reports) {
  out << "instance_id,tau,tau_star,opt,ratio,ratio_star,flags\n";
  for (const auto& r : reports) {
    out << r.instance_id << ',' << format_double(r.tau) << ',' << format_double(r.tau_star) << ','
        << format_double(r.opt) << ',' << format_double(r.ratio) << ',' << format_double(r.ratio_star) << ','
        << flags_to_string(r.flags) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

void save_instance(const std::string& dir, const Instance1D& inst) {
  fs::create_directories(dir);
  const std::string terrain_name = inst.id + ".terrain.csv";
  std::ostringstream csv;
  write_terrain1d_csv(csv, inst.terrain);
  write_file((fs::path(dir) / terrain_name).string(), csv.str());
  json j = meta_json(inst.id, inst.meta);
  j["dimension"] = "1d";
  j["terrain"] = terrain_name;
  j["target"] = point_json(inst.target.position);
  j["opt_lower"] = bound_json(inst.opt_lower);
  j["opt_upper"] = bound_json(inst.opt_upper);
  j["ray"] = inst.ray ? json{{"anchor", point_json(inst.ray->anchor())}, {"direction", point_json(inst.ray->direction())}}
                      : json(nullptr);
  write_file((fs::path(dir) / (inst.id + ".json")).string(), j.dump(2) + "\n");
}

void save_instance(const std::string& dir, const Instance25D& inst) {
  fs::create_directories(dir);
  const std::string raster_manifest = inst.id + ".raster.json";
  save_raster((fs::path(dir) / raster_manifest).string(), (fs::path(dir) / (inst.id + ".raster.csv")).string(),
              inst.terrain);
  json j = meta_json(inst.id, inst.meta);
  j["dimension"] = "2.5d";
  j["terrain"] = raster_manifest;
  j["target"] = point_json(inst.target);
  j["opt_lower"] = bound_json(inst.opt_lower);
  j["opt_upper"] = bound_json(inst.opt_upper);
  write_file((fs::path(dir) / (inst.id + ".json")).string(), j.dump(2) + "\n");
}

std::string manifest_dimension(const std::string& manifest_path) {
  return read_json(manifest_path).value("dimension", "");
}

Instance1D load_instance1d(const std::string& manifest_path) {
  const json j = read_json(manifest_path);
  try {
    if (j.value("dimension", "") != "1d") throw Error(ErrorCode::Io, manifest_path + ": not a 1.5D instance");
    std::ifstream in(sibling(manifest_path, j.at("terrain").get<std::string>()));
    if (!in) throw Error(ErrorCode::Io, "cannot open terrain of " + manifest_path);
    auto terrain = read_terrain1d_csv(in);
    std::optional<VisRay> ray;
    if (j.contains("ray") && !j.at("ray").is_null()) {
      const Point2 a = json_point2(j.at("ray").at("anchor"));
      ray = VisRay::through(a, a + json_point2(j.at("ray").at("direction")));
    }
    return {j.at("id").get<std::string>(), std::move(terrain), {json_point2(j.at("target"))}, ray,
            json_bound(j.at("opt_lower")), json_bound(j.at("opt_upper")), json_meta(j)};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, manifest_path + ": " + e.what());
  }
}

Instance25D load_instance25d(const std::string& manifest_path) {
  const json j = read_json(manifest_path);
  try {
    if (j.value("dimension", "") != "2.5d") throw Error(ErrorCode::Io, manifest_path + ": not a 2.5D instance");
    auto terrain = load_raster(sibling(manifest_path, j.at("terrain").get<std::string>()));
    return {j.at("id").get<std::string>(), std::move(terrain), json_point3(j.at("target")),
            json_bound(j.at("opt_lower")), json_bound(j.at("opt_upper")), json_meta(j)};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, manifest_path + ": " + e.what());
  }
}

}  // namespace tseek
