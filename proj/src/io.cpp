#include "antpath/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include <json.hpp>

#include "antpath/errors.hpp"

namespace antpath::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Maps

std::string format_map(const GridMap& map) {
  std::string out = std::to_string(map.width()) + " " + std::to_string(map.height()) + "\n";
  out.reserve(out.size() + map.cell_count() + static_cast<std::size_t>(map.height()));
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) out.push_back(map.blocked({x, y}) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

GridMap parse_map(std::string_view text, const std::string& source) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    lines.push_back(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw ParseError(source, 1, "empty map file");

  int width = 0, height = 0;
  {
    const std::string header(lines[0]);
    std::istringstream in(header);
    std::string rest;
    if (!(in >> width >> height) || (in >> rest) || header.find_first_of("\r\t") != std::string::npos ||
        header != std::to_string(width) + " " + std::to_string(height)) {
      throw ParseError(source, 1, "expected '<width> <height>'");
    }
  }
  if (width < 2 || height < 2) throw ParseError(source, 1, "map must be at least 2x2");
  if (lines.size() < static_cast<std::size_t>(height) + 1) {
    throw ParseError(source, static_cast<int>(lines.size()) + 1, "expected " + std::to_string(height) + " rows");
  }

  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    const auto row = lines[static_cast<std::size_t>(y) + 1];
    const int line_no = y + 2;
    if (row.size() != static_cast<std::size_t>(width)) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(width) + " cells, got " + std::to_string(row.size()));
    }
    for (char c : row) {
      if (c == '.') {
        cells.push_back(0);
      } else if (c == '#') {
        cells.push_back(1);
      } else {
        throw ParseError(source, line_no, std::string("unexpected character '") + c + "'");
      }
    }
  }
  for (std::size_t k = static_cast<std::size_t>(height) + 1; k < lines.size(); ++k) {
    if (!lines[k].empty()) throw ParseError(source, static_cast<int>(k) + 1, "unexpected content after grid");
  }
  return GridMap(width, height, std::move(cells));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

GridMap load_map(const std::filesystem::path& path) { return parse_map(read_file(path), path.string()); }

// ---------------------------------------------------------------------------
// Instances

namespace {

Node parse_node(const json& j, const char* key, const std::string& source) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 || !j[key][0].is_number_integer() ||
      !j[key][1].is_number_integer()) {
    throw ParseError(source, 1, std::string("'") + key + "' must be [x, y]");
  }
  return {j[key][0].get<int>(), j[key][1].get<int>()};
}

}  // namespace

Instance parse_instance_json(std::string_view json_text, const std::filesystem::path& base_dir,
                             const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 1, e.what());
  }
  if (!j.is_object() || !j.contains("map") || !j["map"].is_string()) {
    throw ParseError(source, 1, "'map' must be a string");
  }
  const std::string map_field = j["map"].get<std::string>();
  GridMap map = map_field.find('\n') != std::string::npos ? parse_map(map_field, source + "#map")
                                                           : load_map(base_dir / map_field);
  return Instance(std::move(map), parse_node(j, "start", source), parse_node(j, "goal", source));
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance_json(read_file(path), path.parent_path(), path.string());
}

std::string format_instance_json(const Instance& instance) {
  json j;
  j["map"] = format_map(instance.map());
  j["start"] = {instance.start().x, instance.start().y};
  j["goal"] = {instance.goal().x, instance.goal().y};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Numbers and pheromone exports

std::string format_number(std::optional<double> value) {
  if (!value || std::isnan(*value)) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", *value);
  return buf;
}

std::string pheromone_csv(const PheromoneField& field) {
  std::string out;
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      if (x) out.push_back(',');
      out += format_number(field.node_value({x, y}));
    }
    out.push_back('\n');
  }
  return out;
}

std::string pheromone_pgm(const PheromoneField& field) {
  double top = 0.0;
  for (int y = 0; y < field.height(); ++y)
    for (int x = 0; x < field.width(); ++x) top = std::max(top, field.node_value({x, y}));

  std::string out = "P2\n# per-node pheromone (max over incoming edges), gray = round(255 * value / " +
                    format_number(top) + ")\n" + std::to_string(field.width()) + " " +
                    std::to_string(field.height()) + "\n255\n";
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      const double v = field.node_value({x, y});
      const long gray = top > 0.0 ? std::lround(255.0 * v / top) : 0;
      if (x) out.push_back(' ');
      out += std::to_string(gray);
    }
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string significance(const MetricRow& row) {
  if (!row.p_value) return {};
  return *row.p_value < kSignificanceLevel ? "significant" : "not significant";
}

json optional_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

std::string report_csv(const BenchReport& report) {
  std::string out = "config,average_path,turning,sd_p,success_rate_pct,path_improve_pct,p_value,significance\n";
  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    const auto& row = report.rows[c];
    out += report.configs[c].label + "," + format_number(row.average_path) + "," +
           format_number(row.turning_mean) + "," + format_number(row.sd_p) + "," +
           format_number(row.success_rate_pct) + "," + format_number(row.path_improve_pct) + "," +
           format_number(row.p_value) + "," + significance(row) + "\n";
  }
  out += "# path_improve_pct = 100 * (avg_small - avg_large) / avg_large; small/large = lowest/highest "
         "ants*iterations config of the same algorithm\n";
  if (report.reference) {
    out += "# p_value: two-sided Mann-Whitney U of successful path costs against " +
           report.configs[*report.reference].label + " (best average_path); alpha = 0.05\n";
  }
  return out;
}

std::string timing_csv(const BenchReport& report) {
  std::string out = "config,time_mean_s,sd_t\n";
  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    out += report.configs[c].label + "," + format_number(report.rows[c].time_mean_s) + "," +
           format_number(report.rows[c].sd_t) + "\n";
  }
  return out;
}

std::string curves_csv(const BenchReport& report) {
  std::vector<std::size_t> cols;
  std::size_t rows = 0;
  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    if (report.configs[c].is_oracle()) continue;
    cols.push_back(c);
    rows = std::max(rows, report.curves[c].size());
  }
  std::string out = "iteration";
  for (auto c : cols) out += "," + report.configs[c].label;
  out += "\n";
  for (std::size_t k = 0; k < rows; ++k) {
    out += std::to_string(k + 1);
    for (auto c : cols) {
      out += ",";
      if (k < report.curves[c].size()) out += format_number(report.curves[c][k]);
    }
    out += "\n";
  }
  return out;
}

std::string report_json(const BenchReport& report) {
  json j;
  j["dataset"] = report.dataset_id;
  j["repeats"] = report.repeats;
  j["seeds"] = report.seeds;
  j["reference"] = report.reference ? json(report.configs[*report.reference].label) : json(nullptr);

  json configs = json::array();
  for (const auto& cfg : report.configs) {
    json c;
    c["label"] = cfg.label;
    if (cfg.is_oracle()) {
      c["algorithm"] = "astar";
    } else {
      const auto& p = *cfg.params;
      c["algorithm"] = std::string(variant_name(p.variant));
      c["ants"] = p.ants;
      c["iterations"] = p.iterations;
      c["alpha"] = p.alpha;
      c["beta"] = p.beta;
      c["rho"] = p.rho;
      c["q"] = p.q;
    }
    configs.push_back(c);
  }
  j["configs"] = configs;

  json rows = json::array();
  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    const auto& row = report.rows[c];
    json r;
    r["label"] = report.configs[c].label;
    r["average_path"] = optional_number(row.average_path);
    r["turning"] = optional_number(row.turning_mean);
    r["sd_p"] = optional_number(row.sd_p);
    r["success_rate_pct"] = row.success_rate_pct;
    r["path_improve_pct"] = optional_number(row.path_improve_pct);
    r["p_value"] = optional_number(row.p_value);
    r["significant"] = row.p_value ? json(*row.p_value < kSignificanceLevel) : json(nullptr);
    rows.push_back(r);
  }
  j["rows"] = rows;

  json curves = json::object();
  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    if (report.configs[c].is_oracle()) continue;
    json curve = json::array();
    for (double v : report.curves[c]) curve.push_back(optional_number(v));
    curves[report.configs[c].label] = curve;
  }
  j["curves"] = curves;

  // Distinct maps once, instances refer to them by index.
  std::map<std::string, std::size_t> map_ids;
  json maps = json::array();
  json instances = json::array();
  for (const auto& rec : report.instances) {
    const std::string text = format_map(rec.instance.map());
    auto [it, inserted] = map_ids.emplace(text, maps.size());
    if (inserted) maps.push_back(text);
    json inst;
    inst["map"] = it->second;
    inst["start"] = {rec.instance.start().x, rec.instance.start().y};
    inst["goal"] = {rec.instance.goal().x, rec.instance.goal().y};
    inst["oracle_cost"] = optional_number(rec.oracle_cost);
    instances.push_back(inst);
  }
  j["maps"] = maps;
  j["instances"] = instances;

  json runs = json::array();
  for (const auto& run : report.runs) {
    json r;
    r["config"] = run.config;
    r["instance"] = run.instance;
    r["repeat"] = run.repeat;
    r["succeeded"] = run.succeeded;
    r["cost"] = run.succeeded ? json(run.cost) : json(nullptr);
    r["turns"] = run.succeeded ? json(run.turns) : json(nullptr);
    runs.push_back(r);
  }
  j["runs"] = runs;
  return j.dump(2) + "\n";
}

std::string report_table(const BenchReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %12s %10s %8s %10s %10s %8s %12s %10s\n", "config", "AveragePath",
                "Time(s)", "Turning", "SD-P", "SD-T", "Success", "PathImprove", "p-value");
  out += line;
  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    const auto& r = report.rows[c];
    std::snprintf(line, sizeof line, "%-16s %12s %10s %8s %10s %10s %8s %12s %10s\n",
                  report.configs[c].label.c_str(), format_number(r.average_path).c_str(),
                  format_number(r.time_mean_s).c_str(), format_number(r.turning_mean).c_str(),
                  format_number(r.sd_p).c_str(), format_number(r.sd_t).c_str(),
                  format_number(r.success_rate_pct).c_str(), format_number(r.path_improve_pct).c_str(),
                  r.p_value ? format_number(r.p_value).c_str() : "-");
    out += line;
  }
  return out;
}

}  // namespace antpath::io
