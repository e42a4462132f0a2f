#include "antpath/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "antpath/bench.hpp"
#include "antpath/colony.hpp"
#include "antpath/errors.hpp"
#include "antpath/io.hpp"
#include "antpath/pfaco.hpp"
#include "antpath/search.hpp"

namespace antpath::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kMinMapSize = 4;

struct ColonyFlags {
  std::string algo = "pfaco";
  int ants = 30;
  int iterations = 20;
  std::optional<double> alpha, beta, rho, q;
  std::uint64_t seed = 0;
  double timeout_s = 120.0;
  bool ltos_per_step = false;
};

struct InstanceFlags {
  std::string map_path;
  std::string instance_path;
  std::string start;
  std::string goal;
};

void add_colony_flags(CLI::App* cmd, ColonyFlags& f) {
  cmd->add_option("--algo", f.algo, "astar, as, eliteas, mmas, pfaco, or a <name>-<ants>-<iters> label")
      ->capture_default_str();
  cmd->add_option("--ants", f.ants, "ants per iteration (M)")->capture_default_str();
  cmd->add_option("--iters", f.iterations, "iterations (K)")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "pheromone exponent");
  cmd->add_option("--beta", f.beta, "heuristic exponent");
  cmd->add_option("--rho", f.rho, "evaporation rate in (0,1)");
  cmd->add_option("--q", f.q, "deposit constant Q");
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd->add_option("--timeout-s", f.timeout_s, "per-run wall clock budget")->capture_default_str();
  cmd->add_flag("--ltos-per-step", f.ltos_per_step, "PFACO: rewire the trail after every step");
}

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
  cmd->add_option("--map", f.map_path, "map file");
  cmd->add_option("--instance", f.instance_path, "instance JSON (alternative to --map/--start/--goal)");
  cmd->add_option("--start", f.start, "start node x,y");
  cmd->add_option("--goal", f.goal, "goal node x,y");
}

Node parse_node(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  Node n;
  auto parse_int = [&](std::string_view s, int& v) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && !s.empty();
  };
  const std::string_view sv(text);
  if (comma == std::string::npos || !parse_int(sv.substr(0, comma), n.x) || !parse_int(sv.substr(comma + 1), n.y)) {
    throw ParameterError(std::string(flag) + " expects x,y, got '" + text + "'");
  }
  return n;
}

Instance load_instance(const InstanceFlags& f) {
  if (!f.instance_path.empty()) return io::load_instance(f.instance_path);
  if (f.map_path.empty() || f.start.empty() || f.goal.empty()) {
    throw ParameterError("give --instance, or all of --map, --start and --goal");
  }
  const Node start = parse_node(f.start, "--start");
  const Node goal = parse_node(f.goal, "--goal");
  return Instance(io::load_map(f.map_path), start, goal);
}

bool is_oracle_name(std::string lower) {
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  return lower == "astar" || lower == "a*";
}

// nullopt = A*.
std::optional<ColonyParams> make_params(const ColonyFlags& f) {
  const bool bare = f.algo.find('-') == std::string::npos && !is_oracle_name(f.algo);
  const AlgoConfig config = parse_algo_config(
      bare ? f.algo + "-" + std::to_string(f.ants) + "-" + std::to_string(f.iterations) : f.algo);
  if (config.is_oracle()) return std::nullopt;
  ColonyParams p = *config.params;
  if (f.alpha) p.alpha = *f.alpha;
  if (f.beta) p.beta = *f.beta;
  if (f.rho) p.rho = *f.rho;
  if (f.q) p.q = *f.q;
  p.seed = f.seed;
  p.timeout_seconds = f.timeout_s;
  p.ltos_per_step = f.ltos_per_step;
  p.validate();
  return p;
}

json path_json(const Path& path) {
  json nodes = json::array();
  for (auto n : path.nodes) nodes.push_back({n.x, n.y});
  return {{"nodes", nodes}, {"cost", path.cost}, {"turns", path.turns}};
}

int cmd_gen_maps(int size, std::uint64_t seed, const std::string& out_dir, std::ostream& out) {
  if (size < kMinMapSize) {
    throw ParameterError("map size must be at least " + std::to_string(kMinMapSize) + ", got " + std::to_string(size));
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

  const auto maps = generate_dataset(size, seed);
  json manifest;
  manifest["size"] = size;
  manifest["seed"] = seed;
  manifest["files"] = json::array();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string name = std::to_string(size) + "x" + std::to_string(size) + "_" + std::to_string(i) + ".map";
    io::write_file(fs::path(out_dir) / name, io::format_map(maps[i]));
    manifest["files"].push_back(name);
  }
  io::write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << maps.size() << " maps to " << out_dir << "\n";
  return kOk;
}

int cmd_solve(const InstanceFlags& inst_flags, const ColonyFlags& flags, const std::string& out_path,
              std::ostream& out) {
  const auto params = make_params(flags);
  const Instance instance = load_instance(inst_flags);

  std::optional<Path> path;
  double elapsed = 0.0;
  bool success = false;
  if (!params) {
    try {
      const auto result = astar(instance);
      path = result.path;
      elapsed = result.elapsed;
      success = true;
    } catch (const NoPathError&) {
    }
  } else {
    const auto result = run_colony(instance, *params);
    path = result.best_path;
    elapsed = result.elapsed;
    success = result.succeeded;
  }

  out << "cost=" << (success ? io::format_number(path->cost) : "none")
      << " turns=" << (success ? std::to_string(path->turns) : "none") << " time_s=" << io::format_number(elapsed)
      << " success=" << (success ? "true" : "false") << "\n";
  if (!out_path.empty() && success) io::write_file(out_path, path_json(*path).dump(2) + "\n");
  return success ? kOk : kNoPath;
}

int cmd_export_pheromone(const InstanceFlags& inst_flags, const ColonyFlags& flags, const std::string& stage,
                         const std::string& out_path, std::ostream& out) {
  if (stage != "initial" && stage != "final") throw ParameterError("--dump-pheromone must be initial or final");
  if (out_path.empty()) throw ParameterError("--out is required");
  const auto params = make_params(flags);
  if (!params) throw ParameterError("A* has no pheromone field; choose a colony algorithm");
  const Instance instance = load_instance(inst_flags);

  std::optional<PheromoneField> snapshot;
  if (stage == "initial") {
    snapshot = params->variant == Variant::PFACO ? adpi_init(instance) : initial_field(instance.map(), *params);
  } else {
    RunHooks hooks;
    hooks.on_final = [&snapshot](const PheromoneField& f) { snapshot = f; };
    run_colony(instance, *params, hooks);
  }

  fs::path csv_path(out_path);
  fs::path pgm_path = csv_path;
  pgm_path.replace_extension(".pgm");
  io::write_file(csv_path, io::pheromone_csv(*snapshot));
  io::write_file(pgm_path, io::pheromone_pgm(*snapshot));
  out << "wrote " << csv_path.string() << " and " << pgm_path.string() << "\n";
  return kOk;
}

struct BenchFlags {
  std::string dataset_dir;
  int size = 0;
  std::string configs = "astar,as-15-10,pfaco-15-10";
  int instances = 100;
  int repeats = 1;
  std::uint64_t seed = 0;
  std::optional<double> timeout_s;
  std::optional<double> alpha, beta, rho, q;
  std::string out_dir;
  std::string format;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  auto configs = parse_algo_list(f.configs);
  for (auto& c : configs) {
    if (c.is_oracle()) continue;
    if (f.alpha) c.params->alpha = *f.alpha;
    if (f.beta) c.params->beta = *f.beta;
    if (f.rho) c.params->rho = *f.rho;
    if (f.q) c.params->q = *f.q;
    c.params->validate();
  }
  if (f.instances < 1) throw ParameterError("--instances must be >= 1");
  if (f.repeats < 1) throw ParameterError("--repeats must be >= 1");
  if (f.timeout_s && !(*f.timeout_s > 0.0)) throw ParameterError("--timeout-s must be > 0");
  if (!f.format.empty() && f.format != "csv" && f.format != "json") throw ParameterError("--format must be csv or json");
  if (f.out_dir.empty()) throw ParameterError("--out is required");
  if (f.dataset_dir.empty() == (f.size == 0)) throw ParameterError("give exactly one of --dataset or --size");

  std::vector<GridMap> maps;
  std::string dataset_id;
  if (!f.dataset_dir.empty()) {
    const fs::path dir(f.dataset_dir);
    json manifest;
    try {
      manifest = json::parse(io::read_file(dir / "manifest.json"));
    } catch (const json::exception& e) {
      throw ParseError((dir / "manifest.json").string(), 1, e.what());
    }
    for (const auto& name : manifest.at("files")) maps.push_back(io::load_map(dir / name.get<std::string>()));
    dataset_id = dir.filename().string();
    if (dataset_id.empty()) dataset_id = dir.parent_path().filename().string();
  } else {
    if (f.size < kMinMapSize) throw ParameterError("map size must be at least " + std::to_string(kMinMapSize));
    maps = generate_dataset(f.size, f.seed);
    dataset_id = std::to_string(f.size) + "x" + std::to_string(f.size) + "-seed" + std::to_string(f.seed);
  }

  std::error_code ec;
  fs::create_directories(f.out_dir, ec);
  if (ec) throw IoError("cannot create " + f.out_dir + ": " + ec.message());

  BenchOptions options;
  options.dataset_id = dataset_id;
  options.timeout_seconds = f.timeout_s;
  const auto report = run_benchmark(maps, configs, f.instances, f.repeats, f.seed, options);

  const fs::path dir(f.out_dir);
  if (f.format.empty() || f.format == "csv") io::write_file(dir / "report.csv", io::report_csv(report));
  if (f.format.empty() || f.format == "json") io::write_file(dir / "report.json", io::report_json(report));
  io::write_file(dir / "curves.csv", io::curves_csv(report));
  io::write_file(dir / "timing.csv", io::timing_csv(report));
  out << "dataset " << dataset_id << ", " << f.instances << " instances x " << f.repeats << " repeats\n"
      << io::report_table(report);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid path planning with ant colony optimization"};
  app.require_subcommand(1);

  int gen_size = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-maps", "generate the ten-map dataset for one size");
  gen->add_option("--size", gen_size, "map side length")->capture_default_str();
  gen->add_option("--seed", gen_seed, "generation seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output directory")->required();

  InstanceFlags solve_inst;
  ColonyFlags solve_colony;
  std::string solve_out;
  auto* solve = app.add_subcommand("solve", "plan one instance");
  add_instance_flags(solve, solve_inst);
  add_colony_flags(solve, solve_colony);
  solve->add_option("--out", solve_out, "write the path as JSON");

  InstanceFlags exp_inst;
  ColonyFlags exp_colony;
  std::string exp_stage = "initial";
  std::string exp_out;
  auto* exp = app.add_subcommand("export-pheromone", "write a pheromone heatmap (CSV + PGM)");
  add_instance_flags(exp, exp_inst);
  add_colony_flags(exp, exp_colony);
  exp->add_option("--dump-pheromone", exp_stage, "initial or final")->capture_default_str();
  exp->add_option("--out", exp_out, "CSV path; the PGM goes next to it")->required();

  BenchFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
  bench->add_option("--dataset", bench_flags.dataset_dir, "directory written by gen-maps");
  bench->add_option("--size", bench_flags.size, "generate the dataset in memory instead");
  bench->add_option("--configs", bench_flags.configs, "comma-separated labels")->capture_default_str();
  bench->add_option("--instances", bench_flags.instances, "random instances")->capture_default_str();
  bench->add_option("--repeats", bench_flags.repeats, "seeds per instance")->capture_default_str();
  bench->add_option("--seed", bench_flags.seed, "master seed")->capture_default_str();
  bench->add_option("--timeout-s", bench_flags.timeout_s, "per-run wall clock budget (default 120)");
  bench->add_option("--alpha", bench_flags.alpha, "override alpha for every colony config");
  bench->add_option("--beta", bench_flags.beta, "override beta for every colony config");
  bench->add_option("--rho", bench_flags.rho, "override rho for every colony config");
  bench->add_option("--q", bench_flags.q, "override Q for every colony config");
  bench->add_option("--out", bench_flags.out_dir, "output directory")->required();
  bench->add_option("--format", bench_flags.format, "csv or json (default: both)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen_maps(gen_size, gen_seed, gen_out, out);
    if (*solve) return cmd_solve(solve_inst, solve_colony, solve_out, out);
    if (*exp) return cmd_export_pheromone(exp_inst, exp_colony, exp_stage, exp_out, out);
    if (*bench) return cmd_bench(bench_flags, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const NoPathError& e) {
    err << "error: " << e.what() << "\n";
    return kNoPath;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"planner"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace antpath::cli
