#include <doctest.h>

#include <filesystem>
#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "antpath/errors.hpp"
#include "antpath/io.hpp"
#include "antpath/pfaco.hpp"

using namespace antpath;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("antpath_test_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("map text round trip") {
  for (int size : {10, 15, 20}) {
    for (const auto& map : generate_dataset(size, 5)) CHECK(io::parse_map(io::format_map(map)) == map);
  }
  GridMap small(3, 2);
  small.set_blocked({1, 0});
  CHECK(io::format_map(small) == "3 2\n.#.\n...\n");
}

TEST_CASE("map parse errors name the line") {
  auto line_of = [](const std::string& text) {
    try {
      io::parse_map(text, "m.map");
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("x 3\n...\n") == 1);
  CHECK(line_of("3 2\n...\n.?.\n") == 3);
  CHECK(line_of("3 2\n....\n...\n") == 2);
  CHECK(line_of("3 3\n...\n...\n") == 4);
  CHECK(line_of("1 1\n.\n") == 1);
  try {
    io::parse_map("3 2\n...\n.?.\n", "m.map");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("m.map:3") != std::string::npos);
  }
}

TEST_CASE("instance JSON inline and by path") {
  const fs::path dir = scratch_dir("instance");
  GridMap map(4, 4);
  map.set_blocked({2, 2});
  io::write_file(dir / "m.map", io::format_map(map));

  const Instance by_path = io::parse_instance_json(R"({"map": "m.map", "start": [0, 0], "goal": [3, 3]})", dir);
  CHECK(by_path.map() == map);
  CHECK(by_path.goal() == Node{3, 3});

  const Instance inline_map = io::parse_instance_json(io::format_instance_json(by_path));
  CHECK(inline_map == by_path);

  io::write_file(dir / "i.json", R"({"map": "m.map", "start": [1, 0], "goal": [0, 3]})");
  CHECK(io::load_instance(dir / "i.json").start() == Node{1, 0});

  CHECK_THROWS_AS(io::parse_instance_json(R"({"map": "m.map", "start": [2, 2], "goal": [3, 3]})", dir),
                  InvalidInstanceError);
  CHECK_THROWS_AS(io::parse_instance_json(R"({"map": "m.map", "start": [0, 0]})", dir), ParseError);
  CHECK_THROWS_AS(io::parse_instance_json("{not json", dir), ParseError);
  CHECK_THROWS_AS(io::parse_instance_json(R"({"map": "missing.map", "start": [0, 0], "goal": [1, 1]})", dir), IoError);
  fs::remove_all(dir);
}

TEST_CASE("file errors carry the path") {
  try {
    io::read_file("/nonexistent/dir/x.map");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/x.map") != std::string::npos);
  }
  CHECK_THROWS_AS(io::write_file("/proc/forbidden/x.txt", "x"), IoError);
}

TEST_CASE("format_number") {
  CHECK(io::format_number(12.727922061357855) == "12.7279");
  CHECK(io::format_number(100.0) == "100");
  CHECK(io::format_number(std::nullopt).empty());
  CHECK(io::format_number(std::nan("")).empty());
}

TEST_CASE("pheromone exports") {
  SUBCASE("ADPI initial field peaks at the goal") {
    const Instance inst(GridMap(10, 10), {0, 0}, {9, 9});
    const auto rows = parse_csv(io::pheromone_csv(adpi_init(inst)));
    REQUIRE(rows.size() == 10);
    REQUIRE(rows[0].size() == 10);
    CHECK(rows[9][9] == doctest::Approx(2.0));
    double max = 0;
    for (const auto& r : rows)
      for (double v : r) max = std::max(max, v);
    CHECK(max == doctest::Approx(2.0));
  }
  SUBCASE("uniform field with an obstacle") {
    GridMap map(5, 4);
    map.set_blocked({3, 1});
    const auto rows = parse_csv(io::pheromone_csv(PheromoneField(map, 1.0)));
    REQUIRE(rows.size() == 4);
    REQUIRE(rows[1].size() == 5);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 5; ++x) CHECK(rows[y][x] == (map.blocked({x, y}) ? 0.0 : 1.0));
  }
  SUBCASE("PGM is scaled to 255") {
    const Instance inst(GridMap(6, 5), {0, 0}, {5, 4});
    const std::string pgm = io::pheromone_pgm(adpi_init(inst));
    std::istringstream in(pgm);
    std::string magic, token;
    in >> magic;
    CHECK(magic == "P2");
    std::vector<int> values;
    while (in >> token) {
      if (token[0] == '#') {
        std::getline(in, token);
        continue;
      }
      values.push_back(std::stoi(token));
    }
    REQUIRE(values.size() == 3 + 30);
    CHECK(values[0] == 6);
    CHECK(values[1] == 5);
    CHECK(values[2] == 255);
    CHECK(*std::max_element(values.begin() + 3, values.end()) == 255);
    CHECK(values.back() == 255);
  }
}

TEST_CASE("report serialization") {
  const std::vector<GridMap> dataset{GridMap(8, 8)};
  const auto configs = parse_algo_list("astar,as-5-4,pfaco-5-4");
  const auto report = run_benchmark(dataset, configs, 3, 2, 1);

  const std::string csv = io::report_csv(report);
  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  CHECK(header.rfind("config,", 0) == 0);
  int data_rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++data_rows;
  CHECK(data_rows == 3);

  const auto json = nlohmann::json::parse(io::report_json(report));
  CHECK(json["configs"].size() == 3);
  CHECK(json["rows"].size() == 3);
  CHECK(json["seeds"].size() == 6);
  CHECK(json["runs"].size() == 18);
  CHECK(json["curves"].size() == 2);
  CHECK(json["curves"]["PFACO-5-4"].size() == 4);

  const std::string curves = io::curves_csv(report);
  CHECK(curves.rfind("iteration,AS-5-4,PFACO-5-4\n", 0) == 0);
  CHECK(std::count(curves.begin(), curves.end(), '\n') == 5);

  CHECK(io::timing_csv(report).rfind("config,", 0) == 0);
  CHECK(io::report_table(report).find("PFACO-5-4") != std::string::npos);

  CHECK(io::report_csv(report) == io::report_csv(run_benchmark(dataset, configs, 3, 2, 1)));
}
