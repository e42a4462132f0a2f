#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "antpath/bench.hpp"
#include "antpath/errors.hpp"
#include "antpath/search.hpp"

using namespace antpath;

namespace {

// Serpentine maze: horizontal walls every other row, alternating gaps at the ends.
GridMap serpentine(int size) {
  GridMap map(size, size);
  for (int y = 1; y < size; y += 2)
    for (int x = 0; x < size; ++x) {
      const bool gap = ((y / 2) % 2 == 0) ? x == size - 1 : x == 0;
      if (!gap) map.set_blocked({x, y});
    }
  return map;
}

double two_sided_exact_brute(const std::vector<double>& a, const std::vector<double>& b) {
  // Enumerates every assignment of ranks to sample a.
  std::vector<double> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  const std::size_t n = a.size(), total = all.size();
  auto u_of = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
    double u = 0;
    for (double x : xs)
      for (double y : ys) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
    return u;
  };
  const double u_obs = u_of(a, b);
  const double mean = static_cast<double>(n * (total - n)) / 2.0;
  std::vector<int> mask(total, 0);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(n), 1);
  std::sort(mask.begin(), mask.end());
  long extreme = 0, count = 0;
  do {
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < total; ++k) (mask[k] ? xs : ys).push_back(all[k]);
    if (std::abs(u_of(xs, ys) - mean) >= std::abs(u_obs - mean) - 1e-9) ++extreme;
    ++count;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return static_cast<double>(extreme) / static_cast<double>(count);
}

}  // namespace

TEST_CASE("path_improve") {
  CHECK(path_improve(6.157, 5.766) == doctest::Approx(0.0678).epsilon(1e-3));
  CHECK(path_improve(5.068, 5.013) == doctest::Approx(0.01097).epsilon(1e-3));
  CHECK(100.0 * path_improve(5.068, 5.013) == doctest::Approx(1.09).epsilon(0.01));
  CHECK(path_improve(4.2, 4.2) == 0.0);
  CHECK_THROWS_AS(path_improve(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(path_improve(1.0, -2.0), ParameterError);
}

TEST_CASE("mann_whitney_u examples") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const auto r = mann_whitney_u(a, b);
  CHECK(r.u == 0.0);
  CHECK(r.exact);
  CHECK(r.p_value == doctest::Approx(0.1).epsilon(1e-12));

  const std::vector<double> same{5, 5, 5};
  CHECK(mann_whitney_u(same, same).p_value == 1.0);
}

TEST_CASE("exact p-values agree with brute-force enumeration") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
    std::vector<double> a(n), b(m);
    const double shift = g(rng);
    for (auto& x : a) x = g(rng) + shift;
    for (auto& y : b) y = g(rng);
    const auto r = mann_whitney_u(a, b);
    REQUIRE(r.exact);
    CHECK(r.p_value == doctest::Approx(two_sided_exact_brute(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("mann_whitney_u symmetry and shift invariance") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 25, m = 2 + rng() % 25;
    std::vector<double> a(n), b(m);
    for (auto& x : a) x = std::round(u(rng) * 4) / 4;  // allows ties
    for (auto& y : b) y = std::round(u(rng) * 4) / 4;
    const auto ab = mann_whitney_u(a, b);
    const auto ba = mann_whitney_u(b, a);
    CHECK(std::abs(ab.p_value - ba.p_value) <= 1e-12);
    CHECK(ab.u + ba.u == doctest::Approx(static_cast<double>(n * m)));
    CHECK(ab.p_value >= 0.0);
    CHECK(ab.p_value <= 1.0);
    const double c = 3.0;  // exact in binary, keeps tie structure
    for (auto& x : a) x += c;
    for (auto& y : b) y += c;
    const auto shifted = mann_whitney_u(a, b);
    CHECK(shifted.u == ab.u);
    CHECK(shifted.p_value == ab.p_value);
  }
}

TEST_CASE("mann_whitney_u is calibrated under the null") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> ps;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(30), b(30);
    for (auto& x : a) x = u(rng);
    for (auto& y : b) y = u(rng);
    ps.push_back(mann_whitney_u(a, b).p_value);
  }
  std::sort(ps.begin(), ps.end());
  double d = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const double lo = static_cast<double>(k) / ps.size(), hi = static_cast<double>(k + 1) / ps.size();
    d = std::max({d, std::abs(ps[k] - lo), std::abs(hi - ps[k])});
  }
  CHECK(d <= 0.05);
}

TEST_CASE("summarize") {
  SUBCASE("singleton") {
    const std::vector<RunRecord> runs{{0, 0, 0, true, 5.0, 2, 0.1}};
    const auto row = summarize(runs);
    CHECK(*row.average_path == 5.0);
    CHECK(*row.sd_p == 0.0);
    CHECK(*row.time_mean_s == doctest::Approx(0.1));
    CHECK(*row.turning_mean == 2.0);
    CHECK(row.success_rate_pct == 100.0);
  }
  SUBCASE("two-point population std") {
    const std::vector<RunRecord> runs{{0, 0, 0, true, 3.0, 0, 1.0}, {0, 1, 0, true, 5.0, 0, 3.0}};
    const auto row = summarize(runs);
    CHECK(*row.average_path == 4.0);
    CHECK(*row.sd_p == 1.0);
    CHECK(*row.sd_t == 1.0);
  }
  SUBCASE("no successes") {
    const std::vector<RunRecord> runs{{0, 0, 0, false, 0.0, 0, 1.0}};
    const auto row = summarize(runs);
    CHECK_FALSE(row.average_path);
    CHECK_FALSE(row.sd_p);
    CHECK(row.success_rate_pct == 0.0);
  }
  SUBCASE("empty list") { CHECK_THROWS_AS(summarize(std::span<const RunRecord>{}), ParameterError); }
  SUBCASE("mixed runs and permutation invariance") {
    std::mt19937_64 rng(93);
    std::uniform_real_distribution<double> u(10.0, 20.0);
    std::vector<RunRecord> runs;
    for (std::size_t k = 0; k < 100; ++k) {
      RunRecord r;
      r.instance = k;
      r.succeeded = k % 14 != 3;  // 7 failures
      r.cost = r.succeeded ? u(rng) : 0.0;
      r.turns = static_cast<int>(rng() % 6);
      r.elapsed = u(rng) / 100;
      runs.push_back(r);
    }
    // Independent recount.
    double sum = 0, sq = 0;
    int ok = 0;
    for (const auto& r : runs)
      if (r.succeeded) {
        ++ok;
        sum += r.cost;
      }
    const double mean = sum / ok;
    for (const auto& r : runs)
      if (r.succeeded) sq += (r.cost - mean) * (r.cost - mean);
    const auto row = summarize(runs);
    CHECK(ok == 93);
    CHECK(row.success_rate_pct == 93.0);
    CHECK(*row.average_path == doctest::Approx(mean).epsilon(1e-12));
    CHECK(*row.sd_p == doctest::Approx(std::sqrt(sq / ok)).epsilon(1e-12));

    std::shuffle(runs.begin(), runs.end(), rng);
    const auto again = summarize(runs);
    CHECK(*again.average_path == doctest::Approx(*row.average_path).epsilon(1e-12));
    CHECK(*again.sd_p == doctest::Approx(*row.sd_p).epsilon(1e-12));
    CHECK(*again.turning_mean == doctest::Approx(*row.turning_mean).epsilon(1e-12));
  }
}

TEST_CASE("algorithm labels") {
  CHECK(parse_algo_config("astar").is_oracle());
  CHECK(parse_algo_config("A*").label == "A*");
  const auto p = parse_algo_config("pfaco-30-20");
  CHECK(p.label == "PFACO-30-20");
  REQUIRE(p.params);
  CHECK(p.params->ants == 30);
  CHECK(p.params->iterations == 20);
  CHECK(p.params->rho == 0.2);
  CHECK(parse_algo_config("Elite-15-10").label == "EliteAS-15-10");
  CHECK(parse_algo_config("mmaco-15-10").params->variant == Variant::MMAS);
  CHECK(parse_algo_config("AS-15-10").params->rho == 0.25);
  CHECK_THROWS_AS(parse_algo_config("pfaco-0-10"), ParameterError);
  CHECK_THROWS_AS(parse_algo_config("dijkstra"), ParameterError);
  CHECK_THROWS_AS(parse_algo_config("pfaco-10"), ParameterError);
  CHECK(parse_algo_list("astar,as-15-10,pfaco-15-10").size() == 3);
}

TEST_CASE("run_benchmark on empty maps") {
  const std::vector<GridMap> dataset{GridMap(10, 10)};
  const std::vector<AlgoConfig> configs{oracle_config(), colony_config(Variant::PFACO, 15, 10)};
  const auto report = run_benchmark(dataset, configs, 10, 1, 7);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].success_rate_pct == 100.0);
  CHECK(report.rows[1].success_rate_pct == 100.0);
  CHECK(*report.rows[1].average_path >= *report.rows[0].average_path - 1e-9);
  CHECK(report.reference == std::optional<std::size_t>{0});
  CHECK(report.rows[1].p_value.has_value());
  CHECK(report.curves[1].size() == 10);
  CHECK(report.curves[0].empty());
  for (const auto& r : report.runs) {
    const auto& rec = report.instances[r.instance];
    REQUIRE(rec.oracle_cost);
    if (r.succeeded) CHECK(r.cost >= *rec.oracle_cost - 1e-9);
  }
}

TEST_CASE("run_benchmark is deterministic and independent of thread count") {
  const auto dataset = generate_dataset(10, 3);
  const auto configs = parse_algo_list("astar,as-8-5,eliteas-8-5,mmas-8-5,pfaco-8-5,pfaco-10-8");
  BenchOptions one;
  one.threads = 1;
  BenchOptions many;
  many.threads = 3;
  const auto a = run_benchmark(dataset, configs, 6, 2, 99, one);
  const auto b = run_benchmark(dataset, configs, 6, 2, 99, many);
  CHECK(a.seeds == b.seeds);
  REQUIRE(a.runs.size() == b.runs.size());
  CHECK(a.runs.size() == configs.size() * 6 * 2);
  for (std::size_t k = 0; k < a.runs.size(); ++k) {
    CHECK(a.runs[k].succeeded == b.runs[k].succeeded);
    CHECK(a.runs[k].cost == b.runs[k].cost);
    CHECK(a.runs[k].turns == b.runs[k].turns);
  }
  CHECK(a.curves == b.curves);
  CHECK(a.reference == b.reference);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].average_path == b.rows[k].average_path);
    CHECK(a.rows[k].p_value == b.rows[k].p_value);
    CHECK(a.rows[k].path_improve_pct == b.rows[k].path_improve_pct);
  }
  // PFACO-10-8 pairs with the smaller PFACO-8-5 budget.
  CHECK(a.rows[5].path_improve_pct.has_value());
  CHECK_FALSE(a.rows[4].path_improve_pct.has_value());
}

TEST_CASE("run_benchmark records timeouts without aborting") {
  const GridMap maze = serpentine(20);
  const std::vector<Instance> instances{Instance(maze, {0, 0}, {0, 18}), Instance(maze, {19, 0}, {19, 18})};
  const std::vector<AlgoConfig> configs{oracle_config(), colony_config(Variant::PFACO, 30, 20)};
  BenchOptions options;
  options.timeout_seconds = 0.001;
  const auto report = run_benchmark(instances, configs, 2, 5, options);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].success_rate_pct == 100.0);
  CHECK(report.rows[1].success_rate_pct < 100.0);
  CHECK(report.runs.size() == 2 * 2 * 2);
}

TEST_CASE("unreachable instances count as failures for every solver") {
  GridMap map(6, 6);
  for (int x = 0; x < 6; ++x) map.set_blocked({x, 3});
  const std::vector<Instance> instances{Instance(map, {0, 0}, {5, 5})};
  const std::vector<AlgoConfig> configs{oracle_config(), colony_config(Variant::AS, 5, 3)};
  BenchOptions options;
  options.timeout_seconds = 0.5;
  const auto report = run_benchmark(instances, configs, 1, 1, options);
  CHECK(report.rows[0].success_rate_pct == 0.0);
  CHECK(report.rows[1].success_rate_pct == 0.0);
  CHECK_FALSE(report.instances[0].oracle_cost);
  CHECK_FALSE(report.reference);
}
