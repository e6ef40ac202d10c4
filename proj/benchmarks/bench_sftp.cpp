#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "sftp/json_io.hpp"
#include "sftp/routing.hpp"
#include "sftp/simulator.hpp"

namespace {

// Ring plus random chords, weights 1..4, threshold 5.
sftp::CoverageGraph random_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> weight(1, 4);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<sftp::NodeId> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
  std::vector<sftp::Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> used;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    if (used.emplace(a, b).second) edges.push_back({nodes[a], nodes[b], weight(rng)});
  };
  for (std::size_t i = 0; i < n; ++i) add(i, (i + 1) % n);
  for (std::size_t i = 0; i < 2 * n; ++i) add(pick(rng), pick(rng));
  return sftp::apply_threshold(sftp::build_adjacency(nodes, edges), 5);
}

void BM_Threshold(benchmark::State& state) {
  const sftp::Scenario s = sftp::load_scenario(SFTP_SCENARIO_DIR "/paper.json");
  for (auto _ : state) {
    benchmark::DoNotOptimize(sftp::apply_threshold(sftp::build_adjacency(s.nodes, s.edges), s.threshold));
  }
}
BENCHMARK(BM_Threshold);

void BM_Discovery(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sftp::CoverageGraph g = random_graph(n, 11);
  const std::string dest = "n" + std::to_string(n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(sftp::flood_route_request(g, "n0", dest));
}
BENCHMARK(BM_Discovery)->RangeMultiplier(4)->Range(8, 512);

void BM_RunWorkedExample(benchmark::State& state) {
  const sftp::Scenario s = sftp::load_scenario(SFTP_SCENARIO_DIR "/paper.json");
  for (auto _ : state) benchmark::DoNotOptimize(sftp::run_scenario(s));
}
BENCHMARK(BM_RunWorkedExample);

}  // namespace

BENCHMARK_MAIN();
