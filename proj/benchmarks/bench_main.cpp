// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "cgm/campaign.hpp"
#include "cgm/detector.hpp"
#include "cgm/ingest.hpp"
#include "cgm/normalize.hpp"
#include "cgm/order_spec.hpp"
#include "cgm/synth.hpp"

namespace {

cgm::EdgeSet chain(std::size_t from, std::size_t to) {
  cgm::EdgeSet out;
  for (std::size_t i = from; i < to; ++i) {
    out.insert({{"b.p", "C" + std::to_string(i % 97), "m" + std::to_string(i), {}},
                {"b.p", "C" + std::to_string((i + 1) % 97), "m" + std::to_string(i + 1), {"int"}}});
  }
  return out;
}

void BM_Jaccard(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto a = chain(0, n), b = chain(n / 2, n + n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(cgm::jaccard(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n));
}
BENCHMARK(BM_Jaccard)->Range(1 << 8, 1 << 16);

void BM_DetectViolations(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  cgm::CallGraph hi, lo;
  hi.edges = chain(0, n);
  lo.edges = chain(n / 4, n);
  for (auto _ : state) benchmark::DoNotOptimize(cgm::detect_violations(hi, lo));
}
BENCHMARK(BM_DetectViolations)->Range(1 << 8, 1 << 16);

void BM_NormalizeSootDot(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  cgm::RawGraph raw;
  std::mt19937_64 rng(1);
  for (std::size_t i = 0; i < n; ++i) {
    auto id = "n" + std::to_string(i);
    raw.nodes[id] = "<org.bench.C" + std::to_string(i % 50) + ": java.util.List m" + std::to_string(i) +
                    "(java.lang.String,int[])>_" + std::to_string(100000 + rng() % 900000);
  }
  for (std::size_t i = 0; i < 2 * n; ++i) raw.edges.emplace("n" + std::to_string(rng() % n), "n" + std::to_string(rng() % n));
  auto text = cgm::write_dot(raw);
  for (auto _ : state) {
    auto g = cgm::normalize(cgm::read_dot_subset(text, cgm::Flavor::soot), "p", {});
    benchmark::DoNotOptimize(g.edges.size());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_NormalizeSootDot)->Range(1 << 6, 1 << 12);

void BM_ProductOrderDefaultSpec(benchmark::State& state) {
  const auto& spec = cgm::default_spec();
  for (auto _ : state) benchmark::DoNotOptimize(cgm::product_order(spec).size());
}
BENCHMARK(BM_ProductOrderDefaultSpec);

void BM_LoadDefaultSpec(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cgm::load_spec(cgm::default_spec_json()).variants().size());
}
BENCHMARK(BM_LoadDefaultSpec);

void BM_SynthFamilyAndOracle(benchmark::State& state) {
  cgm::synth::Params p;
  p.n_nodes = static_cast<std::size_t>(state.range(0));
  p.n_edges = 3 * p.n_nodes;
  p.chain_length = 4;
  p.violations_per_step = 10;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto fam = cgm::synth::generate_family(++seed, p);
    auto results = cgm::synth::run_detector(
        fam, [](const cgm::CallGraph& hi, const cgm::CallGraph& lo) { return cgm::detect_violations(hi, lo); });
    benchmark::DoNotOptimize(cgm::synth::oracle_check(fam, results).pass);
  }
}
BENCHMARK(BM_SynthFamilyAndOracle)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
