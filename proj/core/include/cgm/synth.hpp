// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cgm/campaign.hpp"
#include "cgm/detector.hpp"
#include "cgm/graph.hpp"
#include "cgm/order_spec.hpp"

namespace cgm::synth {

/// Relative weights of the root-cause category a planted edge targets,
/// indexed by RootCauseCategory.
using TagMix = std::array<double, kRootCauseCategories>;

/// 45/30/15/10: static-init, invokedynamic-lambda, reflection, lifecycle.
inline constexpr TagMix kDefaultTagMix = {45, 30, 15, 10, 0};

struct Params {
  std::size_t n_nodes = 60;
  std::size_t n_edges = 150;
  std::size_t chain_length = 3;
  std::size_t violations_per_step = 2;
  double fp_ratio = 0.5;     // share of base edges labeled false positive
  double prune_ratio = 0.5;  // share of surviving FP edges pruned per step
  bool noise = true;
  TagMix tag_mix = kDefaultTagMix;
};

struct NoiseRecord {
  GraphFormat format = GraphFormat::canonical_json;
  Flavor flavor = Flavor::canonical;
  std::size_t hashed_labels = 0;   // labels given a `_<hex>` suffix
  std::size_t split_nodes = 0;     // methods emitted as two hash variants
  std::size_t metadata_nodes = 0;  // Cluster nodes injected
};

struct StepTruth {
  Variant variant;
  EdgeSet pruned_fp;  // removed relative to the previous step
  EdgeSet added;      // planted violations relative to the previous step
};

/// The ground truth the generator knows and the detector must not see.
struct PlantedTruth {
  std::uint64_t seed = 0;
  Params params;
  std::string program;
  EdgeSet base_edges;
  EdgeSet true_edges;
  EdgeSet false_edges;
  std::vector<StepTruth> steps;  // steps[0] is the base graph, nothing pruned or added
  std::vector<NoiseRecord> noise;
  std::vector<RootCauseCategory> planted_categories;  // one per added edge, generation order

  /// Step i's edge set rebuilt from base, pruned and added sets.
  EdgeSet edges_at(std::size_t step) const;
};

struct RenderedGraph {
  Variant variant;
  GraphFormat format = GraphFormat::canonical_json;
  Flavor flavor = Flavor::canonical;
  std::string file_name;
  std::string text;
};

/// A refinement chain: graphs[i] belongs to algorithm `R<i>` and
/// R<i+1> >= R<i>.
struct Family {
  std::string program;
  std::vector<CallGraph> graphs;  // noiseless
  std::vector<RenderedGraph> rendered;
  PlantedTruth truth;
};

inline constexpr const char* kFramework = "Synth";

/// Order declaration for a chain of `chain_length + 1` variants.
OrderDeclaration chain_declaration(std::size_t chain_length);

/// Builds a base graph and a chain where each step prunes only false
/// positives and plants exactly `violations_per_step` fresh edges. Logical
/// content depends only on the seed; noise uses an independent stream, so
/// toggling it never changes the planted sets. Throws ParamError.
Family generate_family(std::uint64_t seed, const Params& params, std::string program = "p0");

/// Detector under test: (more precise graph, less precise graph) -> violations.
using DetectorFn = std::function<EdgeSet(const CallGraph&, const CallGraph&)>;

struct PairReport {
  std::size_t hi = 0;
  std::size_t lo = 0;
  EdgeSet reported;
};

/// Reads back every rendered graph, normalizes it, and runs the detector on
/// every ordered pair (hi > lo) of the chain.
std::vector<PairReport> run_detector(const Family& family, const DetectorFn& detector);

struct Verdict {
  bool pass = true;
  std::vector<std::string> mismatches;
};

/// Recomputes every pair's violations by set difference on the planted sets
/// and compares. Also checks that planted-free steps keep TP fixed and only
/// shrink FP.
Verdict oracle_check(const Family& family, const std::vector<PairReport>& results);

/// truth.json content: seed, params, planted sets and expected per-pair
/// violation counts.
std::string truth_json(const std::vector<Family>& families);

/// Writes every rendered graph, `truth.json`, `spec.json` and a ready-to-run
/// `manifest.json` into `dir`.
void write_corpus(const std::vector<Family>& families, const std::filesystem::path& dir);

/// `count` families with seeds derived from `seed`, programs p000, p001, ...
std::vector<Family> generate_corpus(std::uint64_t seed, const Params& params, std::size_t count);

}  // namespace cgm::synth
