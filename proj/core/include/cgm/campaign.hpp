// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cgm/detector.hpp"
#include "cgm/graph.hpp"
#include "cgm/normalize.hpp"
#include "cgm/order_spec.hpp"

namespace cgm {

using ExactRatio = boost::multiprecision::cpp_rational;

/// The testing dimensions a campaign can enumerate.
enum class Dimension {
  config_intra,        // same framework and algorithm, ordered configurations
  alg_intra_same_cfg,  // same framework and configuration, ordered algorithms
  alg_cfg_hybrid,      // same framework, both components differ
  cross_framework,     // product-order pairs spanning frameworks
  equivalence,         // declared equivalent variants
};

inline constexpr std::array<Dimension, 5> kAllDimensions = {
    Dimension::config_intra, Dimension::alg_intra_same_cfg, Dimension::alg_cfg_hybrid,
    Dimension::cross_framework, Dimension::equivalence};

std::string_view to_string(Dimension dimension);
std::optional<Dimension> dimension_from_string(std::string_view text);

struct ManifestEntry {
  std::string program;
  Variant variant;
  std::filesystem::path file;  // resolved against the manifest directory
  GraphFormat format = GraphFormat::canonical_json;
  Flavor flavor = Flavor::canonical;
};

/// Binds files to (program, variant). `spec` empty means the bundled spec.
struct Manifest {
  std::filesystem::path spec;
  std::vector<std::string> corpus;
  std::vector<ManifestEntry> entries;
};

/// `{"spec":"path","corpus":[..],"entries":[{program,framework,algorithm,
/// config,file,format,flavor}]}`. Relative paths resolve against
/// `base_dir`. Throws ManifestError.
Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);
std::string write_manifest(const Manifest& manifest, const std::filesystem::path& base_dir);

/// Ordered variant pairs of one dimension, as pair-domain relations (more
/// precise side on the left for precision). When `available` is given, only
/// pairs whose variants both appear in it are returned.
std::vector<Relation> enumerate_pairs(const OrderSpec& spec, Dimension dimension,
                                      const std::vector<Variant>* available = nullptr);

/// One table row: a variant pair aggregated over the corpus.
struct PairRow {
  Dimension dimension = Dimension::config_intra;
  Relation relation;
  // Display orientation: less precise → more precise for precision rows,
  // left → right for equivalence rows.
  Variant from;
  Variant to;
  ExactRatio macro_similarity{0};  // mean of per-program Jaccard
  ExactRatio micro_similarity{0};  // Jaccard of program-namespaced unions
  std::size_t violations = 0;
  std::size_t compared = 0;
  std::vector<std::string> skipped;  // failed inputs or missing files
  std::array<std::size_t, kRootCauseCategories> tags{};

  bool failed() const { return compared == 0; }
};

struct CampaignReport {
  std::vector<PairRow> rows;                // sorted by (dimension, from, to)
  std::vector<ComparisonResult> details;    // per program, sorted
  std::array<std::size_t, kRootCauseCategories> tags{};
  std::size_t total_violations = 0;
  std::vector<std::string> diagnostics;     // demoted per-file errors
};

struct CampaignOptions {
  unsigned jobs = 1;  // comparison worker threads; output does not depend on it
  NormalizeOptions normalize;
};

/// Loads the manifest's spec (bundled one when unset), reads and normalizes
/// every entry, then compares every enumerated pair on every program that has
/// files for both sides. Unreadable graph files demote to skipped.
/// Throws ManifestError for an unreadable spec or an invalid manifest.
CampaignReport run_campaign(const Manifest& manifest, const std::vector<Dimension>& dimensions,
                            const CampaignOptions& options = {});

/// Same, against an already-loaded spec.
CampaignReport run_campaign(const Manifest& manifest, const OrderSpec& spec,
                            const std::vector<Dimension>& dimensions,
                            const CampaignOptions& options = {});

enum class ReportFormat { json, csv, markdown };
std::optional<ReportFormat> report_format_from_string(std::string_view text);

/// Table cell in the `Similarity (%) / #Violations` convention: "94.3%/1",
/// or "Fail" when no program could be compared.
std::string render_cell(const PairRow& row);

std::string render_report(const CampaignReport& report, ReportFormat format);

}  // namespace cgm
