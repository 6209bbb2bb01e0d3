// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include "cgm/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "cgm/error.hpp"
#include "cgm/ingest.hpp"
#include "json_util.hpp"

namespace cgm {
namespace {

using detail::JsonField;
using detail::ordered_json;
namespace fs = std::filesystem;
using boost::multiprecision::cpp_int;

/// Runs fn(0..n-1) on up to `jobs` threads. Exceptions propagate (first one
/// wins) after every worker stopped.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string percent(const ExactRatio& ratio) {
  cpp_int n = boost::multiprecision::numerator(ratio);
  cpp_int d = boost::multiprecision::denominator(ratio);
  cpp_int tenths = (2000 * n + d) / (2 * d);
  cpp_int whole = tenths / 10;
  cpp_int frac = tenths % 10;
  return whole.str() + "." + frac.str();
}

std::string exact(const ExactRatio& ratio) {
  return boost::multiprecision::numerator(ratio).str() + "/" + boost::multiprecision::denominator(ratio).str();
}

std::string exact(const Rational& ratio) {
  return std::to_string(ratio.numerator()) + "/" + std::to_string(ratio.denominator());
}

ordered_json variant_json(const Variant& v) {
  ordered_json out = ordered_json::object();
  out["framework"] = v.framework;
  out["algorithm"] = v.algorithm;
  out["config"] = ordered_json::array();
  for (const auto& flag : v.config) out["config"].push_back(flag);
  return out;
}

ordered_json tags_json(const std::array<std::size_t, kRootCauseCategories>& tags) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < kRootCauseCategories; ++i) {
    out[std::string(to_string(static_cast<RootCauseCategory>(i)))] = tags[i];
  }
  return out;
}

Relation pair_relation(RelationKind kind, Variant left, Variant right, Provenance provenance) {
  Relation r;
  r.kind = kind;
  r.domain = RelationDomain::pair;
  r.left = std::move(left);
  r.right = std::move(right);
  r.provenance = provenance;
  return r;
}

}  // namespace

std::string_view to_string(Dimension dimension) {
  switch (dimension) {
    case Dimension::config_intra: return "config-intra";
    case Dimension::alg_intra_same_cfg: return "alg-intra-same-cfg";
    case Dimension::alg_cfg_hybrid: return "alg-cfg-hybrid";
    case Dimension::cross_framework: return "cross-framework";
    case Dimension::equivalence: return "equivalence";
  }
  return "config-intra";
}

std::optional<Dimension> dimension_from_string(std::string_view text) {
  for (auto d : kAllDimensions) {
    if (to_string(d) == text) return d;
  }
  if (text == "rq1") return Dimension::config_intra;
  if (text == "rq2") return Dimension::alg_intra_same_cfg;
  if (text == "rq3") return Dimension::alg_cfg_hybrid;
  if (text == "rq4") return Dimension::cross_framework;
  if (text == "rq4b") return Dimension::equivalence;
  return std::nullopt;
}

// ---- manifest ---------------------------------------------------------------

Manifest parse_manifest(std::string_view text, const fs::path& base_dir) {
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  try {
    auto doc = detail::parse_located(text);
    auto root = JsonField::root(doc);
    root.expect_object();
    Manifest m;
    if (root.has("spec")) {
      auto spec = root.at("spec").as_string();
      if (!spec.empty()) m.spec = resolve(spec);
    }
    if (root.has("corpus")) m.corpus = root.at("corpus").as_string_list();
    if (root.has("entries")) {
      auto entries = root.at("entries");
      entries.expect_array();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        auto e = entries.at(i);
        e.expect_object();
        ManifestEntry entry;
        entry.program = e.at("program").as_string();
        entry.variant.framework = e.at("framework").as_string();
        entry.variant.algorithm = e.at("algorithm").as_string();
        if (e.has("config")) {
          auto cfg = e.at("config");
          if (cfg.value().is_string()) {
            entry.variant.config = config_from_string(cfg.as_string());
          } else {
            for (auto& flag : cfg.as_string_list()) entry.variant.config.insert(std::move(flag));
          }
        }
        entry.file = resolve(e.at("file").as_string());
        if (e.has("format")) {
          auto f = format_from_string(e.at("format").as_string());
          if (!f) e.at("format").fail("unknown graph format");
          entry.format = *f;
        } else {
          entry.format = sniff_format(entry.file, "");
        }
        if (e.has("flavor")) {
          auto f = flavor_from_string(e.at("flavor").as_string());
          if (!f) e.at("flavor").fail("unknown signature flavor");
          entry.flavor = *f;
        }
        m.entries.push_back(std::move(entry));
      }
    }
    return m;
  } catch (const ManifestError&) {
    throw;
  } catch (const Error& e) {
    throw ManifestError(std::string("invalid manifest: ") + e.what());
  }
}

Manifest load_manifest(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ManifestError(e.what());
  }
  return parse_manifest(text, path.parent_path());
}

std::string write_manifest(const Manifest& manifest, const fs::path& base_dir) {
  auto rel = [&](const fs::path& p) {
    if (p.empty()) return std::string();
    auto r = p.lexically_relative(base_dir);
    return (r.empty() || r.native().starts_with("..")) ? p.generic_string() : r.generic_string();
  };
  ordered_json out = ordered_json::object();
  out["spec"] = rel(manifest.spec);
  out["corpus"] = manifest.corpus;
  out["entries"] = ordered_json::array();
  for (const auto& e : manifest.entries) {
    ordered_json j = ordered_json::object();
    j["program"] = e.program;
    j["framework"] = e.variant.framework;
    j["algorithm"] = e.variant.algorithm;
    j["config"] = ordered_json::array();
    for (const auto& flag : e.variant.config) j["config"].push_back(flag);
    j["file"] = rel(e.file);
    j["format"] = std::string(to_string(e.format));
    j["flavor"] = std::string(to_string(e.flavor));
    out["entries"].push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

// ---- pair enumeration -------------------------------------------------------

std::vector<Relation> enumerate_pairs(const OrderSpec& spec, Dimension dimension,
                                      const std::vector<Variant>* available) {
  std::set<Variant> have;
  if (available) have.insert(available->begin(), available->end());
  auto present = [&](const Variant& v) { return !available || have.contains(v); };

  std::vector<Relation> out;
  if (dimension == Dimension::equivalence) {
    for (const auto& [a, b] : spec.declaration().equivalences) {
      if (present(a) && present(b)) {
        out.push_back(pair_relation(RelationKind::equivalence, a, b, Provenance::declared));
      }
    }
    return out;
  }

  auto variants = spec.variants();
  for (const auto& hi : variants) {
    if (!present(hi)) continue;
    for (const auto& lo : variants) {
      if (hi == lo || !present(lo) || !spec.precedes(hi, lo)) continue;
      bool same_fw = hi.framework == lo.framework;
      bool same_alg = same_fw && hi.algorithm == lo.algorithm;
      bool same_cfg = hi.config == lo.config;
      bool keep = false;
      switch (dimension) {
        case Dimension::config_intra: keep = same_alg; break;
        case Dimension::alg_intra_same_cfg: keep = same_fw && !same_alg && same_cfg; break;
        case Dimension::alg_cfg_hybrid: keep = same_fw && !same_alg && !same_cfg; break;
        case Dimension::cross_framework: keep = !same_fw; break;
        case Dimension::equivalence: break;
      }
      if (keep) out.push_back(pair_relation(RelationKind::precision, hi, lo, Provenance::derived_product));
    }
  }
  // Display order: less precise side first.
  std::sort(out.begin(), out.end(), [](const Relation& a, const Relation& b) {
    return std::tie(a.right, a.left) < std::tie(b.right, b.left);
  });
  return out;
}

// ---- running ----------------------------------------------------------------

CampaignReport run_campaign(const Manifest& manifest, const std::vector<Dimension>& dimensions,
                            const CampaignOptions& options) {
  if (manifest.spec.empty()) return run_campaign(manifest, default_spec(), dimensions, options);
  OrderSpec spec;
  try {
    spec = load_spec(read_file(manifest.spec));
  } catch (const Error& e) {
    throw ManifestError("cannot load order spec '" + manifest.spec.string() + "': " + e.what());
  }
  return run_campaign(manifest, spec, dimensions, options);
}

CampaignReport run_campaign(const Manifest& manifest, const OrderSpec& spec,
                            const std::vector<Dimension>& dimensions, const CampaignOptions& options) {
  std::vector<std::string> programs = manifest.corpus;
  {
    std::set<std::string> corpus(programs.begin(), programs.end());
    if (corpus.size() != programs.size()) throw ManifestError("duplicate program in corpus");
    std::set<std::pair<std::string, Variant>> seen;
    for (const auto& e : manifest.entries) {
      if (!manifest.corpus.empty() && !corpus.contains(e.program)) {
        throw ManifestError("entry for program '" + e.program + "' which is not in the corpus");
      }
      if (manifest.corpus.empty() && corpus.insert(e.program).second) programs.push_back(e.program);
      try {
        spec.validate(e.variant);
      } catch (const UnknownSymbol& ex) {
        throw ManifestError("entry " + e.program + " " + e.variant.to_string() + ": " + ex.what());
      }
      if (!seen.emplace(e.program, e.variant).second) {
        throw ManifestError("more than one file for " + e.program + " " + e.variant.to_string());
      }
    }
  }
  std::sort(programs.begin(), programs.end());

  CampaignReport report;

  // Load every graph; read or normalization failures demote to failed.
  std::vector<CallGraph> graphs(manifest.entries.size());
  std::vector<std::string> load_errors(manifest.entries.size());
  parallel_for(manifest.entries.size(), options.jobs, [&](std::size_t i) {
    const auto& e = manifest.entries[i];
    try {
      auto raw = read_graph(read_file(e.file), e.format, e.flavor);
      if (raw.header.status && *raw.header.status != GraphStatus::ok) {
        graphs[i] = CallGraph::failed(e.program, e.variant, *raw.header.status);
        return;
      }
      graphs[i] = normalize(raw, e.program, e.variant, options.normalize);
    } catch (const Error& ex) {
      load_errors[i] = e.file.generic_string() + ": " + ex.what();
      graphs[i] = CallGraph::failed(e.program, e.variant);
    }
  });
  for (auto& msg : load_errors) {
    if (!msg.empty()) report.diagnostics.push_back(std::move(msg));
  }

  std::map<std::pair<std::string, Variant>, std::size_t> by_key;
  std::vector<Variant> available;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    by_key.emplace(std::pair{manifest.entries[i].program, manifest.entries[i].variant}, i);
    available.push_back(manifest.entries[i].variant);
  }

  struct Task {
    std::size_t row;
    std::size_t left;
    std::size_t right;
  };
  std::vector<Task> tasks;
  std::set<Dimension> wanted(dimensions.begin(), dimensions.end());
  for (auto dim : kAllDimensions) {
    if (!wanted.contains(dim)) continue;
    for (auto& rel : enumerate_pairs(spec, dim, &available)) {
      PairRow row;
      row.dimension = dim;
      row.from = rel.kind == RelationKind::equivalence ? rel.left : rel.right;
      row.to = rel.kind == RelationKind::equivalence ? rel.right : rel.left;
      row.relation = std::move(rel);
      bool any = false;
      for (const auto& p : programs) {
        auto l = by_key.find({p, row.relation.left});
        auto r = by_key.find({p, row.relation.right});
        if (l == by_key.end() || r == by_key.end()) {
          // Only a one-sided gap counts as skipped; a program with neither file is
          // simply not part of this row.
          if (l != by_key.end() || r != by_key.end()) row.skipped.push_back(p);
          continue;
        }
        any = true;
        tasks.push_back({report.rows.size(), l->second, r->second});
      }
      if (any) report.rows.push_back(std::move(row));
    }
  }

  std::vector<ComparisonResult> results(tasks.size());
  parallel_for(tasks.size(), options.jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    results[i] = compare(graphs[t.left], graphs[t.right], report.rows[t.row].relation);
  });

  std::vector<cpp_int> shared(report.rows.size()), uni(report.rows.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto& row = report.rows[tasks[i].row];
    auto& res = results[i];
    if (res.status != ComparisonStatus::ok) {
      row.skipped.push_back(res.program);
    } else {
      ++row.compared;
      row.macro_similarity += ExactRatio(res.jaccard.numerator(), res.jaccard.denominator());
      shared[tasks[i].row] += res.shared_edges;
      uni[tasks[i].row] += res.union_edges;
      row.violations += res.violations.size();
      auto counts = res.tag_counts();
      for (std::size_t c = 0; c < kRootCauseCategories; ++c) row.tags[c] += counts[c];
    }
    report.details.push_back(std::move(res));
  }
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    auto& row = report.rows[r];
    std::sort(row.skipped.begin(), row.skipped.end());
    if (row.compared > 0) {
      row.macro_similarity /= ExactRatio(row.compared);
      row.micro_similarity = uni[r] == 0 ? ExactRatio(1) : ExactRatio(shared[r], uni[r]);
    }
    report.total_violations += row.violations;
    for (std::size_t c = 0; c < kRootCauseCategories; ++c) report.tags[c] += row.tags[c];
  }

  std::stable_sort(report.rows.begin(), report.rows.end(), [](const PairRow& a, const PairRow& b) {
    return std::tie(a.dimension, a.from, a.to) < std::tie(b.dimension, b.from, b.to);
  });
  std::stable_sort(report.details.begin(), report.details.end(),
                   [](const ComparisonResult& a, const ComparisonResult& b) {
                     return std::tie(a.program, a.left, a.right) < std::tie(b.program, b.left, b.right);
                   });
  return report;
}

// ---- rendering --------------------------------------------------------------

std::optional<ReportFormat> report_format_from_string(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  if (text == "markdown" || text == "md") return ReportFormat::markdown;
  return std::nullopt;
}

std::string render_cell(const PairRow& row) {
  if (row.failed()) return "Fail";
  return percent(row.macro_similarity) + "%/" + std::to_string(row.violations);
}

namespace {

std::string render_json(const CampaignReport& report) {
  ordered_json out = ordered_json::object();
  out["similarity"] = "macro";
  out["equivalence_violations"] = "symmetric-difference";
  out["total_violations"] = report.total_violations;
  out["tags"] = tags_json(report.tags);
  out["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json j = ordered_json::object();
    j["dimension"] = std::string(to_string(row.dimension));
    j["relation"] = std::string(to_string(row.relation.kind));
    j["from"] = row.from.to_string();
    j["to"] = row.to.to_string();
    j["cell"] = render_cell(row);
    if (row.failed()) {
      j["macro_similarity"] = nullptr;
      j["micro_similarity"] = nullptr;
    } else {
      j["macro_similarity"] = percent(row.macro_similarity);
      j["micro_similarity"] = percent(row.micro_similarity);
      j["macro_exact"] = exact(row.macro_similarity);
      j["micro_exact"] = exact(row.micro_similarity);
    }
    j["violations"] = row.violations;
    j["compared"] = row.compared;
    j["skipped"] = row.skipped;
    j["tags"] = tags_json(row.tags);
    out["rows"].push_back(std::move(j));
  }
  out["details"] = ordered_json::array();
  for (const auto& d : report.details) {
    ordered_json j = ordered_json::object();
    j["program"] = d.program;
    j["left"] = variant_json(d.left);
    j["right"] = variant_json(d.right);
    j["relation"] = std::string(to_string(d.relation_kind));
    j["status"] = std::string(to_string(d.status));
    if (d.status == ComparisonStatus::ok) {
      j["jaccard"] = exact(d.jaccard);
      j["similarity"] = format_percent(d.jaccard);
      j["shared_edges"] = d.shared_edges;
      j["union_edges"] = d.union_edges;
      j["nodes_only_left"] = d.nodes_only_left;
      j["nodes_only_right"] = d.nodes_only_right;
      j["violations"] = ordered_json::array();
      for (const auto& v : d.violations) {
        ordered_json vj = ordered_json::object();
        vj["source"] = v.edge.first.to_string();
        vj["target"] = v.edge.second.to_string();
        vj["direction"] = std::string(to_string(v.direction));
        vj["category"] = std::string(to_string(v.cause.category));
        vj["pattern"] = v.cause.matched_pattern;
        j["violations"].push_back(std::move(vj));
      }
    }
    out["details"].push_back(std::move(j));
  }
  out["diagnostics"] = report.diagnostics;
  return out.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const CampaignReport& report) {
  std::string out =
      "dimension,from,to,relation,macro_similarity,micro_similarity,violations,compared,skipped,cell\n";
  for (const auto& row : report.rows) {
    std::string skipped;
    for (const auto& p : row.skipped) skipped += (skipped.empty() ? "" : ";") + p;
    out += csv_field(std::string(to_string(row.dimension))) + "," + csv_field(row.from.to_string()) + "," +
           csv_field(row.to.to_string()) + "," + std::string(to_string(row.relation.kind)) + "," +
           (row.failed() ? "" : percent(row.macro_similarity)) + "," +
           (row.failed() ? "" : percent(row.micro_similarity)) + "," + std::to_string(row.violations) + "," +
           std::to_string(row.compared) + "," + csv_field(skipped) + "," + render_cell(row) + "\n";
  }
  return out;
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string render_markdown(const CampaignReport& report) {
  std::string out =
      "| Dimension | From | To | Similarity (%) / #Violations | Micro similarity (%) | Compared | Skipped |\n"
      "|---|---|---|---|---|---|---|\n";
  for (const auto& row : report.rows) {
    out += "| " + std::string(to_string(row.dimension)) + " | " + md_escape(row.from.to_string()) + " | " +
           md_escape(row.to.to_string()) + " | " + render_cell(row) + " | " +
           (row.failed() ? std::string("Fail") : percent(row.micro_similarity)) + " | " +
           std::to_string(row.compared) + " | " + std::to_string(row.skipped.size()) + " |\n";
  }
  if (report.total_violations > 0) {
    out += "\n| Root cause | Violations | Share (%) |\n|---|---|---|\n";
    for (std::size_t c = 0; c < kRootCauseCategories; ++c) {
      ExactRatio share(report.tags[c], report.total_violations);
      out += "| " + std::string(to_string(static_cast<RootCauseCategory>(c))) + " | " +
             std::to_string(report.tags[c]) + " | " + percent(share) + " |\n";
    }
  }
  return out;
}

}  // namespace

std::string render_report(const CampaignReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return render_json(report);
    case ReportFormat::csv: return render_csv(report);
    case ReportFormat::markdown: return render_markdown(report);
  }
  return render_json(report);
}

}  // namespace cgm
