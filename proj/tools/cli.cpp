// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgm/campaign.hpp"
#include "cgm/detector.hpp"
#include "cgm/error.hpp"
#include "cgm/ingest.hpp"
#include "cgm/normalize.hpp"
#include "cgm/order_spec.hpp"
#include "cgm/synth.hpp"

namespace cgm::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

/// Exit code carried out of a subcommand.
struct Exit {
  int code;
};

class Reporter {
 public:
  explicit Reporter(Streams io) : io_(io) {}

  [[noreturn]] void fail(int code, const std::string& where, const std::string& what) const {
    if (io_.color) io_.err << "\x1b[1;31merror:\x1b[0m ";
    else io_.err << "error: ";
    if (!where.empty()) io_.err << where << ": ";
    io_.err << what << "\n";
    throw Exit{code};
  }

  void warn(const std::string& what) const {
    if (io_.color) io_.err << "\x1b[1;33mwarning:\x1b[0m ";
    else io_.err << "warning: ";
    io_.err << what << "\n";
  }

 private:
  Streams io_;
};

struct GraphInput {
  std::string path;
  std::string flavor;
  std::string format;
};

std::optional<Flavor> parse_flavor(const std::string& s) {
  if (s.empty()) return Flavor::canonical;
  return flavor_from_string(s);
}

/// Reads `in` into a RawGraph, mapping reader errors to exit 2.
RawGraph load_raw(const GraphInput& in, const Reporter& rep) {
  auto flavor = parse_flavor(in.flavor);
  if (!flavor) rep.fail(kFindings, "", "unknown flavor '" + in.flavor + "'");
  std::string text;
  try {
    text = read_file(in.path);
  } catch (const Error& e) {
    rep.fail(kParseError, in.path, e.what());
  }
  GraphFormat format;
  if (in.format.empty()) {
    format = sniff_format(in.path, text);
  } else if (auto f = format_from_string(in.format)) {
    format = *f;
  } else {
    rep.fail(kFindings, "", "unknown input format '" + in.format + "'");
  }
  try {
    return read_graph(text, format, *flavor);
  } catch (const ParseError& e) {
    rep.fail(kParseError, in.path, e.what());
  }
}

CallGraph normalize_or_fail(const RawGraph& raw, const std::string& path, std::string program, Variant variant,
                            const NormalizeOptions& options, const Reporter& rep) {
  try {
    return normalize(raw, std::move(program), std::move(variant), options);
  } catch (const MissingLabel& e) {
    rep.fail(kNormalizeError, path, e.what());
  } catch (const UnparseableSignature& e) {
    rep.fail(kNormalizeError, path, e.what());
  }
}

NormalizeOptions load_denylist(const std::string& path, const Reporter& rep) {
  NormalizeOptions options;
  if (path.empty()) return options;
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    rep.fail(kParseError, path, e.what());
  }
  options.denylist.clear();
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    options.denylist.push_back(line.substr(b, e - b + 1));
  }
  return options;
}

Variant parse_variant(const std::string& text, const Reporter& rep) {
  try {
    return Variant::parse(text);
  } catch (const Error& e) {
    rep.fail(kFindings, "", e.what());
  }
}

OrderSpec load_spec_or_fail(const std::string& path, const Reporter& rep) {
  if (path.empty()) return default_spec();
  try {
    return load_spec(read_file(path));
  } catch (const Error& e) {
    rep.fail(kManifestError, path, e.what());
  }
}

// ---- normalize --------------------------------------------------------------

struct NormalizeArgs {
  GraphInput in;
  std::string denylist;
  std::string output;
  std::string program;
  std::string variant;
};

void cmd_normalize(const NormalizeArgs& a, Streams io, const Reporter& rep) {
  auto raw = load_raw(a.in, rep);
  auto options = load_denylist(a.denylist, rep);
  GraphHeader header = raw.header;
  if (!a.program.empty()) header.program = a.program;
  if (!a.variant.empty()) header.variant = parse_variant(a.variant, rep);
  auto g = normalize_or_fail(raw, a.in.path, header.program.value_or(""), header.variant.value_or(Variant{}),
                             options, rep);
  RawGraph out;
  out.header = header;
  for (const auto& n : g.nodes) {
    auto label = n.to_string();
    out.nodes.emplace(label, label);
  }
  for (const auto& [from, to] : g.edges) out.edges.emplace(from.to_string(), to.to_string());
  auto text = write_canonical_json(out);
  if (a.output.empty() || a.output == "-") {
    io.out << text;
    return;
  }
  try {
    write_file(a.output, text);
  } catch (const Error& e) {
    rep.fail(kFindings, a.output, e.what());
  }
}

// ---- compare ----------------------------------------------------------------

struct CompareArgs {
  GraphInput left;
  GraphInput right;
  std::string flavor;
  std::string spec;
  std::string left_variant;
  std::string right_variant;
  std::string program;
  std::string denylist;
  bool equivalence = false;
  bool json = false;
};

void cmd_compare(CompareArgs a, Streams io, const Reporter& rep) {
  if (a.left.flavor.empty()) a.left.flavor = a.flavor;
  if (a.right.flavor.empty()) a.right.flavor = a.flavor;
  auto spec = load_spec_or_fail(a.spec, rep);
  auto options = load_denylist(a.denylist, rep);
  auto lraw = load_raw(a.left, rep);
  auto rraw = load_raw(a.right, rep);

  auto variant_of = [&](const RawGraph& raw, const std::string& flag, const char* side) {
    if (!flag.empty()) return parse_variant(flag, rep);
    if (raw.header.variant) return *raw.header.variant;
    rep.fail(kFindings, "", std::string("no variant for the ") + side + " graph; pass --" + side + "-variant");
  };
  auto lv = variant_of(lraw, a.left_variant, "left");
  auto rv = variant_of(rraw, a.right_variant, "right");
  auto program_of = [&](const RawGraph& raw) {
    if (!a.program.empty()) return a.program;
    return raw.header.program.value_or("");
  };
  auto lp = program_of(lraw);
  auto rp = program_of(rraw);
  if (lp.empty()) lp = rp;
  if (rp.empty()) rp = lp;

  auto lg = normalize_or_fail(lraw, a.left.path, lp, lv, options, rep);
  auto rg = normalize_or_fail(rraw, a.right.path, rp, rv, options, rep);
  if (lraw.header.status && *lraw.header.status != GraphStatus::ok) lg = CallGraph::failed(lp, lv, *lraw.header.status);
  if (rraw.header.status && *rraw.header.status != GraphStatus::ok) rg = CallGraph::failed(rp, rv, *rraw.header.status);

  Relation relation;
  ComparisonResult result;
  try {
    if (a.equivalence) {
      relation.kind = RelationKind::equivalence;
      relation.left = lv;
      relation.right = rv;
      if (!spec.equivalent(lv, rv) && lv != rv) {
        rep.warn(lv.to_string() + " and " + rv.to_string() + " are not declared equivalent");
      }
    } else {
      relation = infer_relation(spec, lv, rv);
    }
    result = compare(lg, rg, relation);
  } catch (const OrderMismatch& e) {
    rep.fail(kOrderMismatch, "", e.what());
  } catch (const ProgramMismatch& e) {
    rep.fail(kOrderMismatch, "", e.what());
  } catch (const UnknownSymbol& e) {
    rep.fail(kOrderMismatch, "", e.what());
  }

  if (result.status != ComparisonStatus::ok) {
    io.out << "similarity=Fail violations=0\n";
  } else {
    io.out << "similarity=" << format_percent(result.jaccard) << " violations=" << result.violations.size() << "\n";
  }
  if (!a.json) {
    for (const auto& v : result.violations) {
      io.out << (v.direction == Direction::only_left ? "+left  " : "+right ") << v.edge.first.to_string()
             << " -> " << v.edge.second.to_string() << " [" << to_string(v.cause.category) << "]\n";
    }
    return;
  }
  ordered_json j = ordered_json::object();
  j["program"] = result.program;
  j["left"] = result.left.to_string();
  j["right"] = result.right.to_string();
  j["relation"] = std::string(to_string(result.relation_kind));
  j["status"] = std::string(to_string(result.status));
  if (result.status == ComparisonStatus::ok) {
    j["similarity"] = format_percent(result.jaccard);
    j["jaccard"] = std::to_string(result.jaccard.numerator()) + "/" + std::to_string(result.jaccard.denominator());
    j["shared_edges"] = result.shared_edges;
    j["union_edges"] = result.union_edges;
    j["nodes_only_left"] = result.nodes_only_left;
    j["nodes_only_right"] = result.nodes_only_right;
  }
  j["violations"] = ordered_json::array();
  for (const auto& v : result.violations) {
    j["violations"].push_back({{"source", v.edge.first.to_string()},
                               {"target", v.edge.second.to_string()},
                               {"direction", std::string(to_string(v.direction))},
                               {"category", std::string(to_string(v.cause.category))},
                               {"pattern", v.cause.matched_pattern}});
  }
  ordered_json tags = ordered_json::object();
  auto counts = result.tag_counts();
  for (std::size_t c = 0; c < kRootCauseCategories; ++c) {
    tags[std::string(to_string(static_cast<RootCauseCategory>(c)))] = counts[c];
  }
  j["tags"] = std::move(tags);
  io.out << j.dump(2, ' ', false, ordered_json::error_handler_t::replace) << "\n";
}

// ---- campaign ---------------------------------------------------------------

struct CampaignArgs {
  std::string manifest;
  std::vector<std::string> dimensions;
  std::string format = "markdown";
  std::string output;
  std::string out_dir;
  std::string denylist;
  unsigned jobs = 1;
  bool fail_on_violations = false;
};

int cmd_campaign(const CampaignArgs& a, Streams io, const Reporter& rep) {
  std::vector<Dimension> dims;
  if (a.dimensions.empty()) dims.assign(kAllDimensions.begin(), kAllDimensions.end());
  for (const auto& d : a.dimensions) {
    auto dim = dimension_from_string(d);
    if (!dim) rep.fail(kFindings, "", "unknown dimension '" + d + "'");
    dims.push_back(*dim);
  }
  auto format = report_format_from_string(a.format);
  if (!format) rep.fail(kFindings, "", "unknown report format '" + a.format + "'");

  CampaignOptions options;
  options.jobs = std::max(1u, a.jobs);
  options.normalize = load_denylist(a.denylist, rep);
  CampaignReport report;
  try {
    report = run_campaign(load_manifest(a.manifest), dims, options);
  } catch (const ManifestError& e) {
    rep.fail(kManifestError, a.manifest, e.what());
  }
  for (const auto& d : report.diagnostics) rep.warn(d);

  try {
    if (!a.out_dir.empty()) {
      fs::create_directories(a.out_dir);
      write_file(fs::path(a.out_dir) / "report.json", render_report(report, ReportFormat::json));
      write_file(fs::path(a.out_dir) / "report.csv", render_report(report, ReportFormat::csv));
      write_file(fs::path(a.out_dir) / "report.md", render_report(report, ReportFormat::markdown));
    }
    auto text = render_report(report, *format);
    if (!a.output.empty() && a.output != "-") {
      write_file(a.output, text);
    } else if (a.out_dir.empty() || a.output == "-") {
      io.out << text;
    }
  } catch (const std::exception& e) {
    rep.fail(kFindings, "", e.what());
  }
  return a.fail_on_violations && report.total_violations > 0 ? kFindings : kOk;
}

// ---- gen --------------------------------------------------------------------

struct GenArgs {
  std::uint64_t seed = 1;
  synth::Params params;
  std::size_t programs = 1;
  bool no_noise = false;
  std::string out_dir;
};

void cmd_gen(GenArgs a, Streams io, const Reporter& rep) {
  a.params.noise = !a.no_noise;
  std::vector<synth::Family> families;
  try {
    families = synth::generate_corpus(a.seed, a.params, a.programs);
  } catch (const ParamError& e) {
    rep.fail(kParamError, "", e.what());
  }
  try {
    synth::write_corpus(families, a.out_dir);
  } catch (const std::exception& e) {
    rep.fail(kFindings, a.out_dir, e.what());
  }
  std::size_t graphs = 0;
  for (const auto& f : families) graphs += f.rendered.size();
  io.out << "wrote " << graphs << " graphs for " << families.size() << " program(s) to " << a.out_dir << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, Streams io) {
  Reporter rep(io);
  CLI::App app{"Metamorphic differential testing of call-graph analyses", "cgm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cgm 0.1.0");

  NormalizeArgs na;
  auto* norm = app.add_subcommand("normalize", "Rewrite one graph dump into canonical JSON");
  norm->add_option("input", na.in.path, "Graph file (JSON, edge list or DOT)")->required();
  norm->add_option("--flavor", na.in.flavor, "Signature dialect: canonical, soot, wala, doop");
  norm->add_option("--input-format", na.in.format, "json, edges or dot (default: guessed)");
  norm->add_option("--denylist", na.denylist, "File of label prefixes to drop, one per line");
  norm->add_option("--program", na.program, "Program id to record");
  norm->add_option("--variant", na.variant, "Variant FRAMEWORK:ALGORITHM[:CONFIG] to record");
  norm->add_option("-o,--output", na.output, "Output file (default: stdout)");

  CompareArgs ca;
  auto* cmp = app.add_subcommand("compare", "Compare two graphs under their declared relation");
  cmp->add_option("left", ca.left.path, "Left graph")->required();
  cmp->add_option("right", ca.right.path, "Right graph")->required();
  cmp->add_option("--spec", ca.spec, "Order spec JSON (default: bundled)");
  cmp->add_option("--flavor", ca.flavor, "Signature dialect of both inputs");
  cmp->add_option("--left-flavor", ca.left.flavor, "Signature dialect of the left input");
  cmp->add_option("--right-flavor", ca.right.flavor, "Signature dialect of the right input");
  cmp->add_option("--left-format", ca.left.format, "File format of the left input");
  cmp->add_option("--right-format", ca.right.format, "File format of the right input");
  cmp->add_option("--left-variant", ca.left_variant, "Variant of the left graph");
  cmp->add_option("--right-variant", ca.right_variant, "Variant of the right graph");
  cmp->add_option("--program", ca.program, "Program id of both graphs");
  cmp->add_option("--denylist", ca.denylist, "File of label prefixes to drop");
  cmp->add_flag("--equivalence", ca.equivalence, "Treat the pair as equivalent (symmetric difference)");
  cmp->add_flag("--json", ca.json, "Print the full comparison as JSON");

  CampaignArgs ka;
  auto* camp = app.add_subcommand("campaign", "Run every enumerated pair of a corpus manifest");
  camp->add_option("manifest", ka.manifest, "Manifest JSON")->required();
  camp->add_option("--dimensions", ka.dimensions, "config-intra, alg-intra-same-cfg, alg-cfg-hybrid, "
                                                  "cross-framework, equivalence (default: all)")
      ->delimiter(',');
  camp->add_option("--format", ka.format, "json, csv or markdown")->capture_default_str();
  camp->add_option("-o,--output", ka.output, "Report file (default: stdout)");
  camp->add_option("--out-dir", ka.out_dir, "Also write report.{json,csv,md} here");
  camp->add_option("--denylist", ka.denylist, "File of label prefixes to drop");
  camp->add_option("-j,--jobs", ka.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  camp->add_flag("--fail-on-violations", ka.fail_on_violations, "Exit 1 when any violation is found");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic corpus with planted violations");
  gen->add_option("out_dir", ga.out_dir, "Output directory")->required();
  gen->add_option("--seed", ga.seed, "Seed")->capture_default_str();
  gen->add_option("--nodes", ga.params.n_nodes, "Nodes per graph")->capture_default_str();
  gen->add_option("--edges", ga.params.n_edges, "Base edges")->capture_default_str();
  gen->add_option("--chain", ga.params.chain_length, "Refinement steps")->capture_default_str();
  gen->add_option("--violations", ga.params.violations_per_step, "Planted edges per step")->capture_default_str();
  gen->add_option("--fp-ratio", ga.params.fp_ratio, "Share of base edges that are false positives");
  gen->add_option("--prune-ratio", ga.params.prune_ratio, "Share of remaining false positives pruned per step");
  gen->add_option("--programs", ga.programs, "Number of programs")->capture_default_str();
  gen->add_flag("--no-noise", ga.no_noise, "Emit clean canonical JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    io.out << (subs.empty() ? app.help() : subs.back()->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    io.out << "cgm 0.1.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    auto subs = app.get_subcommands();
    io.err << "run with " << (subs.empty() ? "" : subs.back()->get_name() + " ") << "--help for usage\n";
    return kFindings;
  }

  try {
    if (*norm) cmd_normalize(na, io, rep);
    if (*cmp) cmd_compare(ca, io, rep);
    if (*camp) return cmd_campaign(ka, io, rep);
    if (*gen) cmd_gen(ga, io, rep);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kFindings;
  }
  return kOk;
}

}  // namespace cgm::cli
