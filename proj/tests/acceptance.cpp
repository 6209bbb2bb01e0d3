// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails or runs over its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cgm/campaign.hpp"
#include "cgm/detector.hpp"
#include "cgm/ingest.hpp"
#include "cgm/normalize.hpp"
#include "cgm/synth.hpp"
#include "golden_corpus.hpp"
#include "order_oracle.hpp"
#include "test_util.hpp"

namespace {

using namespace cgm;

struct Failure {
  std::string why;
};

void check(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

// ---- 1 ----------------------------------------------------------------------

void jaccard_magnitude() {
  EdgeSet a, b;
  for (int i = 0; i < 15000; ++i) {
    Edge e{testing::m("j", "A", "f" + std::to_string(i)), testing::m("j", "B", "g" + std::to_string(i))};
    b.insert(e);
    if (i % 100 == 0) a.insert(e);
  }
  check(a.size() == 150 && b.size() == 15000, "fixture sizes");
  check(std::includes(b.begin(), b.end(), a.begin(), a.end()), "A is not a subset of B");
  auto j = jaccard(a, b);
  check(j == Rational(1, 100), "jaccard = " + std::to_string(j.numerator()) + "/" + std::to_string(j.denominator()));
  check(boost::rational_cast<double>(j) == 0.01, "decimal rendering is not 0.01");
  check(format_percent(j) == "1.0", "percent rendering " + format_percent(j));
}

// ---- 2 ----------------------------------------------------------------------

void motivating_example() {
  auto cha = normalize(read_dot_subset(read_file(testing::fixture("motivating_soot_cha.dot")), Flavor::soot), "demo",
                       Variant::parse("Soot:CHA"));
  auto rta = normalize(read_edge_list(read_file(testing::fixture("motivating_wala_rta.edges")), Flavor::wala), "demo",
                       Variant::parse("WALA:RTA"));
  Relation eq;
  eq.kind = RelationKind::equivalence;
  eq.left = cha.variant;
  eq.right = rta.variant;
  auto r = compare(cha, rta, eq);
  check(r.violations.size() == 2, std::to_string(r.violations.size()) + " violations");
  const auto main = testing::m("example", "Demo", "main", {"java.lang.String[]"});
  const auto lambda = testing::m("example", "Demo", "lambda$main$0");
  const auto work = testing::m("example", "Demo", "doSomething");
  std::set<Edge> got;
  for (const auto& v : r.violations) {
    got.insert(v.edge);
    check(v.cause.category == RootCauseCategory::invokedynamic_lambda,
          "tag " + std::string(to_string(v.cause.category)));
  }
  check(got == std::set<Edge>{{main, lambda}, {lambda, work}}, "wrong violation edges");
  check(r.jaccard < Rational(1), "similarity is 100%");
}

// ---- 3 ----------------------------------------------------------------------

void planted_recovery() {
  std::mt19937_64 rng(20260101);
  std::size_t mismatches = 0, pairs = 0;
  for (int f = 0; f < 200; ++f) {
    synth::Params p;
    p.n_nodes = 50 + rng() % 451;
    p.n_edges = p.n_nodes + rng() % (2 * p.n_nodes);
    p.chain_length = 1 + rng() % 4;
    p.violations_per_step = rng() % 11;
    p.noise = true;
    auto fam = synth::generate_family(rng(), p, "f" + std::to_string(f));
    auto results = synth::run_detector(fam, [](const CallGraph& hi, const CallGraph& lo) {
      return detect_violations(hi, lo);
    });
    pairs += results.size();
    auto verdict = synth::oracle_check(fam, results);
    mismatches += verdict.mismatches.size();
    if (!verdict.pass && mismatches == verdict.mismatches.size()) std::cerr << "  " << verdict.mismatches[0] << "\n";
  }
  check(pairs > 0, "no pairs checked");
  check(mismatches == 0, std::to_string(mismatches) + " mismatches");
}

// ---- 4 ----------------------------------------------------------------------

void pruning_safety() {
  std::mt19937_64 rng(4);
  const Variant hi = Variant::parse("Soot:VTA"), lo = Variant::parse("Soot:CHA");
  for (int t = 0; t < 1000; ++t) {
    auto full = testing::random_edges(rng, 5 + rng() % 40, rng() % 120);
    EdgeSet subset;
    for (const auto& e : full)
      if (rng() % 3 != 0) subset.insert(e);
    auto v = detect_violations(testing::graph("p", hi, subset), testing::graph("p", lo, full));
    check(v.empty(), "trial " + std::to_string(t) + ": pruned graph reported " + std::to_string(v.size()));
  }
}

// ---- 5 ----------------------------------------------------------------------

std::string hex_suffix(std::mt19937_64& rng) {
  static const char* digits = "0123456789abcdef";
  std::string out = "_";
  for (std::size_t i = 0, n = 6 + rng() % 5; i < n; ++i) out += digits[rng() % 16];
  return out;
}

MethodRef random_method(std::mt19937_64& rng, int k) {
  static const std::vector<std::string> types = {"int", "long", "boolean", "java.lang.String", "java.lang.Object[]",
                                                 "int[][]", "java.util.List", "double"};
  static const std::vector<std::string> pkgs = {"com.acme", "org.example.util", "net.x", ""};
  MethodRef m;
  m.package = pkgs[rng() % pkgs.size()];
  m.class_name = "K" + std::to_string(rng() % 6);
  m.method = k % 7 == 0 ? "<init>" : "op" + std::to_string(k);
  for (std::size_t i = 0, n = rng() % 3; i < n; ++i) m.params.push_back(types[rng() % types.size()]);
  return m;
}

using LabelEdges = std::set<std::pair<std::string, std::string>>;

LabelEdges label_edges(const RawGraph& g) {
  LabelEdges out;
  for (const auto& [a, b] : g.edges) out.emplace(g.nodes.at(a), g.nodes.at(b));
  return out;
}

Rational raw_jaccard(const LabelEdges& a, const LabelEdges& b) {
  std::size_t shared = 0;
  for (const auto& e : a) shared += b.contains(e);
  std::size_t uni = a.size() + b.size() - shared;
  return uni == 0 ? Rational(1) : Rational(std::int64_t(shared), std::int64_t(uni));
}

void normalization_convergence() {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MethodRef> methods;
    std::set<MethodRef> seen;
    for (int k = 0; methods.size() < 12; ++k) {
      auto m = random_method(rng, k);
      if (seen.insert(m).second) methods.push_back(m);
    }
    EdgeSet logical;
    while (logical.size() < 20) logical.emplace(methods[rng() % methods.size()], methods[rng() % methods.size()]);

    auto render = [&](Flavor flavor, double hash_p) {
      std::map<MethodRef, std::string> label;
      for (const auto& m : methods) {
        label[m] = render_signature(m, flavor, m.method == "<init>" ? "void" : "int");
        if (std::uniform_real_distribution<double>(0, 1)(rng) < hash_p) label[m] += hex_suffix(rng);
      }
      RawGraph raw;
      raw.flavor = flavor;
      for (const auto& [a, b] : logical) raw.edges.emplace(label[a], label[b]);
      for (const auto& [a, b] : raw.edges) {
        raw.nodes.emplace(a, a);
        raw.nodes.emplace(b, b);
      }
      return raw;
    };
    auto soot_raw = render(Flavor::soot, 0.6);
    auto wala_raw = render(Flavor::wala, 0.6);
    // DOT with opaque ids, hashed labels and a metadata node.
    auto dot_src = render(Flavor::soot, 0.6);
    RawGraph dot_raw;
    std::map<std::string, std::string> ids;
    for (const auto& [label, _] : dot_src.nodes) {
      auto id = "n" + std::to_string(ids.size());
      ids[label] = id;
      dot_raw.nodes[id] = label;
    }
    for (const auto& [a, b] : dot_src.edges) dot_raw.edges.emplace(ids[a], ids[b]);
    dot_raw.nodes["meta"] = "ClusterRoot";
    dot_raw.edges.emplace("meta", ids.begin()->second);

    auto soot_text = write_edge_list(soot_raw);
    auto wala_text = write_edge_list(wala_raw);
    auto dot_text = write_dot(dot_raw);

    auto soot_back = read_edge_list(soot_text, Flavor::soot);
    auto wala_back = read_edge_list(wala_text, Flavor::wala);
    auto dot_back = read_dot_subset(dot_text, Flavor::soot);

    const std::string t = "trial " + std::to_string(trial) + ": ";
    check(raw_jaccard(label_edges(soot_back), label_edges(wala_back)) < Rational(1), t + "soot/wala identical raw");
    check(raw_jaccard(label_edges(soot_back), label_edges(dot_back)) < Rational(1), t + "soot/dot identical raw");
    check(raw_jaccard(label_edges(wala_back), label_edges(dot_back)) < Rational(1), t + "wala/dot identical raw");

    const Variant v = Variant::parse("Soot:CHA");
    auto gs = normalize(soot_back, "p", v);
    auto gw = normalize(wala_back, "p", v);
    auto gd = normalize(dot_back, "p", v);
    check(gs.edges == logical, t + "soot-style does not normalize to the logical graph");
    check(gw.edges == logical, t + "wala-style does not normalize to the logical graph");
    check(gd.edges == logical, t + "DOT does not normalize to the logical graph");
    check(jaccard(gs.edges, gw.edges) == Rational(1) && jaccard(gs.edges, gd.edges) == Rational(1),
          t + "post-normalization similarity below 100%");
  }
}

// ---- 6 ----------------------------------------------------------------------

void order_algebra() {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 500; ++t) {
    auto d = testing::random_declaration(rng);
    std::size_t algs = 0;
    for (const auto& fw : d.frameworks) {
      algs += fw.algorithms.size();
      check(fw.flags.size() <= 2, "more than 4 config sets");
    }
    check(algs <= 8, "more than 8 algorithms");
    auto spec = OrderSpec::build(d);
    testing::OrderOracle oracle(d);
    const std::string at = "spec " + std::to_string(t) + ": ";
    check(closure(spec) == oracle.closure(), at + "closure differs");
    check(implicit_soundness(spec) == oracle.soundness(), at + "implicit soundness differs");
    check(product_order(spec) == oracle.product(), at + "product order differs");
  }
  const auto& spec = default_spec();
  check(spec.alg_precedes({"Soot", "VTA"}, {"Soot", "CHA"}), "VTA >= CHA missing");
  check(spec.cfg_precedes("Soot", {"FS", "OS"}, {}), "FS+OS >= BS missing");
  check(spec.cfg_precedes("WALA", {"FS", "OS"}, {}), "WALA FS+OS >= BS missing");
  check(spec.alg_precedes({"WALA", "0-CFA"}, {"Soot", "VTA"}), "0-CFA >= VTA missing");
  std::size_t precision = 0;
  for (const auto& r : closure(spec)) precision += !r.reflexive();
  check(implicit_soundness(spec).size() == 2 * precision, "soundness count is not twice the precision count");
  check(product_order(spec) == testing::OrderOracle(spec.declaration()).product(), "default product order differs");
}

// ---- 7 ----------------------------------------------------------------------

void report_rendering() {
  PairRow row;
  row.compared = 3;
  row.macro_similarity = ExactRatio(943, 1000);
  row.violations = 1;
  check(render_cell(row) == "94.3%/1", "cell " + render_cell(row));
  CampaignReport one;
  one.rows.push_back(row);
  check(render_report(one, ReportFormat::markdown).find("| 94.3%/1 |") != std::string::npos, "markdown cell");

  auto failed = testing::CorpusBuilder("acceptance_failed");
  failed.add("a", "Soot:CHA", {testing::e(1, 2)}).add("a", "Soot:RTA", {}, GraphStatus::failed);
  auto fr = run_campaign(failed.manifest, {Dimension::alg_intra_same_cfg});
  check(fr.rows.size() == 1 && render_cell(fr.rows[0]) == "Fail", "failed variant does not render Fail");
  check(render_report(fr, ReportFormat::markdown).find("| Fail |") != std::string::npos, "Fail missing in markdown");

  auto c = testing::golden_corpus();
  auto report = run_campaign(c.manifest, {Dimension::alg_intra_same_cfg});
  check(render_report(report, ReportFormat::markdown) == read_file(testing::fixture("golden_report.md")),
        "markdown differs from golden");
  check(render_report(report, ReportFormat::csv) == read_file(testing::fixture("golden_report.csv")),
        "csv differs from golden");

  CampaignOptions opts;
  opts.jobs = 4;
  std::vector<Dimension> all(kAllDimensions.begin(), kAllDimensions.end());
  auto first = render_report(run_campaign(c.manifest, all, opts), ReportFormat::json);
  auto second = render_report(run_campaign(c.manifest, all, opts), ReportFormat::json);
  check(first == second, "two campaign runs differ");
}

// ---- 8 ----------------------------------------------------------------------

void tag_histogram() {
  synth::Params p;
  p.n_nodes = 300;
  p.n_edges = 600;
  p.chain_length = 4;
  p.violations_per_step = 25;
  p.tag_mix = synth::kDefaultTagMix;
  auto families = synth::generate_corpus(8, p, 100);
  std::array<std::size_t, kRootCauseCategories> hist{};
  std::size_t total = 0;
  for (const auto& fam : families) {
    for (const auto& r : synth::run_detector(fam, [](const CallGraph& hi, const CallGraph& lo) {
           return detect_violations(hi, lo);
         })) {
      if (r.hi != r.lo + 1) continue;
      for (const auto& e : r.reported) {
        ++hist[static_cast<std::size_t>(tag_root_cause(e).category)];
        ++total;
      }
    }
  }
  check(total >= 10000, std::to_string(total) + " violation edges");
  double weight = 0;
  for (double w : p.tag_mix) weight += w;
  for (std::size_t c = 0; c < kRootCauseCategories; ++c) {
    double got = 100.0 * double(hist[c]) / double(total);
    double want = 100.0 * p.tag_mix[c] / weight;
    check(std::abs(got - want) <= 2.0, std::string(to_string(static_cast<RootCauseCategory>(c))) + " share " +
                                           std::to_string(got) + "% vs " + std::to_string(want) + "%");
  }
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "jaccard magnitude 150/15000 = 1/100", 1, jaccard_magnitude},
      {2, "motivating example: 2 lambda violations", 1, motivating_example},
      {3, "planted-violation recovery, 200 families", 60, planted_recovery},
      {4, "pure-pruning safety, 1000 pairs", 10, pruning_safety},
      {5, "normalization convergence, 100 trials", 10, normalization_convergence},
      {6, "order algebra vs brute force, 500 specs", 10, order_algebra},
      {7, "report rendering and determinism", 30, report_rendering},
      {8, "tag histogram within 2pp over 10000+ edges", 30, tag_histogram},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string why;
    try {
      c.run();
    } catch (const Failure& f) {
      why = f.why;
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (why.empty() && secs > c.budget_s) why = "over time budget of " + std::to_string(c.budget_s) + " s";
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (why.empty() ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " (" << secs << " s)";
    if (!why.empty()) line << ": " << why;
    std::cout << line.str() << std::endl;
    failed += !why.empty();
  }
  return failed == 0 ? 0 : 1;
}
