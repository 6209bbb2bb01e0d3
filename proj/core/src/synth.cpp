// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include "cgm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "cgm/error.hpp"
#include "cgm/ingest.hpp"
#include "cgm/normalize.hpp"
#include "json_util.hpp"

namespace cgm::synth {
namespace {

using detail::ordered_json;
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// std distributions are implementation-defined; these are not.
std::size_t uniform_below(Rng& rng, std::size_t n) {
  if (n <= 1) return 0;
  const std::uint64_t bound = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool chance(Rng& rng, double p) { return unit(rng) < p; }

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng) { return v[uniform_below(rng, v.size())]; }

std::size_t weighted(const TagMix& w, Rng& rng) {
  double total = 0;
  for (double x : w) total += x;
  double u = unit(rng) * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0) continue;
    last = i;
    if (u < w[i]) return i;
    u -= w[i];
  }
  return last;
}

const std::vector<std::string> kTlds = {"com", "org", "net", "io"};
const std::vector<std::string> kOrgs = {"acme", "example", "demo", "corp", "shop"};
const std::vector<std::string> kLeaves = {"util", "core", "model", "service", "io", "web"};
const std::vector<std::string> kClasses = {"Foo", "Bar", "Widget", "Service", "Parser", "Main",
                                           "Handler", "Cache", "Node", "Engine", "Registry", "Loader"};
const std::vector<std::string> kVerbs = {"run", "get", "set", "process", "apply", "compute", "load",
                                         "save", "update", "handle", "visit", "build", "accept", "close"};
const std::vector<std::string> kParams = {"int", "long", "boolean", "double", "java.lang.String",
                                          "java.lang.Object", "int[]", "byte[]", "java.util.List",
                                          "java.lang.String[]"};
const std::vector<std::string> kReturns = {"void", "int", "boolean", "java.lang.Object", "java.lang.String",
                                           "long[]"};

struct Namer {
  Rng& rng;

  std::string package() {
    std::string p = pick(kTlds, rng) + "." + pick(kOrgs, rng);
    if (chance(rng, 0.6)) p += "." + pick(kLeaves, rng);
    return p;
  }
  std::vector<std::string> params() {
    std::vector<std::string> out(uniform_below(rng, 3));
    for (auto& p : out) p = pick(kParams, rng);
    return out;
  }
  MethodRef plain(std::size_t k) {
    return {package(), pick(kClasses, rng) + std::to_string(k % 7), pick(kVerbs, rng) + std::to_string(k),
            params()};
  }
  MethodRef special(RootCauseCategory cat, std::size_t k) {
    static const std::vector<MethodRef> reflective = {
        {"java.lang", "Class", "forName", {"java.lang.String"}},
        {"java.lang.reflect", "Method", "invoke", {"java.lang.Object", "java.lang.Object[]"}},
        {"java.lang", "Class", "newInstance", {}},
        {"java.lang.reflect", "Constructor", "newInstance", {"java.lang.Object[]"}},
        {"java.lang", "Class", "getDeclaredMethod", {"java.lang.String", "java.lang.Class[]"}},
        {"java.lang.reflect", "Field", "get", {"java.lang.Object"}},
    };
    switch (cat) {
      case RootCauseCategory::static_init: return {package(), "Init" + std::to_string(k), "<clinit>", {}};
      case RootCauseCategory::invokedynamic_lambda:
        return {package(), pick(kClasses, rng), "lambda$" + pick(kVerbs, rng) + "$" + std::to_string(k),
                params()};
      case RootCauseCategory::reflection:
        if (k < reflective.size()) return reflective[k];
        return {"java.lang.reflect", "Accessor" + std::to_string(k), "get", {"java.lang.Object"}};
      case RootCauseCategory::lifecycle:
        if (k % 4 == 3) return {package(), "Res" + std::to_string(k), "finalize", {}};
        return {package(), "Obj" + std::to_string(k), "<init>", params()};
      case RootCauseCategory::other: break;
    }
    return plain(k);
  }
};

void check_params(const Params& p) {
  auto fail = [](const std::string& why) { throw ParamError(why); };
  if (p.n_nodes < 10) fail("n_nodes must be at least 10");
  if (p.n_nodes > 1'000'000) fail("n_nodes must be at most 1000000");
  if (p.n_edges == 0) fail("n_edges must be positive");
  if (p.n_edges > p.n_nodes * p.n_nodes) fail("n_edges exceeds n_nodes^2");
  if (p.chain_length < 1) fail("chain_length must be at least 1");
  if (p.chain_length > 64) fail("chain_length must be at most 64");
  if (!(p.fp_ratio >= 0 && p.fp_ratio <= 1)) fail("fp_ratio must lie in [0, 1]");
  if (!(p.prune_ratio >= 0 && p.prune_ratio <= 1)) fail("prune_ratio must lie in [0, 1]");
  double total = 0;
  for (double w : p.tag_mix) {
    if (!(w >= 0) || !std::isfinite(w)) fail("tag_mix weights must be finite and non-negative");
    total += w;
  }
  if (p.violations_per_step > 0 && total <= 0) fail("tag_mix has no positive weight");
}

std::string hex_suffix(Rng& rng) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s = "_";
  std::size_t len = 6 + uniform_below(rng, 7);
  for (std::size_t i = 0; i < len; ++i) s += kHex[uniform_below(rng, 16)];
  return s;
}

const char* extension(GraphFormat f) {
  switch (f) {
    case GraphFormat::canonical_json: return ".json";
    case GraphFormat::edge_list: return ".edges";
    case GraphFormat::dot: return ".dot";
  }
  return ".json";
}

Variant chain_variant(std::size_t step) { return {kFramework, "R" + std::to_string(step), {}}; }

RenderedGraph render(const CallGraph& g, const std::string& program, std::size_t step, bool noise, Rng& rng,
                     const std::map<MethodRef, std::string>& returns, NoiseRecord& rec) {
  RenderedGraph out;
  out.variant = g.variant;
  if (noise) {
    out.format = static_cast<GraphFormat>(uniform_below(rng, 3));
    out.flavor = static_cast<Flavor>(uniform_below(rng, 4));
  }
  rec.format = out.format;
  rec.flavor = out.flavor;
  out.file_name = program + "_R" + std::to_string(step) + extension(out.format);

  const bool dot = out.format == GraphFormat::dot;
  RawGraph raw;
  raw.format = out.format;
  raw.flavor = out.flavor;
  std::map<MethodRef, std::vector<std::string>> ids;
  std::size_t next_id = 0;
  for (const auto& node : g.nodes) {
    std::string base = render_signature(node, out.flavor, returns.at(node));
    std::vector<std::string> labels;
    if (noise && chance(rng, 0.5)) {
      labels.push_back(base + hex_suffix(rng));
      ++rec.hashed_labels;
    } else {
      labels.push_back(base);
    }
    if (noise && chance(rng, 0.1)) {
      std::string twin;
      do twin = base + hex_suffix(rng); while (twin == labels.front());
      labels.push_back(std::move(twin));
      ++rec.split_nodes;
    }
    for (auto& label : labels) {
      std::string id = dot ? "n" + std::to_string(next_id++) : label;
      raw.nodes.emplace(id, label);
      ids[node].push_back(std::move(id));
    }
  }
  auto id_for = [&](const MethodRef& m, std::size_t hint) -> const std::string& {
    const auto& v = ids.at(m);
    return v[hint % v.size()];
  };
  for (const auto& [from, to] : g.edges) {
    raw.edges.emplace(id_for(from, noise ? uniform_below(rng, 2) : 0), id_for(to, noise ? uniform_below(rng, 2) : 0));
  }
  // Split nodes must show both spellings, which an edge list can only do
  // through edges: give every twin one edge of its own.
  for (const auto& [node, v] : ids) {
    if (v.size() < 2) continue;
    for (const auto& [from, to] : g.edges) {
      if (from == node) {
        raw.edges.emplace(v[1], id_for(to, 0));
        raw.edges.emplace(v[0], id_for(to, 0));
        break;
      }
      if (to == node) {
        raw.edges.emplace(id_for(from, 0), v[1]);
        raw.edges.emplace(id_for(from, 0), v[0]);
        break;
      }
    }
  }
  if (noise && !g.nodes.empty()) {
    std::vector<std::string> all;
    for (const auto& [id, label] : raw.nodes) all.push_back(id);
    std::size_t meta = 1 + uniform_below(rng, 3);
    for (std::size_t k = 0; k < meta; ++k) {
      std::string label = "ClusterNode" + std::to_string(k);
      std::string id = dot ? "m" + std::to_string(k) : label;
      raw.nodes.emplace(id, label);
      std::size_t degree = 1 + uniform_below(rng, 3);
      for (std::size_t d = 0; d < degree; ++d) {
        const auto& other = pick(all, rng);
        if (chance(rng, 0.5)) raw.edges.emplace(id, other); else raw.edges.emplace(other, id);
      }
      ++rec.metadata_nodes;
    }
  }

  switch (out.format) {
    case GraphFormat::canonical_json:
      raw.header.program = program;
      raw.header.variant = g.variant;
      raw.header.status = GraphStatus::ok;
      out.text = write_canonical_json(raw);
      break;
    case GraphFormat::edge_list:
      out.text = "# " + program + " " + g.variant.to_string() + "\n" + write_edge_list(raw);
      break;
    case GraphFormat::dot:
      out.text = write_dot(raw, "cg");
      break;
  }
  return out;
}

ordered_json edge_json(const Edge& e) { return ordered_json::array({e.first.to_string(), e.second.to_string()}); }

ordered_json edges_json(const EdgeSet& edges) {
  ordered_json out = ordered_json::array();
  for (const auto& e : edges) out.push_back(edge_json(e));
  return out;
}

}  // namespace

EdgeSet PlantedTruth::edges_at(std::size_t step) const {
  EdgeSet edges = base_edges;
  for (std::size_t s = 1; s <= step && s < steps.size(); ++s) {
    for (const auto& e : steps[s].pruned_fp) edges.erase(e);
    edges.insert(steps[s].added.begin(), steps[s].added.end());
  }
  return edges;
}

OrderDeclaration chain_declaration(std::size_t chain_length) {
  FrameworkGrammar fw;
  fw.name = kFramework;
  for (std::size_t i = 0; i <= chain_length; ++i) fw.algorithms.push_back("R" + std::to_string(i));
  for (std::size_t i = 0; i < chain_length; ++i) {
    fw.alg_order.emplace_back("R" + std::to_string(i + 1), "R" + std::to_string(i));
  }
  OrderDeclaration d;
  d.frameworks.push_back(std::move(fw));
  return d;
}

Family generate_family(std::uint64_t seed, const Params& params, std::string program) {
  check_params(params);
  Rng rng(seed);
  Rng noise_rng(splitmix64(seed ^ 0x6e6f697365ULL));

  Family fam;
  fam.program = program;
  auto& truth = fam.truth;
  truth.seed = seed;
  truth.params = params;
  truth.program = program;

  // Node population: plain methods plus a block of targets per root cause.
  const std::size_t n = params.n_nodes;
  double special_weight = 0;
  for (std::size_t c = 0; c < 4; ++c) special_weight += params.tag_mix[c];
  std::array<std::size_t, kRootCauseCategories> counts{};
  std::size_t special = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    if (params.tag_mix[c] <= 0) continue;
    counts[c] = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.4 * n * params.tag_mix[c] / special_weight)));
    special += counts[c];
  }
  const std::size_t plain_count = n - special;

  Namer namer{rng};
  std::vector<MethodRef> nodes;
  std::set<MethodRef> seen;
  std::vector<std::size_t> plain_ids;
  std::array<std::vector<std::size_t>, kRootCauseCategories> targets;
  auto add_node = [&](MethodRef m) {
    while (!seen.insert(m).second) m.method += "x";
    nodes.push_back(std::move(m));
    return nodes.size() - 1;
  };
  for (std::size_t k = 0; k < plain_count; ++k) plain_ids.push_back(add_node(namer.plain(k)));
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t k = 0; k < counts[c]; ++k) {
      targets[c].push_back(add_node(namer.special(static_cast<RootCauseCategory>(c), k)));
    }
  }
  targets[static_cast<std::size_t>(RootCauseCategory::other)] = plain_ids;

  // Base edges over all node pairs.
  using IdEdge = std::pair<std::size_t, std::size_t>;
  std::set<IdEdge> base;
  if (params.n_edges * 2 > n * n) {
    std::vector<IdEdge> all;
    all.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) all.emplace_back(a, b);
    }
    shuffle(all, rng);
    base.insert(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(params.n_edges));
  } else {
    while (base.size() < params.n_edges) base.emplace(uniform_below(rng, n), uniform_below(rng, n));
  }
  auto to_edge = [&](const IdEdge& e) { return Edge{nodes[e.first], nodes[e.second]}; };

  std::vector<IdEdge> base_order(base.begin(), base.end());
  shuffle(base_order, rng);
  auto fp_count = static_cast<std::size_t>(std::llround(params.fp_ratio * static_cast<double>(base_order.size())));
  for (std::size_t i = 0; i < base_order.size(); ++i) {
    auto e = to_edge(base_order[i]);
    (i < fp_count ? truth.false_edges : truth.true_edges).insert(e);
    truth.base_edges.insert(std::move(e));
  }

  // Refinement chain.
  std::set<IdEdge> used = base;
  truth.steps.push_back({chain_variant(0), {}, {}});
  EdgeSet current = truth.base_edges;
  for (std::size_t s = 1; s <= params.chain_length; ++s) {
    StepTruth step;
    step.variant = chain_variant(s);

    std::vector<Edge> surviving;
    for (const auto& e : truth.false_edges) {
      if (current.contains(e)) surviving.push_back(e);
    }
    shuffle(surviving, rng);
    auto prune = static_cast<std::size_t>(std::floor(params.prune_ratio * static_cast<double>(surviving.size())));
    step.pruned_fp.insert(surviving.begin(), surviving.begin() + static_cast<std::ptrdiff_t>(prune));

    for (std::size_t v = 0; v < params.violations_per_step; ++v) {
      auto cat = weighted(params.tag_mix, rng);
      const auto& dsts = targets[cat];
      std::optional<IdEdge> fresh;
      for (int attempt = 0; attempt < 64 && !fresh; ++attempt) {
        IdEdge e{pick(plain_ids, rng), pick(dsts, rng)};
        if (!used.contains(e)) fresh = e;
      }
      if (!fresh) {
        std::vector<IdEdge> pool;
        for (auto a : plain_ids) {
          for (auto b : dsts) {
            if (!used.contains({a, b})) pool.emplace_back(a, b);
          }
        }
        if (pool.empty()) {
          throw ParamError("not enough fresh edges to plant " +
                           std::string(to_string(static_cast<RootCauseCategory>(cat))) + " violations");
        }
        fresh = pick(pool, rng);
      }
      used.insert(*fresh);
      step.added.insert(to_edge(*fresh));
      truth.planted_categories.push_back(static_cast<RootCauseCategory>(cat));
    }

    for (const auto& e : step.pruned_fp) current.erase(e);
    current.insert(step.added.begin(), step.added.end());
    truth.steps.push_back(std::move(step));
  }

  // Return types are noise: the canonical form drops them.
  std::map<MethodRef, std::string> returns;
  for (const auto& m : nodes) {
    returns.emplace(m, m.method == "<init>" || m.method == "<clinit>" ? "void" : pick(kReturns, noise_rng));
  }

  for (std::size_t s = 0; s <= params.chain_length; ++s) {
    CallGraph g;
    g.program = program;
    g.variant = truth.steps[s].variant;
    for (const auto& [from, to] : truth.edges_at(s)) g.add_edge(from, to);
    NoiseRecord rec;
    fam.rendered.push_back(render(g, program, s, params.noise, noise_rng, returns, rec));
    truth.noise.push_back(rec);
    fam.graphs.push_back(std::move(g));
  }
  return fam;
}

std::vector<PairReport> run_detector(const Family& family, const DetectorFn& detector) {
  std::vector<CallGraph> graphs;
  for (const auto& r : family.rendered) {
    graphs.push_back(normalize(read_graph(r.text, r.format, r.flavor), family.program, r.variant));
  }
  std::vector<PairReport> out;
  for (std::size_t hi = 1; hi < graphs.size(); ++hi) {
    for (std::size_t lo = 0; lo < hi; ++lo) out.push_back({hi, lo, detector(graphs[hi], graphs[lo])});
  }
  return out;
}

Verdict oracle_check(const Family& family, const std::vector<PairReport>& results) {
  Verdict v;
  auto miss = [&](std::string msg) {
    v.pass = false;
    v.mismatches.push_back(family.program + ": " + std::move(msg));
  };
  const auto& t = family.truth;
  const std::size_t k = t.steps.size();
  std::vector<EdgeSet> edges;
  for (std::size_t s = 0; s < k; ++s) edges.push_back(t.edges_at(s));

  std::set<std::pair<std::size_t, std::size_t>> covered;
  for (const auto& r : results) {
    if (r.hi >= k || r.lo >= r.hi) {
      miss("result for invalid pair (" + std::to_string(r.hi) + ", " + std::to_string(r.lo) + ")");
      continue;
    }
    covered.emplace(r.hi, r.lo);
    EdgeSet expected;
    std::set_difference(edges[r.hi].begin(), edges[r.hi].end(), edges[r.lo].begin(), edges[r.lo].end(),
                        std::inserter(expected, expected.end()));
    if (expected != r.reported) {
      miss("R" + std::to_string(r.hi) + " vs R" + std::to_string(r.lo) + ": expected " +
           std::to_string(expected.size()) + " violations, detector reported " + std::to_string(r.reported.size()));
    }
  }
  for (std::size_t hi = 1; hi < k; ++hi) {
    for (std::size_t lo = 0; lo < hi; ++lo) {
      if (!covered.contains({hi, lo})) {
        miss("no result for R" + std::to_string(hi) + " vs R" + std::to_string(lo));
      }
    }
  }

  // Legal refinement: TP stays put, FP only shrinks.
  auto restrict = [](const EdgeSet& e, const EdgeSet& labels) {
    EdgeSet out;
    std::set_intersection(e.begin(), e.end(), labels.begin(), labels.end(), std::inserter(out, out.end()));
    return out;
  };
  for (std::size_t s = 1; s < k; ++s) {
    auto tp_prev = restrict(edges[s - 1], t.true_edges);
    auto tp = restrict(edges[s], t.true_edges);
    auto fp_prev = restrict(edges[s - 1], t.false_edges);
    auto fp = restrict(edges[s], t.false_edges);
    if (tp != tp_prev) miss("true positives changed at step " + std::to_string(s));
    if (!std::includes(fp_prev.begin(), fp_prev.end(), fp.begin(), fp.end())) {
      miss("false positives grew at step " + std::to_string(s));
    }
    if (t.steps[s].added.empty() &&
        !std::includes(edges[s - 1].begin(), edges[s - 1].end(), edges[s].begin(), edges[s].end())) {
      miss("planted-free step " + std::to_string(s) + " is not a pure pruning");
    }
    if (s < family.graphs.size() && family.graphs[s].edges != edges[s]) {
      miss("noiseless graph " + std::to_string(s) + " disagrees with the planted sets");
    }
  }
  return v;
}

std::string truth_json(const std::vector<Family>& families) {
  ordered_json out = ordered_json::object();
  out["families"] = ordered_json::array();
  std::size_t total = 0;
  std::array<std::size_t, kRootCauseCategories> planted{};
  for (const auto& f : families) {
    const auto& t = f.truth;
    ordered_json j = ordered_json::object();
    j["program"] = f.program;
    j["seed"] = t.seed;
    ordered_json p = ordered_json::object();
    p["n_nodes"] = t.params.n_nodes;
    p["n_edges"] = t.params.n_edges;
    p["chain_length"] = t.params.chain_length;
    p["violations_per_step"] = t.params.violations_per_step;
    p["fp_ratio"] = t.params.fp_ratio;
    p["prune_ratio"] = t.params.prune_ratio;
    p["noise"] = t.params.noise;
    p["tag_mix"] = t.params.tag_mix;
    j["params"] = std::move(p);
    j["true_edges"] = edges_json(t.true_edges);
    j["false_edges"] = edges_json(t.false_edges);
    j["steps"] = ordered_json::array();
    for (std::size_t s = 0; s < t.steps.size(); ++s) {
      const auto& st = t.steps[s];
      ordered_json sj = ordered_json::object();
      sj["variant"] = st.variant.to_string();
      sj["pruned_fp"] = edges_json(st.pruned_fp);
      sj["added"] = ordered_json::array();
      for (const auto& e : st.added) {
        auto a = edge_json(e);
        a.push_back(std::string(to_string(tag_root_cause(e).category)));
        sj["added"].push_back(std::move(a));
        ++planted[static_cast<std::size_t>(tag_root_cause(e).category)];
      }
      if (s < t.noise.size()) {
        const auto& n = t.noise[s];
        sj["noise"] = {{"format", std::string(to_string(n.format))},
                       {"flavor", std::string(to_string(n.flavor))},
                       {"hashed_labels", n.hashed_labels},
                       {"split_nodes", n.split_nodes},
                       {"metadata_nodes", n.metadata_nodes}};
      }
      j["steps"].push_back(std::move(sj));
    }
    // Every ordered chain pair, as the campaign enumerates them.
    j["expected"] = ordered_json::array();
    std::size_t fam_total = 0;
    for (std::size_t hi = 1; hi < t.steps.size(); ++hi) {
      for (std::size_t lo = 0; lo < hi; ++lo) {
        std::size_t count = 0;
        for (std::size_t s = lo + 1; s <= hi; ++s) count += t.steps[s].added.size();
        j["expected"].push_back({{"hi", t.steps[hi].variant.to_string()},
                                 {"lo", t.steps[lo].variant.to_string()},
                                 {"violations", count}});
        fam_total += count;
      }
    }
    j["total_violations"] = fam_total;
    total += fam_total;
    out["families"].push_back(std::move(j));
  }
  out["total_violations"] = total;
  ordered_json tags = ordered_json::object();
  for (std::size_t c = 0; c < kRootCauseCategories; ++c) {
    tags[std::string(to_string(static_cast<RootCauseCategory>(c)))] = planted[c];
  }
  out["planted_tags"] = std::move(tags);
  return out.dump(2) + "\n";
}

void write_corpus(const std::vector<Family>& families, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::size_t longest = 1;
  Manifest manifest;
  manifest.spec = dir / "spec.json";
  for (const auto& f : families) {
    longest = std::max(longest, f.rendered.size() - 1);
    manifest.corpus.push_back(f.program);
    for (const auto& r : f.rendered) {
      write_file(dir / r.file_name, r.text);
      manifest.entries.push_back({f.program, r.variant, dir / r.file_name, r.format, r.flavor});
    }
  }
  write_file(dir / "spec.json", OrderSpec::build(chain_declaration(longest)).to_json());
  write_file(dir / "truth.json", truth_json(families));
  write_file(dir / "manifest.json", write_manifest(manifest, dir));
}

std::vector<Family> generate_corpus(std::uint64_t seed, const Params& params, std::size_t count) {
  std::vector<Family> out;
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < count; ++i) {
    state = splitmix64(state);
    auto digits = std::to_string(i);
    if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
    out.push_back(generate_family(state, params, "p" + digits));
  }
  return out;
}

}  // namespace cgm::synth
