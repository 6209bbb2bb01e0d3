// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include "cgm/graph.hpp"

#include "cgm/error.hpp"

namespace cgm {

std::string MethodRef::qualified_class() const {
  return package.empty() ? class_name : package + "." + class_name;
}

std::string MethodRef::to_string() const {
  std::string out = qualified_class();
  out += '.';
  out += method;
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i != 0) out += ',';
    out += params[i];
  }
  out += ')';
  return out;
}

std::string config_to_string(const ConfigSet& config) {
  if (config.empty()) return "BS";
  std::string out;
  for (const auto& flag : config) {
    if (!out.empty()) out += '+';
    out += flag;
  }
  return out;
}

ConfigSet config_from_string(std::string_view text) {
  ConfigSet out;
  if (text.empty() || text == "BS") return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto plus = text.find('+', start);
    auto flag = text.substr(start, plus == std::string_view::npos ? plus : plus - start);
    if (flag.empty()) throw Error("empty flag in configuration '" + std::string(text) + "'");
    if (flag != "BS") out.emplace(flag);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

std::string Variant::to_string() const {
  return framework + ":" + algorithm + ":" + config_to_string(config);
}

Variant Variant::parse(std::string_view text) {
  auto first = text.find(':');
  if (first == std::string_view::npos || first == 0) {
    throw Error("variant '" + std::string(text) + "' is not framework:algorithm[:config]");
  }
  Variant v;
  v.framework = std::string(text.substr(0, first));
  auto rest = text.substr(first + 1);
  // Algorithm names never contain ':'; the config is whatever follows the
  // second separator.
  auto second = rest.find(':');
  v.algorithm = std::string(rest.substr(0, second));
  if (v.algorithm.empty()) {
    throw Error("variant '" + std::string(text) + "' has an empty algorithm");
  }
  if (second != std::string_view::npos) v.config = config_from_string(rest.substr(second + 1));
  return v;
}

std::string_view to_string(Flavor flavor) {
  switch (flavor) {
    case Flavor::canonical: return "canonical";
    case Flavor::soot: return "soot";
    case Flavor::wala: return "wala";
    case Flavor::doop: return "doop";
  }
  return "canonical";
}

std::optional<Flavor> flavor_from_string(std::string_view text) {
  if (text == "canonical") return Flavor::canonical;
  if (text == "soot" || text == "soot-style") return Flavor::soot;
  if (text == "wala" || text == "wala-style") return Flavor::wala;
  if (text == "doop" || text == "doop-style") return Flavor::doop;
  return std::nullopt;
}

std::string_view to_string(GraphFormat format) {
  switch (format) {
    case GraphFormat::canonical_json: return "canonical-json";
    case GraphFormat::edge_list: return "edge-list";
    case GraphFormat::dot: return "dot";
  }
  return "canonical-json";
}

std::optional<GraphFormat> format_from_string(std::string_view text) {
  if (text == "json" || text == "canonical-json") return GraphFormat::canonical_json;
  if (text == "edges" || text == "edge-list") return GraphFormat::edge_list;
  if (text == "dot") return GraphFormat::dot;
  return std::nullopt;
}

std::string_view to_string(GraphStatus status) {
  switch (status) {
    case GraphStatus::ok: return "ok";
    case GraphStatus::failed: return "failed";
    case GraphStatus::timeout: return "timeout";
  }
  return "ok";
}

std::optional<GraphStatus> status_from_string(std::string_view text) {
  if (text == "ok") return GraphStatus::ok;
  if (text == "failed") return GraphStatus::failed;
  if (text == "timeout") return GraphStatus::timeout;
  return std::nullopt;
}

void RawGraph::add_node(const std::string& id, const std::string& label) {
  auto [it, inserted] = nodes.emplace(id, label);
  if (!inserted && it->second.empty()) it->second = label;
}

void RawGraph::add_edge(const std::string& from, const std::string& to) {
  nodes.emplace(from, from);
  nodes.emplace(to, to);
  edges.emplace(from, to);
}

CallGraph CallGraph::failed(std::string program, Variant variant, GraphStatus status) {
  CallGraph g;
  g.program = std::move(program);
  g.variant = std::move(variant);
  g.status = status == GraphStatus::ok ? GraphStatus::failed : status;
  return g;
}

void CallGraph::add_edge(const MethodRef& from, const MethodRef& to) {
  nodes.insert(from);
  nodes.insert(to);
  edges.emplace(from, to);
}

}  // namespace cgm
