// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cgm {

/// A normalized method identity in the unified `package.Class.method(args)`
/// form. Return types are not part of the identity.
struct MethodRef {
  std::string package;  // dot-separated, empty for the default package
  std::string class_name;
  std::string method;
  std::vector<std::string> params;  // canonical source-type names

  /// Renders `package.Class.method(t1,t2)`; default-package classes have no
  /// leading dot.
  std::string to_string() const;

  /// `package.Class`, or just `Class` in the default package.
  std::string qualified_class() const;

  auto operator<=>(const MethodRef&) const = default;
  bool operator==(const MethodRef&) const = default;
};

using Edge = std::pair<MethodRef, MethodRef>;
using EdgeSet = std::set<Edge>;
using NodeSet = std::set<MethodRef>;

/// Set of configuration flags. The empty set is the baseline (BS).
using ConfigSet = std::set<std::string>;

/// "BS" for the empty set, otherwise the sorted flags joined with '+'.
std::string config_to_string(const ConfigSet& config);
/// Inverse of config_to_string; accepts flags in any order ("OS+FS").
ConfigSet config_from_string(std::string_view text);

/// Who produced a graph: (framework, algorithm, configuration flags).
struct Variant {
  std::string framework;
  std::string algorithm;
  ConfigSet config;

  /// `framework:algorithm:CONFIG`, e.g. `WALA:0-CFA:FS+OS`.
  std::string to_string() const;
  /// Parses `framework:algorithm[:CONFIG]`; a missing config means BS.
  static Variant parse(std::string_view text);

  auto operator<=>(const Variant&) const = default;
  bool operator==(const Variant&) const = default;
};

/// Signature dialect of raw labels.
enum class Flavor { canonical, soot, wala, doop };

std::string_view to_string(Flavor flavor);
/// Accepts `canonical|soot|wala|doop` and the `-style` spellings.
std::optional<Flavor> flavor_from_string(std::string_view text);

/// File dialect a graph arrived in.
enum class GraphFormat { canonical_json, edge_list, dot };

std::string_view to_string(GraphFormat format);
/// Accepts `json|canonical-json`, `edges|edge-list`, `dot`.
std::optional<GraphFormat> format_from_string(std::string_view text);

enum class GraphStatus { ok, failed, timeout };

std::string_view to_string(GraphStatus status);
std::optional<GraphStatus> status_from_string(std::string_view text);

/// Metadata carried by self-describing graph files (canonical JSON).
struct GraphHeader {
  std::optional<std::string> program;
  std::optional<Variant> variant;
  std::optional<GraphStatus> status;
};

/// A graph as read from disk, before normalization. Node ids are opaque.
struct RawGraph {
  std::map<std::string, std::string> nodes;  // id -> raw label
  std::set<std::pair<std::string, std::string>> edges;
  GraphFormat format = GraphFormat::canonical_json;
  Flavor flavor = Flavor::canonical;
  GraphHeader header;

  /// Adds a node, keeping an existing label unless it is empty.
  void add_node(const std::string& id, const std::string& label);
  /// Adds an edge; undeclared endpoints are declared with label = id.
  void add_edge(const std::string& from, const std::string& to);
};

/// A normalized call graph of one program under one analysis variant.
struct CallGraph {
  std::string program;
  Variant variant;
  EdgeSet edges;
  NodeSet nodes;  // superset of edge endpoints
  GraphStatus status = GraphStatus::ok;

  static CallGraph failed(std::string program, Variant variant,
                          GraphStatus status = GraphStatus::failed);

  void add_edge(const MethodRef& from, const MethodRef& to);
};

}  // namespace cgm
