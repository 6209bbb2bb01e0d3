// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "cgm/graph.hpp"

namespace cgm {

/// A graph file bound to the variant and program it represents.
struct GraphFile {
  std::filesystem::path path;
  GraphFormat format = GraphFormat::canonical_json;
  Flavor signature_flavor = Flavor::canonical;
  std::string program;
  Variant variant;
};

/// Canonical JSON:
///   {"program":..,"variant":{"framework":..,"algorithm":..,"config":[..]},
///    "status":"ok|failed|timeout","nodes":[..],"edges":[[src,dst],..]}
/// Only `nodes` and `edges` are required; node ids are the labels.
/// Throws SchemaError (byte offset + field path).
RawGraph read_canonical_json(std::string_view text, Flavor flavor = Flavor::canonical);

/// One `SRC -> DST` per line; lines whose first non-blank character is `#`
/// are comments. Throws LineError.
RawGraph read_edge_list(std::string_view text, Flavor flavor = Flavor::canonical);

/// Restricted DOT: `digraph [id] { ... }` with node statements carrying an
/// optional `label=`, `a -> b` edge statements and ignored attribute
/// statements. Throws DotSyntaxError.
RawGraph read_dot_subset(std::string_view text, Flavor flavor = Flavor::canonical);

RawGraph read_graph(std::string_view text, GraphFormat format, Flavor flavor);

/// Guesses a format from the extension and, failing that, the content.
GraphFormat sniff_format(const std::filesystem::path& path, std::string_view text);

/// Reads a whole file. Throws Error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Deterministic canonical JSON: nodes sorted, edges sorted by index pair,
/// keys in schema order, a single trailing newline.
std::string write_canonical_json(const RawGraph& graph);
std::string write_canonical_json(const CallGraph& graph);

std::string write_edge_list(const RawGraph& graph);
std::string write_dot(const RawGraph& graph, std::string_view name = "cg");

}  // namespace cgm
