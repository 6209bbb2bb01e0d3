// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cgm/graph.hpp"

namespace cgm {

/// Removes terminal `_[0-9a-f]{6,}` tokens, repeatedly, until none is left.
/// Everything else is preserved byte-for-byte.
std::string strip_artifacts(std::string_view label);

/// Replaces node ids with their (artifact-stripped) labels. Ids that end up
/// with the same label are merged and their edges unioned. The returned
/// graph's node map is the identity.
///
/// Throws MissingLabel when an edge endpoint has no (or an empty) label.
RawGraph resolve_nodes(const RawGraph& raw, std::size_t* merged_ids = nullptr);

/// Label prefixes dropped by filter_metadata by default.
std::vector<std::string> default_denylist();

/// Drops nodes whose label starts with any denylisted pattern, together with
/// every incident edge. Patterns are literal; a full label is its own prefix.
RawGraph filter_metadata(const RawGraph& graph, const std::vector<std::string>& denylist);

/// Parses one artifact-stripped label in the given dialect into a MethodRef.
/// Return types are discarded, JVM descriptors become source-type names,
/// generic arguments are erased and varargs become arrays.
///
/// Throws UnparseableSignature.
MethodRef canonicalize_signature(std::string_view label, Flavor flavor);

/// Renders a MethodRef in a dialect. `return_type` is a source-type name and
/// is only used by dialects that print one.
std::string render_signature(const MethodRef& ref, Flavor flavor,
                             std::string_view return_type = "void");

struct NormalizeOptions {
  std::vector<std::string> denylist = default_denylist();
};

struct NormalizeStats {
  std::size_t merged_ids = 0;            // raw ids folded by resolve_nodes
  std::size_t filtered_nodes = 0;        // removed by filter_metadata
  std::size_t filtered_edges = 0;
  std::size_t canonical_collisions = 0;  // distinct labels, same MethodRef
};

struct Normalized {
  CallGraph graph;
  NormalizeStats stats;
};

/// strip_artifacts, resolve_nodes, filter_metadata, canonicalize_signature,
/// in that order. The result has status ok.
Normalized normalize_detailed(const RawGraph& raw, std::string program, Variant variant,
                              const NormalizeOptions& options = {});

inline CallGraph normalize(const RawGraph& raw, std::string program, Variant variant,
                           const NormalizeOptions& options = {}) {
  return normalize_detailed(raw, std::move(program), std::move(variant), options).graph;
}

}  // namespace cgm
