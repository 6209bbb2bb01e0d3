// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "cgm/graph.hpp"
#include "cgm/order_spec.hpp"

namespace cgm {

using Rational = boost::rational<std::int64_t>;

/// |a ∩ b| / |a ∪ b|, exactly. Two empty sets are identical: 1.
Rational jaccard(const EdgeSet& a, const EdgeSet& b);

/// Rounds a ratio in [0,1] to tenths of a percent ("94.3"), half up.
std::string format_percent(const Rational& ratio);

/// E(hi) \ E(lo): edges the more precise result has and the less precise
/// one lacks. Throws InputFailed if either graph is not ok.
EdgeSet detect_violations(const CallGraph& hi, const CallGraph& lo);

/// Same, after checking hi.variant >= lo.variant in the order spec's product
/// order. Throws OrderMismatch.
EdgeSet detect_violations(const CallGraph& hi, const CallGraph& lo, const OrderSpec& spec);

enum class Direction { only_left, only_right };
std::string_view to_string(Direction direction);

/// E(a) △ E(b), each edge tagged with the side it appears on.
std::map<Edge, Direction> detect_equivalence_divergence(const CallGraph& a, const CallGraph& b);

enum class RootCauseCategory { static_init, invokedynamic_lambda, reflection, lifecycle, other };
inline constexpr std::size_t kRootCauseCategories = 5;

std::string_view to_string(RootCauseCategory category);

struct RootCause {
  RootCauseCategory category = RootCauseCategory::other;
  std::string matched_pattern;  // empty iff category == other

  bool operator==(const RootCause&) const = default;
};

/// First matching rule wins: static-init, invokedynamic-lambda, reflection,
/// lifecycle, other.
RootCause tag_root_cause(const Edge& edge);

struct Violation {
  Edge edge;
  Direction direction = Direction::only_left;
  RootCause cause;
};

enum class ComparisonStatus { ok, skipped_failed_input };
std::string_view to_string(ComparisonStatus status);

struct ComparisonResult {
  std::string program;
  Variant left;
  Variant right;
  RelationKind relation_kind = RelationKind::precision;
  Rational jaccard{1};
  std::size_t shared_edges = 0;
  std::size_t union_edges = 0;
  std::vector<Violation> violations;  // sorted by edge
  ComparisonStatus status = ComparisonStatus::ok;
  // Node-set differences are reported, never counted as violations.
  std::size_t nodes_only_left = 0;
  std::size_t nodes_only_right = 0;

  std::array<std::size_t, kRootCauseCategories> tag_counts() const;
};

/// Dispatches on the relation kind: precision and implicit-soundness
/// relations check the more precise side against the other, equivalence
/// relations take the symmetric difference. Result left/right follow the
/// argument order. Failed inputs yield status skipped_failed_input.
///
/// Throws ProgramMismatch, OrderMismatch (relation does not name the two
/// graphs' variants).
ComparisonResult compare(const CallGraph& left, const CallGraph& right, const Relation& relation);

}  // namespace cgm
