// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include "cgm/detector.hpp"

#include <algorithm>
#include <iterator>

#include <boost/multiprecision/cpp_int.hpp>

#include "cgm/error.hpp"

namespace cgm {

Rational jaccard(const EdgeSet& a, const EdgeSet& b) {
  const EdgeSet& small = a.size() <= b.size() ? a : b;
  const EdgeSet& large = a.size() <= b.size() ? b : a;
  std::int64_t shared = 0;
  for (const auto& e : small) shared += large.contains(e) ? 1 : 0;
  auto uni = static_cast<std::int64_t>(a.size() + b.size()) - shared;
  if (uni == 0) return Rational(1);
  return Rational(shared, uni);
}

std::string format_percent(const Rational& ratio) {
  if (ratio < 0 || ratio > 1) throw Error("percentage ratio out of range");
  // tenths of a percent, rounded half up: floor((1000 n + d/2) / d)
  boost::multiprecision::int128_t n = ratio.numerator();
  boost::multiprecision::int128_t d = ratio.denominator();
  auto tenths = static_cast<std::int64_t>((2000 * n + d) / (2 * d));
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

namespace {

void require_ok(const CallGraph& g) {
  if (g.status != GraphStatus::ok) {
    throw InputFailed(g.program + " " + g.variant.to_string() + " has status " +
                      std::string(to_string(g.status)));
  }
}

void require_same_program(const CallGraph& a, const CallGraph& b) {
  if (a.program != b.program) {
    throw ProgramMismatch("cannot compare program '" + a.program + "' with program '" + b.program + "'");
  }
}

}  // namespace

EdgeSet detect_violations(const CallGraph& hi, const CallGraph& lo) {
  require_ok(hi);
  require_ok(lo);
  EdgeSet out;
  std::set_difference(hi.edges.begin(), hi.edges.end(), lo.edges.begin(), lo.edges.end(),
                      std::inserter(out, out.end()));
  return out;
}

EdgeSet detect_violations(const CallGraph& hi, const CallGraph& lo, const OrderSpec& spec) {
  require_same_program(hi, lo);
  if (!spec.precedes(hi.variant, lo.variant)) {
    throw OrderMismatch(hi.variant.to_string() + " is not declared at least as precise as " +
                        lo.variant.to_string());
  }
  return detect_violations(hi, lo);
}

std::string_view to_string(Direction direction) {
  return direction == Direction::only_left ? "only-left" : "only-right";
}

std::map<Edge, Direction> detect_equivalence_divergence(const CallGraph& a, const CallGraph& b) {
  require_ok(a);
  require_ok(b);
  std::map<Edge, Direction> out;
  auto ia = a.edges.begin();
  auto ib = b.edges.begin();
  while (ia != a.edges.end() || ib != b.edges.end()) {
    if (ib == b.edges.end() || (ia != a.edges.end() && *ia < *ib)) {
      out.emplace_hint(out.end(), *ia++, Direction::only_left);
    } else if (ia == a.edges.end() || *ib < *ia) {
      out.emplace_hint(out.end(), *ib++, Direction::only_right);
    } else {
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::string_view to_string(RootCauseCategory category) {
  switch (category) {
    case RootCauseCategory::static_init: return "static-init";
    case RootCauseCategory::invokedynamic_lambda: return "invokedynamic-lambda";
    case RootCauseCategory::reflection: return "reflection";
    case RootCauseCategory::lifecycle: return "lifecycle";
    case RootCauseCategory::other: return "other";
  }
  return "other";
}

RootCause tag_root_cause(const Edge& edge) {
  const auto& [src, dst] = edge;
  for (const auto* m : {&src, &dst}) {
    if (m->method == "<clinit>") return {RootCauseCategory::static_init, "<clinit>"};
  }
  for (const auto* m : {&src, &dst}) {
    if (m->method.starts_with("lambda$")) return {RootCauseCategory::invokedynamic_lambda, "lambda$"};
    for (const char* needle : {"InvokeDynamic", "Metafactory", "metafactory"}) {
      if (m->class_name.find(needle) != std::string::npos || m->method.find(needle) != std::string::npos) {
        return {RootCauseCategory::invokedynamic_lambda, needle};
      }
    }
  }
  auto cls = dst.qualified_class();
  if (cls == "java.lang.Class") return {RootCauseCategory::reflection, "java.lang.Class"};
  if (dst.package == "java.lang.reflect" || dst.package.starts_with("java.lang.reflect.")) {
    return {RootCauseCategory::reflection, "java.lang.reflect.*"};
  }
  for (const char* name : {"forName", "invoke", "newInstance"}) {
    if (dst.method == name) return {RootCauseCategory::reflection, name};
  }
  for (const char* name : {"<init>", "finalize"}) {
    if (dst.method == name) return {RootCauseCategory::lifecycle, name};
  }
  return {};
}

std::string_view to_string(ComparisonStatus status) {
  return status == ComparisonStatus::ok ? "ok" : "skipped-failed-input";
}

std::array<std::size_t, kRootCauseCategories> ComparisonResult::tag_counts() const {
  std::array<std::size_t, kRootCauseCategories> counts{};
  for (const auto& v : violations) ++counts[static_cast<std::size_t>(v.cause.category)];
  return counts;
}

ComparisonResult compare(const CallGraph& left, const CallGraph& right, const Relation& relation) {
  require_same_program(left, right);
  bool forward = relation.left == left.variant && relation.right == right.variant;
  bool backward = relation.left == right.variant && relation.right == left.variant;
  if (!forward && !backward) {
    throw OrderMismatch("relation " + relation.to_string() + " does not relate " + left.variant.to_string() +
                        " and " + right.variant.to_string());
  }

  ComparisonResult result;
  result.program = left.program;
  result.left = left.variant;
  result.right = right.variant;
  result.relation_kind = relation.kind;
  if (left.status != GraphStatus::ok || right.status != GraphStatus::ok) {
    result.status = ComparisonStatus::skipped_failed_input;
    return result;
  }

  result.jaccard = jaccard(left.edges, right.edges);
  for (const auto& e : left.edges) result.shared_edges += right.edges.contains(e) ? 1 : 0;
  result.union_edges = left.edges.size() + right.edges.size() - result.shared_edges;
  for (const auto& n : left.nodes) result.nodes_only_left += right.nodes.contains(n) ? 0 : 1;
  for (const auto& n : right.nodes) result.nodes_only_right += left.nodes.contains(n) ? 0 : 1;

  if (relation.kind == RelationKind::equivalence) {
    for (const auto& [edge, dir] : detect_equivalence_divergence(left, right)) {
      result.violations.push_back({edge, dir, tag_root_cause(edge)});
    }
    return result;
  }

  // Which graph carries the more precise variant.
  const Variant& precise = relation.left_is_precise ? relation.left : relation.right;
  bool left_is_hi = forward && backward ? true : precise == left.variant;
  const CallGraph& hi = left_is_hi ? left : right;
  const CallGraph& lo = left_is_hi ? right : left;
  auto dir = left_is_hi ? Direction::only_left : Direction::only_right;
  for (const auto& edge : detect_violations(hi, lo)) {
    result.violations.push_back({edge, dir, tag_root_cause(edge)});
  }
  return result;
}

}  // namespace cgm
