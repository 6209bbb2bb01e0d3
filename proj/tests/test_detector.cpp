// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <random>

#include "cgm/detector.hpp"
#include "cgm/error.hpp"
#include "cgm/ingest.hpp"
#include "cgm/normalize.hpp"
#include "test_util.hpp"

namespace cgm {
namespace {

using testing::m;

Edge e(int a, int b) { return {m("p", "C", "m" + std::to_string(a)), m("p", "C", "m" + std::to_string(b))}; }

EdgeSet edges_range(int from, int to) {
  EdgeSet out;
  for (int i = from; i < to; ++i) out.insert(e(i, i + 1));
  return out;
}

Relation precision(const Variant& hi, const Variant& lo) {
  Relation r;
  r.left = hi;
  r.right = lo;
  return r;
}

const Variant kVta = Variant::parse("Soot:VTA");
const Variant kCha = Variant::parse("Soot:CHA");

TEST(Jaccard, HundredthExactly) {
  // 150 shared edges within a union of 15000.
  EdgeSet a = edges_range(0, 7575);
  EdgeSet b = edges_range(7425, 15000);
  EXPECT_EQ(jaccard(a, b), Rational(1, 100));
  EXPECT_EQ(format_percent(jaccard(a, b)), "1.0");
}

TEST(Jaccard, Extremes) {
  auto a = edges_range(0, 10);
  EXPECT_EQ(jaccard(a, a), Rational(1));
  EXPECT_EQ(jaccard(a, edges_range(20, 30)), Rational(0));
  EXPECT_EQ(jaccard({}, {}), Rational(1));
  EXPECT_EQ(jaccard(a, {}), Rational(0));
}

TEST(Jaccard, MatchesSetAlgebraOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = testing::random_edges(rng, 12, rng() % 30);
    auto b = testing::random_edges(rng, 12, rng() % 30);
    EdgeSet inter, uni;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(inter, inter.end()));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(uni, uni.end()));
    Rational want = uni.empty() ? Rational(1) : Rational(std::int64_t(inter.size()), std::int64_t(uni.size()));
    ASSERT_EQ(jaccard(a, b), want);
    ASSERT_EQ(jaccard(a, b), jaccard(b, a));
  }
}

TEST(FormatPercent, RoundsHalfUpToTenths) {
  EXPECT_EQ(format_percent(Rational(33, 35)), "94.3");
  EXPECT_EQ(format_percent(Rational(1, 2)), "50.0");
  EXPECT_EQ(format_percent(Rational(0)), "0.0");
  EXPECT_EQ(format_percent(Rational(1)), "100.0");
  EXPECT_EQ(format_percent(Rational(1, 2000)), "0.1");
  EXPECT_EQ(format_percent(Rational(1, 2001)), "0.0");
  EXPECT_EQ(format_percent(Rational(1, 8)), "12.5");
  EXPECT_EQ(format_percent(Rational(9999, 10000)), "100.0");
  EXPECT_EQ(format_percent(Rational(2, 3)), "66.7");
  EXPECT_THROW(format_percent(Rational(3, 2)), Error);
}

TEST(Violations, SetDifference) {
  auto hi = testing::graph("p", kVta, {e(1, 2), e(2, 3), e(3, 4)});
  auto lo = testing::graph("p", kCha, {e(1, 2), e(5, 6)});
  EXPECT_EQ(detect_violations(hi, lo), (EdgeSet{e(2, 3), e(3, 4)}));
  EXPECT_EQ(detect_violations(hi, lo, default_spec()), (EdgeSet{e(2, 3), e(3, 4)}));
}

TEST(Violations, OldSubsetOfNewIsClean) {
  auto hi = testing::graph("p", kVta, {e(1, 2)});
  auto lo = testing::graph("p", kCha, {e(1, 2), e(2, 3)});
  EXPECT_TRUE(detect_violations(hi, lo).empty());
}

TEST(Violations, FailedInputIsRejected) {
  auto hi = CallGraph::failed("p", kVta);
  auto lo = testing::graph("p", kCha, {e(1, 2)});
  EXPECT_THROW(detect_violations(hi, lo), InputFailed);
  EXPECT_THROW(detect_violations(lo, CallGraph::failed("p", kCha, GraphStatus::timeout)), InputFailed);
}

TEST(Violations, WrongOrderIsRejected) {
  auto hi = testing::graph("p", kCha, {e(1, 2)});
  auto lo = testing::graph("p", kVta, {});
  EXPECT_THROW(detect_violations(hi, lo, default_spec()), OrderMismatch);
  auto d1 = testing::graph("p", Variant::parse("Doop:Context-Insensitive"), {});
  EXPECT_THROW(detect_violations(d1, lo, default_spec()), OrderMismatch);
}

TEST(Equivalence, SymmetricDifferenceWithSides) {
  auto a = testing::graph("p", Variant::parse("Soot:CHA"), {e(1, 2), e(2, 3)});
  auto b = testing::graph("p", Variant::parse("SootUp:CHA"), {e(1, 2), e(4, 5), e(5, 6)});
  auto d = detect_equivalence_divergence(a, b);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.at(e(2, 3)), Direction::only_left);
  EXPECT_EQ(d.at(e(4, 5)), Direction::only_right);
  EXPECT_EQ(d.at(e(5, 6)), Direction::only_right);
}

TEST(Equivalence, SwapFlipsSides) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = testing::graph("p", kCha, testing::random_edges(rng, 10, rng() % 20));
    auto b = testing::graph("p", kCha, testing::random_edges(rng, 10, rng() % 20));
    auto ab = detect_equivalence_divergence(a, b);
    auto ba = detect_equivalence_divergence(b, a);
    ASSERT_EQ(ab.size(), ba.size());
    for (const auto& [edge, dir] : ab) {
      ASSERT_NE(ba.at(edge), dir);
      EXPECT_EQ(dir == Direction::only_left, a.edges.contains(edge) && !b.edges.contains(edge));
    }
  }
}

TEST(RootCause, Categories) {
  auto plain = m("a", "B", "run");
  EXPECT_EQ(tag_root_cause({plain, m("a", "Init", "<clinit>")}).category, RootCauseCategory::static_init);
  EXPECT_EQ(tag_root_cause({m("a", "Init", "<clinit>"), plain}).category, RootCauseCategory::static_init);
  EXPECT_EQ(tag_root_cause({plain, m("a", "B", "lambda$run$0")}).category, RootCauseCategory::invokedynamic_lambda);
  EXPECT_EQ(tag_root_cause({plain, m("java.lang.invoke", "LambdaMetafactory", "metafactory")}).category,
            RootCauseCategory::invokedynamic_lambda);
  EXPECT_EQ(tag_root_cause({plain, m("java.lang", "Class", "forName", {"java.lang.String"})}),
            (RootCause{RootCauseCategory::reflection, "java.lang.Class"}));
  EXPECT_EQ(tag_root_cause({plain, m("java.lang.reflect", "Method", "getName")}).category,
            RootCauseCategory::reflection);
  EXPECT_EQ(tag_root_cause({plain, m("x", "Y", "newInstance")}).category, RootCauseCategory::reflection);
  EXPECT_EQ(tag_root_cause({plain, m("x", "Y", "<init>")}), (RootCause{RootCauseCategory::lifecycle, "<init>"}));
  EXPECT_EQ(tag_root_cause({plain, m("x", "Y", "finalize")}).category, RootCauseCategory::lifecycle);
  EXPECT_EQ(tag_root_cause({plain, m("x", "Y", "z")}), RootCause{});
  // Source-side constructors are not lifecycle; target decides.
  EXPECT_EQ(tag_root_cause({m("x", "Y", "<init>"), plain}).category, RootCauseCategory::other);
}

TEST(RootCause, FirstRuleWins) {
  // <clinit> beats lambda, lambda beats reflection, reflection beats lifecycle.
  EXPECT_EQ(tag_root_cause({m("a", "B", "lambda$x$1"), m("a", "B", "<clinit>")}).category,
            RootCauseCategory::static_init);
  EXPECT_EQ(tag_root_cause({m("a", "B", "lambda$x$1"), m("java.lang", "Class", "forName")}).category,
            RootCauseCategory::invokedynamic_lambda);
  EXPECT_EQ(tag_root_cause({m("a", "B", "c"), m("java.lang", "Class", "<init>")}).category,
            RootCauseCategory::reflection);
}

TEST(Compare, MotivatingExample) {
  auto cha = normalize(read_dot_subset(read_file(testing::fixture("motivating_soot_cha.dot")), Flavor::soot),
                       "demo", Variant::parse("Soot:CHA"));
  auto rta = normalize(read_edge_list(read_file(testing::fixture("motivating_wala_rta.edges")), Flavor::wala),
                       "demo", Variant::parse("WALA:RTA"));
  auto rel = infer_relation(default_spec(), cha.variant, rta.variant);
  ASSERT_EQ(rel.left, rta.variant);
  auto r = compare(rta, cha, rel);
  EXPECT_EQ(r.status, ComparisonStatus::ok);
  EXPECT_EQ(r.shared_edges, 2u);
  EXPECT_EQ(r.union_edges, 4u);
  EXPECT_EQ(format_percent(r.jaccard), "50.0");
  ASSERT_EQ(r.violations.size(), 2u);
  for (const auto& v : r.violations) {
    EXPECT_EQ(v.cause.category, RootCauseCategory::invokedynamic_lambda);
    EXPECT_EQ(v.direction, Direction::only_left);
  }
  EXPECT_EQ(r.nodes_only_left, 1u);  // lambda$main$0; doSomething is isolated in the CHA dump
  // Argument order does not change what is reported, only which side it is on.
  auto swapped = compare(cha, rta, rel);
  ASSERT_EQ(swapped.violations.size(), 2u);
  EXPECT_EQ(swapped.violations[0].direction, Direction::only_right);
}

TEST(Compare, SoundnessReverseEdgeUsesPreciseSide) {
  auto hi = testing::graph("p", kVta, {e(1, 2), e(2, 3)});
  auto lo = testing::graph("p", kCha, {e(1, 2)});
  RelationSet sound = implicit_soundness(default_spec());
  for (const auto& r : sound) {
    if (r.domain != RelationDomain::algorithm) continue;
    if (!(r.left.algorithm == "CHA" && r.right.algorithm == "VTA" && r.left.framework == "Soot" &&
          r.right.framework == "Soot"))
      continue;
    Relation lifted = r;
    lifted.left = kCha;
    lifted.right = kVta;
    auto res = compare(lo, hi, lifted);
    ASSERT_EQ(res.violations.size(), 1u);
    EXPECT_EQ(res.violations[0].edge, e(2, 3));
    EXPECT_EQ(res.violations[0].direction, Direction::only_right);
    return;
  }
  FAIL() << "reverse soundness edge missing";
}

TEST(Compare, Errors) {
  auto a = testing::graph("p", kVta, {});
  auto b = testing::graph("q", kCha, {});
  EXPECT_THROW(compare(a, b, precision(kVta, kCha)), ProgramMismatch);
  auto c = testing::graph("p", kCha, {});
  EXPECT_THROW(compare(a, c, precision(kVta, Variant::parse("Soot:RTA"))), OrderMismatch);
}

TEST(Compare, FailedInputIsSkipped) {
  auto a = CallGraph::failed("p", kVta);
  auto b = testing::graph("p", kCha, {e(1, 2)});
  auto r = compare(a, b, precision(kVta, kCha));
  EXPECT_EQ(r.status, ComparisonStatus::skipped_failed_input);
  EXPECT_TRUE(r.violations.empty());
}

// Removing edges from the more precise graph never creates violations, and
// adding edges to the less precise one never does either.
TEST(Properties, PruningIsSafe) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto hi_edges = testing::random_edges(rng, 10, 5 + rng() % 25);
    auto lo_edges = testing::random_edges(rng, 10, 5 + rng() % 25);
    auto base = detect_violations(testing::graph("p", kVta, hi_edges), testing::graph("p", kCha, lo_edges));
    auto pruned = hi_edges;
    for (auto it = pruned.begin(); it != pruned.end();) it = (rng() % 2) ? pruned.erase(it) : std::next(it);
    auto after = detect_violations(testing::graph("p", kVta, pruned), testing::graph("p", kCha, lo_edges));
    ASSERT_TRUE(std::includes(base.begin(), base.end(), after.begin(), after.end()));
    auto grown = lo_edges;
    for (const auto& x : testing::random_edges(rng, 10, 10)) grown.insert(x);
    auto widened = detect_violations(testing::graph("p", kVta, hi_edges), testing::graph("p", kCha, grown));
    ASSERT_TRUE(std::includes(base.begin(), base.end(), widened.begin(), widened.end()));
  }
}

TEST(Properties, ViolationsAreExactlyHiMinusLo) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    auto hi = testing::random_edges(rng, 8, rng() % 30);
    auto lo = testing::random_edges(rng, 8, rng() % 30);
    auto got = detect_violations(testing::graph("p", kVta, hi), testing::graph("p", kCha, lo));
    for (const auto& x : hi) ASSERT_EQ(got.contains(x), !lo.contains(x));
    for (const auto& x : got) ASSERT_TRUE(hi.contains(x));
    if (std::includes(lo.begin(), lo.end(), hi.begin(), hi.end())) {
      ASSERT_TRUE(got.empty());
    }
  }
}

}  // namespace
}  // namespace cgm
