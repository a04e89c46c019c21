#include <gtest/gtest.h>

#include <random>

#include "homq/algorithms.hpp"
#include "homq/analysis.hpp"
#include "homq/enumerate.hpp"
#include "homq/oracle.hpp"

using namespace homq;

TEST(Cycle2q, Examples) {
  const auto alg = cycle_detector_2query();
  const auto c1 = run_adaptive(alg, directed_cycle(1));
  EXPECT_EQ(c1.verdict, Verdict::Yes);
  EXPECT_EQ(c1.transcript, (Transcript{1, 1}));
  const auto p2 = run_adaptive(alg, directed_path(2));
  EXPECT_EQ(p2.verdict, Verdict::No);
  EXPECT_EQ(p2.transcript, (Transcript{3, 0}));
  EXPECT_EQ(run_adaptive(alg, disjoint_union(directed_cycle(3), directed_path(1))).verdict, Verdict::Yes);
}

TEST(Cycle2q, AgreesWithDfsUpToFourVertices) {
  const auto alg = cycle_detector_2query();
  for (const auto &d : digraphs_up_to(4)) {
    const auto r = run_adaptive(alg, d);
    ASSERT_EQ(r.query_count, 2u);
    ASSERT_EQ(r.verdict, verdict_of(has_directed_cycle(d)));
  }
}

TEST(Lovasz, Examples) {
  const LovaszDecider cyc(has_directed_cycle_class(), 3);
  const auto r = run_adaptive(cyc.algorithm(), directed_cycle(2));
  EXPECT_EQ(r.verdict, Verdict::Yes);
  EXPECT_TRUE(isomorphic(*cyc.identify(r.transcript), directed_cycle(2)));
  EXPECT_EQ(run_adaptive(lovasz_universal_decider(everything_class(), 3), directed_path(1)).verdict, Verdict::Yes);
  EXPECT_EQ(cyc.prefix_length(1), 2u);
  EXPECT_EQ(cyc.prefix_length(2), 12u);
  EXPECT_EQ(cyc.prefix_length(3), 116u);
  EXPECT_THROW(run_adaptive(cyc.algorithm(), directed_cycle(4)), GuardExceeded);
}

TEST(Lovasz, ThreeVertexTranscriptsAreDistinct) {
  const LovaszDecider dec(everything_class(), 3);
  std::set<Transcript> seen;
  for (const auto &d : enumerate_digraphs(3).representatives) ASSERT_TRUE(seen.insert(run_adaptive(dec.algorithm(), d).transcript).second);
}

TEST(Lovasz, AgreesWithClassesUpToThreeVertices) {
  for (const auto &cls : {has_directed_cycle_class(), even_components_class(), even_power_cycle_class(),
                          berge_acyclic_class(), nonzero_net_cycle_class()}) {
    const LovaszDecider dec(cls, 3);
    const auto alg = dec.algorithm();
    for (const auto &d : digraphs_up_to(3)) {
      const auto r = run_adaptive(alg, d);
      ASSERT_EQ(r.verdict, verdict_of(cls.contains(d))) << cls.name;
      ASSERT_TRUE(isomorphic(*dec.identify(r.transcript), d));
      ASSERT_EQ(r.query_count, 1 + dec.prefix_length(d.size()));
    }
  }
}

TEST(ClassPredicates, IsomorphismInvariant) {
  std::mt19937_64 rng(17);
  for (const auto &cls : named_classes())
    for (const auto &d : digraphs_up_to(3)) {
      std::vector<Element> perm(d.size());
      std::iota(perm.begin(), perm.end(), Element{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      ASSERT_EQ(cls.contains(d), cls.contains(relabel(d, perm))) << cls.name;
    }
  EXPECT_THROW(named_class("nope"), InvalidArgument);
}

TEST(EvenPowerCycle, Examples) {
  const auto cls = even_power_cycle_class();
  EXPECT_TRUE(cls.contains(directed_cycle(4)));
  EXPECT_FALSE(cls.contains(directed_cycle(2)));
  EXPECT_TRUE(cls.contains(directed_cycle(1)));
  EXPECT_TRUE(cls.contains(directed_cycle(16)));
  EXPECT_FALSE(cls.contains(directed_cycle(8)));
  EXPECT_TRUE(cls.contains(directed_path(3)));
  EXPECT_FALSE(even_power_cycle_class(false).contains(directed_path(3)));
  // shortest cycle decides, not the others
  EXPECT_FALSE(cls.contains(disjoint_union(directed_cycle(4), directed_cycle(2))));
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto &s : dn_family({n, Parity::Even})) EXPECT_TRUE(cls.contains(s));
}

TEST(DnFamily, Examples) {
  const auto even = dn_family({2, Parity::Even});
  ASSERT_EQ(even.size(), 2u);
  EXPECT_TRUE(isomorphic(even[0], scalar_multiple(4, directed_cycle(1))));
  EXPECT_TRUE(isomorphic(even[1], directed_cycle(4)));
  const auto odd = dn_family({2, Parity::Odd});
  ASSERT_EQ(odd.size(), 1u);
  EXPECT_TRUE(isomorphic(odd[0], scalar_multiple(2, directed_cycle(2))));
  for (std::size_t n = 1; n <= 6; ++n)
    for (auto p : {Parity::Even, Parity::Odd})
      for (const auto &s : dn_family({n, p})) EXPECT_EQ(s.size(), std::size_t{1} << n);
  EXPECT_THROW(dn_family({0, Parity::Even}), InvalidArgument);
}

TEST(DnSeparator, Examples) {
  const auto sep2 = dn_nonadaptive_separator(2);
  EXPECT_TRUE(sep2.accepts(AnswerVector{4, 4}));
  EXPECT_TRUE(sep2.accepts(AnswerVector{0, 0}));
  EXPECT_FALSE(sep2.accepts(AnswerVector{0, 4}));
  const auto sep1 = dn_nonadaptive_separator(1);
  ASSERT_EQ(sep1.queries.size(), 1u);
  EXPECT_EQ(run_non_adaptive(sep1, scalar_multiple(2, directed_cycle(1)), Semiring::Count).transcript, (Transcript{2}));
  EXPECT_EQ(run_non_adaptive(sep1, directed_cycle(2), Semiring::Count).transcript, (Transcript{0}));
}

TEST(DnSeparator, ExactOnFamilies) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto sep = dn_nonadaptive_separator(n);
    std::set<AnswerVector> vectors;
    for (std::size_t m = 0; m <= n; ++m) {
      const auto s = dn_member(n, m);
      const auto r = run_non_adaptive(sep, s, Semiring::Count);
      ASSERT_EQ(r.verdict, verdict_of(m % 2 == 0));
      for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(r.transcript[i], oracle_hom_count(sep.queries[i], s));
      vectors.insert(r.transcript);
    }
    ASSERT_EQ(vectors.size(), n + 1);
  }
}

TEST(DnBinarySearch, Examples) {
  const auto r3 = run_adaptive(dn_adaptive_binary_search(3), directed_cycle(8));
  EXPECT_EQ(r3.verdict, Verdict::No);
  EXPECT_LE(r3.query_count, 2u);
  const auto r1 = run_adaptive(dn_adaptive_binary_search(1), scalar_multiple(2, directed_cycle(1)));
  EXPECT_EQ(r1.verdict, Verdict::Yes);
  EXPECT_LE(r1.query_count, 1u);
}

TEST(DnBinarySearch, CorrectWithinBound) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto alg = dn_adaptive_binary_search(n);
    for (std::size_t m = 0; m <= n; ++m) {
      const auto r = run_adaptive(alg, dn_member(n, m));
      ASSERT_EQ(r.verdict, verdict_of(m % 2 == 0));
      ASSERT_LE(r.query_count, ceil_log2(n + 1));
    }
  }
}

TEST(AdaptiveNotBetter, KOne) {
  const auto inst = adaptive_not_better_instance(1, {2, 3});
  ASSERT_EQ(inst.algorithm.queries.size(), 1u);
  const auto &f = inst.algorithm.queries[0];
  EXPECT_EQ(oracle_hom_count(f, inst.tests[0]), 36);
  EXPECT_EQ(oracle_hom_count(f, inst.tests[1]), 0);
  EXPECT_EQ(hom_count(f, inst.tests[0]), 36);
  EXPECT_EQ(run_non_adaptive(inst.algorithm, inst.tests[0], Semiring::Count).verdict, Verdict::Yes);
  EXPECT_EQ(run_non_adaptive(inst.algorithm, inst.tests[1], Semiring::Count).verdict, Verdict::No);
}

TEST(AdaptiveNotBetter, KTwoShape) {
  const auto inst = adaptive_not_better_instance(2, {2, 3, 5, 7});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const auto v = hom_count(inst.algorithm.queries[i], inst.tests[j]);
      ASSERT_EQ(v != 0, i == j);
      if (i == j) ASSERT_EQ(v, boost::multiprecision::pow(HomCount(210), static_cast<unsigned>(inst.primes[i])));
    }
  for (std::size_t j = 0; j < 4; ++j)
    ASSERT_EQ(run_non_adaptive(inst.algorithm, inst.tests[j], Semiring::Count).verdict, verdict_of(j < 2));
}

TEST(AdaptiveNotBetter, Validation) {
  EXPECT_THROW(adaptive_not_better_instance(1, {2, 4}), InvalidArgument);
  EXPECT_THROW(adaptive_not_better_instance(1, {3, 3}), InvalidArgument);
  EXPECT_THROW(adaptive_not_better_instance(1, {2, 3, 5}), InvalidArgument);
  EXPECT_THROW(adaptive_not_better_instance(0, {}), InvalidArgument);
  EXPECT_THROW(adaptive_not_better_instance(3, {2, 3, 5, 7, 11, 13}), GuardExceeded);
}

TEST(Unary, Examples) {
  const auto sig = Signature::unary({"P"});
  const Structure s(sig, 2, {{{0}}});
  const auto alg = unary_full_decider(sig, everything_class());
  const auto r = run_non_adaptive(alg, s, Semiring::Count);
  EXPECT_EQ(r.transcript, (Transcript{2, 1}));
  EXPECT_TRUE(isomorphic(reconstruct_unary(sig, r.transcript), s));
  const auto empty = Structure::empty_relations(sig, 3);
  EXPECT_EQ(run_non_adaptive(alg, empty, Semiring::Count).transcript, (Transcript{3, 0}));
  EXPECT_THROW(unary_full_decider(Signature::digraph(), everything_class()), InvalidArgument);
  const std::vector<HomCount> bad{1, 2};
  EXPECT_THROW(reconstruct_unary(sig, bad), InvalidArgument);
}

TEST(Unary, ReconstructsAllSmallPQStructures) {
  const auto sig = Signature::unary({"P", "Q"});
  const ClassPredicate in_p{"some-P", [](const Structure &s) { return !s.relation("P").empty(); }};
  const auto alg = unary_full_decider(sig, in_p);
  for (std::size_t n = 1; n <= 2; ++n)
    for (const auto &s : enumerate_structures(sig, n, false)) {
      const auto r = run_non_adaptive(alg, s, Semiring::Count);
      ASSERT_EQ(r.query_count, 4u);
      ASSERT_TRUE(isomorphic(reconstruct_unary(sig, r.transcript), s));
      ASSERT_EQ(r.verdict, verdict_of(in_p.contains(s)));
    }
}

TEST(Distinguisher, SizeOne) {
  const auto f = brute_force_distinguisher(1, Signature::digraph());
  const auto loop = directed_cycle(1);
  const auto point = edgeless_singleton(Signature::digraph());
  EXPECT_NE(hom_count(loop, f), hom_count(point, f));
}

TEST(Distinguisher, SizeTwo) {
  const auto f = brute_force_distinguisher(2, Signature::digraph());
  const auto classes = enumerate_digraphs(2).representatives;
  ASSERT_EQ(classes.size(), 10u);
  std::set<HomCount> counts;
  for (const auto &h : classes) counts.insert(hom_count(h, f));
  EXPECT_EQ(counts.size(), 10u);
  EXPECT_THROW(brute_force_distinguisher(3, Signature::digraph()), GuardExceeded);
  DistinguisherOptions tiny;
  tiny.search_cap = 1;
  EXPECT_THROW(brute_force_distinguisher(2, Signature::digraph(), tiny), GuardExceeded);
}

TEST(Right2q, Examples) {
  EXPECT_EQ(hom_count(directed_cycle(3), complete_pair(Signature::digraph())), 8);
  EXPECT_EQ(exact_log2(HomCount(8)), 3u);
  EXPECT_FALSE(exact_log2(HomCount(6)).has_value());
  const auto bf = [](std::size_t n, const Signature &sig) { return brute_force_distinguisher(n, sig); };
  const auto alg = right_two_query_decider(has_directed_cycle_class(), Signature::digraph(), bf, 2);
  for (const auto &d : digraphs_up_to(2)) {
    const auto r = run_adaptive(alg, d);
    ASSERT_EQ(r.query_count, 2u);
    ASSERT_EQ(r.verdict, verdict_of(has_directed_cycle(d)));
  }
  EXPECT_THROW(run_adaptive(alg, directed_cycle(3)), GuardExceeded);
}

TEST(Right2q, RejectsNonDistinguishingOracle) {
  const auto bad = [](std::size_t, const Signature &sig) { return complete_pair(sig); };
  EXPECT_THROW(right_two_query_decider(everything_class(), Signature::digraph(), bad, 1), InvalidArgument);
}

TEST(UnboundedBooleanLeft, Examples) {
  const auto alg = unbounded_boolean_cycle_detector();
  const auto c2 = run_adaptive(alg, directed_cycle(2));
  EXPECT_EQ(c2.verdict, Verdict::Yes);
  EXPECT_EQ(c2.query_count, 4u);  // P_1, C_1, P_2, C_2
  const auto p2 = run_adaptive(alg, directed_path(2));
  EXPECT_EQ(p2.verdict, Verdict::No);
  EXPECT_EQ(p2.query_count, 5u);  // stops at P_3
  EXPECT_TRUE(isomorphic(p2.queries_issued.back(), directed_path(3)));
  const auto c1 = run_adaptive(alg, directed_cycle(1));
  EXPECT_EQ(c1.verdict, Verdict::Yes);
  EXPECT_EQ(c1.query_count, 2u);
}

TEST(UnboundedBooleanRight, Examples) {
  const auto alg = unbounded_boolean_nonzero_net_cycle_detector();
  const auto c2 = run_adaptive(alg, directed_cycle(2));
  EXPECT_EQ(c2.verdict, Verdict::Yes);
  EXPECT_EQ(c2.query_count, 6u);  // round 3
  EXPECT_EQ(c2.transcript, (Transcript{0, 1, 0, 1, 0, 0}));
  const Structure vee(Signature::digraph(), 3, {{{0, 1}, {2, 1}}});
  const auto v = run_adaptive(alg, vee);
  EXPECT_EQ(v.verdict, Verdict::No);
  EXPECT_EQ(v.query_count, 1u);
  const Structure zig(Signature::digraph(), 4, {{{0, 1}, {3, 1}, {3, 2}, {0, 2}}});
  EXPECT_EQ(run_adaptive(alg, zig).verdict, Verdict::No);
}

TEST(UnboundedBoolean, AgreeWithGroundTruthUpToFourVertices) {
  const auto left = unbounded_boolean_cycle_detector();
  const auto right = unbounded_boolean_nonzero_net_cycle_detector();
  for (const auto &d : digraphs_up_to(4)) {
    const auto l = run_adaptive(left, d);
    ASSERT_EQ(l.verdict, verdict_of(has_directed_cycle(d)));
    ASSERT_LE(l.query_count, 2 * (d.size() + 1));
    const auto r = run_adaptive(right, d);
    const auto g = gamma(d);
    ASSERT_EQ(r.verdict, verdict_of(g != 0));
    ASSERT_LE((r.query_count + 1) / 2, std::max<std::size_t>(d.size() - 1, g + 1));
  }
}
