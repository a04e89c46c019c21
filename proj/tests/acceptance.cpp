// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "homq/algorithms.hpp"
#include "homq/analysis.hpp"
#include "homq/core.hpp"
#include "homq/datalog.hpp"
#include "homq/enumerate.hpp"
#include "homq/experiments.hpp"
#include "homq/oracle.hpp"
#include "oracles.hpp"

using namespace homq;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string n_of(std::size_t x) { return std::to_string(x); }

Outcome from_report(const experiments::ExperimentReport &r) {
  if (r.passed()) return {true, r.id + " PASS"};
  return {false, r.text()};
}

Outcome c1_lemma42() { return from_report(experiments::experiment_lemma42(4, 3, 4)); }

Outcome c2_cycle_maps() {
  std::size_t checks = 0, bad = 0;
  for (const auto &a : digraphs_up_to(4))
    for (std::uint64_t n = 1; n <= 6; ++n) {
      ++checks;
      const auto g = gamma(a);
      const bool divides = g % n == 0;  // n | 0 for every n
      if (divides != oracle_hom_exists(a, directed_cycle(n)) || divides != maps_to_cycle(a, n)) ++bad;
    }
  return {bad == 0, n_of(checks) + " checks, " + n_of(bad) + " mismatches"};
}

Outcome c3_gamma_cycles() {
  std::size_t checks = 0, bad = 0;
  const auto small = digraphs_up_to(4);
  for (const auto &d : small) {
    ++checks;
    if (gamma(d) != reference::cycle_enumeration_gamma(d)) ++bad;
  }
  reference::for_each_five_vertex_extension(enumerate_digraphs(4).representatives, [&](const Structure &d) {
    ++checks;
    if (gamma(d) != reference::cycle_enumeration_gamma(d)) ++bad;
  });
  return {bad == 0, n_of(checks) + " digraphs (5-vertex ones via extensions), " + n_of(bad) + " mismatches"};
}

Outcome c4_separator() {
  std::size_t bad = 0, entries = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto sep = dn_nonadaptive_separator(n);
    std::set<AnswerVector> seen;
    for (std::size_t m = 0; m <= n; ++m) {
      const auto s = dn_member(n, m);
      const auto r = run_non_adaptive(sep, s, Semiring::Count);
      if (r.verdict != verdict_of(m % 2 == 0)) ++bad;
      if (!seen.insert(r.transcript).second) ++bad;
      for (std::size_t i = 0; i < sep.queries.size(); ++i, ++entries)
        if (r.transcript[i] != oracle_hom_count(sep.queries[i], s)) ++bad;
    }
  }
  return {bad == 0, n_of(entries) + " oracle entries, " + n_of(bad) + " failures"};
}

Outcome c5_binary_search() {
  std::size_t bad = 0, runs = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto alg = dn_adaptive_binary_search(n);
    for (std::size_t m = 0; m <= n; ++m, ++runs) {
      const auto r = run_adaptive(alg, dn_member(n, m));
      if (r.verdict != verdict_of(m % 2 == 0) || r.query_count > ceil_log2(n + 1)) ++bad;
    }
  }
  return {bad == 0, n_of(runs) + " runs, " + n_of(bad) + " failures"};
}

Outcome c6_thm46() {
  const auto inst = adaptive_not_better_instance(1, {2, 3});
  const auto &f = inst.algorithm.queries.at(0);
  const auto d = oracle_hom_count(f, inst.tests[0]);
  const auto off = oracle_hom_count(f, inst.tests[1]);
  const bool accepts_ok = run_non_adaptive(inst.algorithm, inst.tests[0], Semiring::Count).verdict == Verdict::Yes &&
                          run_non_adaptive(inst.algorithm, inst.tests[1], Semiring::Count).verdict == Verdict::No;
  return {d == 36 && off == 0 && accepts_ok, "diagonal " + d.str() + ", off-diagonal " + off.str()};
}

Outcome c7_cycle2q() {
  const auto alg = cycle_detector_2query();
  std::size_t runs = 0, bad = 0;
  for (const auto &d : digraphs_up_to(4)) {
    ++runs;
    const auto r = run_adaptive(alg, d);
    if (r.query_count != 2 || r.verdict != verdict_of(reference::has_cycle_by_peeling(d))) ++bad;
  }
  return {bad == 0, n_of(runs) + " digraphs, " + n_of(bad) + " disagreements"};
}

Outcome c8_lovasz() {
  std::size_t runs = 0, bad = 0;
  for (const auto &cls : {has_directed_cycle_class(), even_components_class(), even_power_cycle_class(),
                          berge_acyclic_class(), nonzero_net_cycle_class()}) {
    const LovaszDecider dec(cls, 3);
    const auto alg = dec.algorithm();
    for (const auto &d : digraphs_up_to(3)) {
      ++runs;
      const auto r = run_adaptive(alg, d);
      const auto match = dec.identify(r.transcript);
      if (!match || !isomorphic(*match, d) || r.verdict != verdict_of(cls.contains(d))) ++bad;
    }
  }
  return {bad == 0, n_of(runs) + " runs over 5 classes, " + n_of(bad) + " failures"};
}

Outcome c9_left_unbounded() {
  const auto alg = unbounded_boolean_cycle_detector();
  std::size_t bad = 0, runs = 0;
  for (const auto &d : digraphs_up_to(4)) {
    ++runs;
    const auto r = run_adaptive(alg, d);
    if (r.verdict != verdict_of(reference::has_cycle_by_peeling(d)) || r.query_count > 2 * (d.size() + 1)) ++bad;
  }
  return {bad == 0, n_of(runs) + " digraphs, " + n_of(bad) + " failures"};
}

Outcome c10_right_unbounded() {
  const auto alg = unbounded_boolean_nonzero_net_cycle_detector();
  std::size_t bad = 0, runs = 0;
  for (const auto &d : digraphs_up_to(4)) {
    ++runs;
    const auto r = run_adaptive(alg, d);
    const auto g = reference::cycle_enumeration_gamma(d);
    const std::size_t rounds = (r.query_count + 1) / 2;
    if (r.verdict != verdict_of(g != 0) || rounds > std::max<std::size_t>(d.size() - 1, g + 1)) ++bad;
  }
  return {bad == 0, n_of(runs) + " digraphs, " + n_of(bad) + " failures"};
}

Outcome c11_datalog() {
  const auto progs = datalog::builtin_programs();
  std::size_t bad = 0, runs = 0;
  for (const auto &d : digraphs_up_to(4)) {
    runs += 2;
    if (datalog::evaluate(progs.at("directed-cycle"), d) != reference::has_cycle_by_peeling(d)) ++bad;
    if (datalog::evaluate(progs.at("nonzero-net-cycle"), d) != (reference::cycle_enumeration_gamma(d) != 0)) ++bad;
  }
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto &s : enumerate_structures(datalog::pq_signature(), n, true)) {
      ++runs;
      if (datalog::evaluate(progs.at("pq-reach"), s) != reference::p_reaches_q(s)) ++bad;
    }
  return {bad == 0, n_of(runs) + " evaluations, " + n_of(bad) + " disagreements"};
}

Outcome c12_right2q() {
  const auto sig = Signature::digraph();
  const Distinguisher search = [](std::size_t n, const Signature &s) { return brute_force_distinguisher(n, s); };
  std::size_t runs = 0, bad = 0;
  auto sweep = [&](const ClassPredicate &cls, std::size_t size, std::size_t cap) {
    const auto alg = right_two_query_decider(cls, sig, search, cap);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (size * size)); ++mask) {
      const auto d = detail::digraph_from_mask(size, mask);
      ++runs;
      const auto r = run_adaptive(alg, d);
      if (r.query_count != 2 || r.verdict != verdict_of(cls.contains(d))) ++bad;
    }
  };
  const auto one = enumerate_digraphs(1).representatives;
  for (unsigned subset = 0; subset < 4; ++subset) {
    std::vector<Structure> members;
    for (std::size_t i = 0; i < one.size(); ++i)
      if (subset >> i & 1U) members.push_back(one[i]);
    sweep(class_of("size1-" + n_of(subset), members), 1, 1);
  }
  const auto two = enumerate_digraphs(2).representatives;
  std::mt19937_64 rng(42);
  for (int sample = 0; sample < 10; ++sample) {
    const auto subset = rng() % (std::uint64_t{1} << two.size());
    std::vector<Structure> members;
    for (std::size_t i = 0; i < two.size(); ++i)
      if (subset >> i & 1U) members.push_back(two[i]);
    sweep(class_of("size2-" + n_of(subset), members), 2, 2);
  }
  return {bad == 0, n_of(runs) + " runs over 14 class predicates, " + n_of(bad) + " failures"};
}

Outcome c13_unary() {
  const auto sig = Signature::unary({"P", "Q"});
  const ClassPredicate cls{"P-not-Q", [](const Structure &s) { return s.relation("P").size() > s.relation("Q").size(); }};
  const auto alg = unary_full_decider(sig, cls);
  std::size_t runs = 0, bad = 0;
  for (std::size_t n = 1; n <= 2; ++n)
    for (const auto &s : enumerate_structures(sig, n, false)) {
      ++runs;
      const auto r = run_non_adaptive(alg, s, Semiring::Count);
      if (r.query_count != 4 || !isomorphic(reconstruct_unary(sig, r.transcript), s) ||
          r.verdict != verdict_of(cls.contains(s)))
        ++bad;
    }
  return {bad == 0, n_of(runs) + " structures, " + n_of(bad) + " failures"};
}

Outcome c14_nary() {
  const auto r = experiments::experiment_nary(3, 3);
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= 3; ++n)
    for (std::size_t d = 1; d <= 4; ++d)
      if (!isomorphic(star_transform(n_ary_cycle(d, n)), directed_cycle(d))) ++bad;
  return {r.passed() && bad == 0, r.id + (r.passed() ? " PASS" : " FAIL") + ", star failures " + n_of(bad)};
}

Outcome c15_acyclic_cores() {
  std::size_t runs = 0, bad = 0;
  auto core_both_ways = [&](const Structure &s) {
    const auto c = core(s);
    if (!hom_exists(s, c) || !hom_exists(c, s)) ++bad;
  };
  for (const auto &d : digraphs_up_to(4)) {
    const bool loop = std::any_of(d.relation(0).begin(), d.relation(0).end(), [](const Tuple &t) { return t[0] == t[1]; });
    if (is_berge_acyclic(d)) {
      ++runs;
      if (!hom_equiv_to_acyclic(d)) ++bad;
      core_both_ways(d);
    } else if (loop) {
      ++runs;
      if (hom_equiv_to_acyclic(d)) ++bad;
      core_both_ways(d);
    }
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    ++runs;
    if (hom_equiv_to_acyclic(directed_cycle(n))) ++bad;
    core_both_ways(directed_cycle(n));
  }
  return {bad == 0, n_of(runs) + " structures, " + n_of(bad) + " failures"};
}

Outcome c16_replays() {
  std::string detail;
  bool ok = true;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto r = experiments::experiment_dn(n);
    ok = ok && r.passed();
    detail += "dn(" + n_of(n) + ")=" + (r.passed() ? "PASS " : "FAIL ");
  }
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto r = experiments::experiment_thm46(k);
    ok = ok && r.passed();
    detail += "thm46(" + n_of(k) + ")=" + (r.passed() ? "PASS " : "FAIL ");
  }
  return {ok, detail + "(illustrative finite pools)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cycle-union closed form equals enumeration oracle", c1_lemma42},
      {"A -> C_n iff n divides gamma(A)", c2_cycle_maps},
      {"potential gamma equals cycle-enumeration gamma up to 5 vertices", c3_gamma_cycles},
      {"non-adaptive separator on D_n and D_n'", c4_separator},
      {"adaptive binary search within ceil(log2(n+1)) queries", c5_binary_search},
      {"adaptive-not-better instance k=1", c6_thm46},
      {"2-query cycle detector agrees with DFS", c7_cycle2q},
      {"Lovasz decider identifies inputs", c8_lovasz},
      {"left unbounded Boolean cycle detector", c9_left_unbounded},
      {"right unbounded Boolean net-cycle detector", c10_right_unbounded},
      {"Datalog programs match ground truth", c11_datalog},
      {"right 2-query decider", c12_right2q},
      {"unary decider reconstruction", c13_unary},
      {"n-ary formula and star transform", c14_nary},
      {"acyclic-core characterisation", c15_acyclic_cores},
      {"finite-pool lower-bound replays", c16_replays},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception &e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %zu %s: %s (%.1fs)\n", out.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failed += out.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
