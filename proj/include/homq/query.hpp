#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "homq/error.hpp"
#include "homq/hom.hpp"
#include "homq/structure.hpp"

namespace homq {

/// Left algorithms ask hom(F, A); right algorithms ask hom(A, F).
enum class Orientation { Left, Right };

enum class Verdict { No, Yes };

inline const char *to_string(Orientation o) { return o == Orientation::Left ? "left" : "right"; }
inline const char *to_string(Verdict v) { return v == Verdict::Yes ? "YES" : "NO"; }
inline Verdict verdict_of(bool yes) { return yes ? Verdict::Yes : Verdict::No; }

/// Answers received so far, in query order. Over Boolean every entry is 0 or 1.
using Transcript = std::vector<HomCount>;

/// Either the next query structure or a final verdict.
using Decision = std::variant<Structure, Verdict>;

inline bool is_halt(const Decision &d) { return std::holds_alternative<Verdict>(d); }

/// The decision function of an adaptive algorithm. It sees the transcript as
/// an immutable snapshot and must be a pure function of it.
using Strategy = std::function<Decision(std::span<const HomCount>)>;

/// An adaptive algorithm: a strategy bundled with its orientation, semiring
/// and, for the built-in ones, a step cap derived from its halting argument.
struct AdaptiveAlgorithm {
  std::string name;
  Orientation orientation = Orientation::Left;
  Semiring semiring = Semiring::Count;
  Strategy decide;
  std::function<std::size_t(const Structure &)> step_cap;
};

using AnswerVector = std::vector<HomCount>;
using AcceptSet = std::vector<AnswerVector>;
using AcceptPredicate = std::function<bool(std::span<const HomCount>)>;

/// A fixed tuple of queries plus an acceptance set (or predicate) on the
/// vector of answers.
struct NonAdaptiveAlgorithm {
  std::string name;
  Orientation orientation = Orientation::Left;
  std::vector<Structure> queries;
  std::variant<AcceptSet, AcceptPredicate> accept;

  static NonAdaptiveAlgorithm with_set(std::string name, Orientation o, std::vector<Structure> queries,
                                       AcceptSet set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return {std::move(name), o, std::move(queries), std::move(set)};
  }

  static NonAdaptiveAlgorithm with_predicate(std::string name, Orientation o, std::vector<Structure> queries,
                                             AcceptPredicate pred) {
    return {std::move(name), o, std::move(queries), std::move(pred)};
  }

  bool accepts(std::span<const HomCount> answers) const {
    if (const auto *set = std::get_if<AcceptSet>(&accept)) {
      AnswerVector v(answers.begin(), answers.end());
      return std::binary_search(set->begin(), set->end(), v);
    }
    return std::get<AcceptPredicate>(accept)(answers);
  }
};

struct RunReport {
  Verdict verdict = Verdict::No;
  Transcript transcript;
  std::vector<Structure> queries_issued;
  std::size_t query_count = 0;
};

/// hom_K(F, input) for left queries, hom_K(input, F) for right ones.
inline HomCount answer_query(const Structure &query, const Structure &input, Orientation o, Semiring k,
                             const HomOptions &opt = {}) {
  return o == Orientation::Left ? hom_value(query, input, k, opt) : hom_value(input, query, k, opt);
}

inline RunReport run_non_adaptive(const NonAdaptiveAlgorithm &alg, const Structure &input, Semiring k,
                                  const HomOptions &opt = {}) {
  if (alg.queries.empty()) throw InvalidArgument("run_non_adaptive: algorithm has no queries");
  RunReport report;
  for (const auto &q : alg.queries) {
    if (q.signature() != input.signature())
      throw SignatureMismatch("run_non_adaptive: query signature differs from input signature");
    report.transcript.push_back(answer_query(q, input, alg.orientation, k, opt));
    report.queries_issued.push_back(q);
  }
  report.query_count = report.queries_issued.size();
  report.verdict = verdict_of(alg.accepts(report.transcript));
  return report;
}

/// Runs a strategy on an input: sigma_{n+1} = sigma_n . hom_K(G(sigma_n), A)
/// until the strategy halts. With max_steps set, a strategy that wants to ask
/// more than max_steps queries is reported as a contract violation.
inline RunReport run_adaptive(const Strategy &strategy, const Structure &input, Orientation o, Semiring k,
                              std::optional<std::size_t> max_steps, const HomOptions &opt = {}) {
  RunReport report;
  while (true) {
    Decision d = strategy(report.transcript);
    if (auto *v = std::get_if<Verdict>(&d)) {
      report.verdict = *v;
      break;
    }
    auto &q = std::get<Structure>(d);
    if (q.signature() != input.signature())
      throw ContractViolation("run_adaptive: strategy issued a query with the wrong signature");
    if (max_steps && report.transcript.size() >= *max_steps)
      throw ContractViolation("run_adaptive: step cap of " + std::to_string(*max_steps) + " exceeded");
    report.transcript.push_back(answer_query(q, input, o, k, opt));
    report.queries_issued.push_back(std::move(q));
  }
  report.query_count = report.transcript.size();
  return report;
}

/// Runs a bundled algorithm with its own step cap (if it declares one).
inline RunReport run_adaptive(const AdaptiveAlgorithm &alg, const Structure &input, const HomOptions &opt = {}) {
  std::optional<std::size_t> cap;
  if (alg.step_cap) cap = alg.step_cap(input);
  return run_adaptive(alg.decide, input, alg.orientation, alg.semiring, cap, opt);
}

/// True iff every run on the given inputs asks at most k queries. This is an
/// empirical witness over the inputs, not a proof for all structures.
inline bool bounded_depth_check(const AdaptiveAlgorithm &alg, std::span<const Structure> inputs, std::size_t k,
                                const HomOptions &opt = {}) {
  return std::all_of(inputs.begin(), inputs.end(),
                     [&](const Structure &s) { return run_adaptive(alg, s, opt).query_count <= k; });
}

/// The adaptive algorithm that asks F_1..F_k in order and then applies the
/// acceptance condition.
inline AdaptiveAlgorithm lift_non_adaptive(NonAdaptiveAlgorithm alg, Semiring k) {
  auto shared = std::make_shared<const NonAdaptiveAlgorithm>(std::move(alg));
  AdaptiveAlgorithm out;
  out.name = "lift(" + shared->name + ")";
  out.orientation = shared->orientation;
  out.semiring = k;
  out.decide = [shared](std::span<const HomCount> t) -> Decision {
    if (t.size() > shared->queries.size())
      throw ContractViolation("lifted algorithm received a transcript past its leaves");
    if (t.size() < shared->queries.size()) return shared->queries[t.size()];
    return verdict_of(shared->accepts(t));
  };
  const std::size_t depth = shared->queries.size();
  out.step_cap = [depth](const Structure &) { return depth; };
  return out;
}

/// Turns a Boolean adaptive algorithm of depth at most `depth` into a
/// non-adaptive one by asking every query on every branch of the first
/// `depth` levels of its decision tree (at most 2^depth - 1 queries).
inline NonAdaptiveAlgorithm flatten_adaptive_boolean(const AdaptiveAlgorithm &alg, std::size_t depth) {
  if (alg.semiring != Semiring::Boolean)
    throw InvalidArgument("flatten_adaptive_boolean: algorithm must be over the Boolean semiring");

  struct Node {
    std::optional<std::size_t> query;  // index into queries, or empty at a leaf
    Verdict verdict = Verdict::No;
  };
  auto tree = std::make_shared<std::map<Transcript, Node>>();
  std::vector<Structure> queries;

  std::vector<Transcript> frontier{Transcript{}};
  while (!frontier.empty()) {
    std::vector<Transcript> next;
    for (const auto &t : frontier) {
      Decision d = [&]() -> Decision {
        try {
          return alg.decide(t);
        } catch (const Error &e) {
          throw ContractViolation(std::string("flatten_adaptive_boolean: strategy undefined on reachable transcript: ") +
                                  e.what());
        }
      }();
      Node node;
      if (auto *v = std::get_if<Verdict>(&d)) {
        node.verdict = *v;
      } else {
        if (t.size() >= depth)
          throw ContractViolation("flatten_adaptive_boolean: strategy asks more than " + std::to_string(depth) +
                                  " queries");
        node.query = queries.size();
        queries.push_back(std::get<Structure>(std::move(d)));
        for (int bit = 0; bit <= 1; ++bit) {
          auto child = t;
          child.emplace_back(bit);
          next.push_back(std::move(child));
        }
      }
      tree->emplace(t, node);
    }
    frontier = std::move(next);
  }
  // A non-adaptive algorithm needs k >= 1.
  if (queries.empty()) throw InvalidArgument("flatten_adaptive_boolean: strategy asks no queries");

  auto accept = [tree](std::span<const HomCount> answers) {
    Transcript t;
    while (true) {
      const auto &node = tree->at(t);
      if (!node.query) return node.verdict == Verdict::Yes;
      t.push_back(answers[*node.query] != 0 ? 1 : 0);
    }
  };
  return NonAdaptiveAlgorithm::with_predicate("flatten(" + alg.name + ")", alg.orientation, std::move(queries),
                                              std::move(accept));
}

}  // namespace homq
