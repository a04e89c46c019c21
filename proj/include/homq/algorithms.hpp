#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homq/analysis.hpp"
#include "homq/enumerate.hpp"
#include "homq/error.hpp"
#include "homq/hom.hpp"
#include "homq/iso.hpp"
#include "homq/query.hpp"
#include "homq/structure.hpp"

namespace homq {

/// An isomorphism-closed class of structures, given by its membership test.
struct ClassPredicate {
  std::string name;
  std::function<bool(const Structure &)> contains;
};

// ---------------------------------------------------------------------------
// Class predicates

inline ClassPredicate everything_class() {
  return {"everything", [](const Structure &) { return true; }};
}

inline ClassPredicate has_directed_cycle_class() {
  return {"has-directed-cycle", [](const Structure &s) { return has_directed_cycle(s); }};
}

/// Digraphs with an oriented cycle of non-zero net length, i.e. gamma != 0.
inline ClassPredicate nonzero_net_cycle_class() {
  return {"nonzero-net-cycle", [](const Structure &s) { return gamma(s) != 0; }};
}

inline ClassPredicate even_components_class() {
  return {"even-components", [](const Structure &s) { return component_count(s) % 2 == 0; }};
}

inline ClassPredicate berge_acyclic_class() {
  return {"berge-acyclic", [](const Structure &s) { return is_berge_acyclic(s); }};
}

inline ClassPredicate even_size_class() {
  return {"even-size", [](const Structure &s) { return s.size() % 2 == 0; }};
}

inline bool is_power_of_four(std::uint64_t x) {
  if (x == 0) return false;
  while (x % 4 == 0) x /= 4;
  return x == 1;
}

/// Digraphs whose shortest directed cycle has length 4^j. Cycle-free
/// digraphs are members when `cycle_free_members` is set.
inline ClassPredicate even_power_cycle_class(bool cycle_free_members = true) {
  return {"even-power-cycle", [cycle_free_members](const Structure &s) {
            auto len = shortest_directed_cycle(s);
            return len ? is_power_of_four(*len) : cycle_free_members;
          }};
}

/// The isomorphism closure of a finite list of structures.
inline ClassPredicate class_of(std::string name, std::vector<Structure> members) {
  auto shared = std::make_shared<const std::vector<Structure>>(std::move(members));
  return {std::move(name), [shared](const Structure &s) {
            return std::any_of(shared->begin(), shared->end(), [&](const Structure &m) {
              return m.signature() == s.signature() && isomorphic(m, s);
            });
          }};
}

inline std::vector<ClassPredicate> named_classes() {
  return {everything_class(),      has_directed_cycle_class(), nonzero_net_cycle_class(),
          even_components_class(), berge_acyclic_class(),      even_size_class(),
          even_power_cycle_class()};
}

inline ClassPredicate named_class(const std::string &name) {
  for (auto &c : named_classes())
    if (c.name == name) return c;
  if (name == "even-power-cycle-strict") {
    auto c = even_power_cycle_class(false);
    c.name = name;
    return c;
  }
  throw InvalidArgument("unknown class predicate: " + name);
}

// ---------------------------------------------------------------------------
// Left algorithms over the counting semiring

/// Asks hom(K_1, A) = |A| = n, then hom(P_n, A); accepts iff the second
/// answer is positive. Decides "contains a directed cycle" with two queries.
inline AdaptiveAlgorithm cycle_detector_2query() {
  AdaptiveAlgorithm alg;
  alg.name = "cycle2q";
  alg.orientation = Orientation::Left;
  alg.semiring = Semiring::Count;
  alg.decide = [](std::span<const HomCount> t) -> Decision {
    switch (t.size()) {
      case 0: return edgeless_singleton(Signature::digraph());
      case 1: return directed_path(t[0].convert_to<std::size_t>());
      case 2: return verdict_of(t[1] > 0);
      default: throw ContractViolation("cycle2q: transcript past its leaves");
    }
  };
  alg.step_cap = [](const Structure &) { return std::size_t{2}; };
  return alg;
}

/// Universal decider: learn |A| = n, ask hom(A_i, A) for every digraph A_i of
/// size <= n in a fixed enumeration, identify A up to isomorphism from the
/// answers, and answer membership of the identified digraph.
class LovaszDecider {
public:
  explicit LovaszDecider(ClassPredicate cls, std::size_t size_cap = 3, const HomOptions &opt = {}) {
    if (size_cap == 0) throw InvalidArgument("lovasz: size cap must be >= 1");
    auto state = std::make_shared<State>();
    state->cls = std::move(cls);
    state->size_cap = size_cap;
    state->prefix.push_back(0);
    for (std::size_t n = 1; n <= size_cap; ++n) {
      auto cat = enumerate_digraphs(n, EnumerateOptions{std::max<std::size_t>(size_cap, 4)});
      for (auto &s : cat.representatives) state->enumeration.push_back(std::move(s));
      state->prefix.push_back(state->enumeration.size());
    }
    // Profiles of every candidate of size n against A_1..A_{r_n}.
    state->profiles.resize(size_cap + 1);
    for (std::size_t n = 1; n <= size_cap; ++n)
      for (std::size_t i = state->prefix[n - 1]; i < state->prefix[n]; ++i) {
        const auto &candidate = state->enumeration[i];
        AnswerVector profile;
        for (std::size_t j = 0; j < state->prefix[n]; ++j)
          profile.push_back(hom_count(state->enumeration[j], candidate, opt));
        state->profiles[n].emplace_back(std::move(profile), i);
      }
    state_ = std::move(state);
  }

  /// A_1, A_2, ...: all digraphs up to the size cap, by size then catalog order.
  const std::vector<Structure> &enumeration() const { return state_->enumeration; }

  /// r_n: A_1..A_{r_n} lists every digraph of size at most n.
  std::size_t prefix_length(std::size_t n) const { return state_->prefix.at(n); }

  /// The unique enumerated digraph whose profile matches a complete
  /// transcript (size answer followed by r_n counts).
  std::optional<Structure> identify(std::span<const HomCount> t) const {
    if (t.empty()) return std::nullopt;
    const std::size_t n = size_from(t[0]);
    if (t.size() != 1 + prefix_length(n)) return std::nullopt;
    const AnswerVector answers(t.begin() + 1, t.end());
    std::optional<Structure> found;
    for (const auto &[profile, index] : state_->profiles[n])
      if (profile == answers) {
        if (found) throw InternalError("lovasz: two candidates share a profile");
        found = state_->enumeration[index];
      }
    return found;
  }

  AdaptiveAlgorithm algorithm() const {
    AdaptiveAlgorithm alg;
    alg.name = "lovasz(" + state_->cls.name + ")";
    alg.orientation = Orientation::Left;
    alg.semiring = Semiring::Count;
    auto self = *this;
    alg.decide = [self](std::span<const HomCount> t) -> Decision {
      if (t.empty()) return edgeless_singleton(Signature::digraph());
      const std::size_t n = self.size_from(t[0]);
      const std::size_t asked = t.size() - 1;
      if (asked < self.prefix_length(n)) return self.enumeration()[asked];
      if (asked > self.prefix_length(n)) throw ContractViolation("lovasz: transcript past its leaves");
      auto match = self.identify(t);
      if (!match) throw InternalError("lovasz: no enumerated digraph matches the answers");
      return verdict_of(self.state_->cls.contains(*match));
    };
    alg.step_cap = [self](const Structure &s) { return 1 + self.prefix_length(std::min(s.size(), self.state_->size_cap)); };
    return alg;
  }

private:
  struct State {
    ClassPredicate cls;
    std::size_t size_cap = 0;
    std::vector<Structure> enumeration;
    std::vector<std::size_t> prefix;
    std::vector<std::vector<std::pair<AnswerVector, std::size_t>>> profiles;
  };

  std::size_t size_from(const HomCount &answer) const {
    if (answer < 1 || answer > state_->size_cap)
      throw GuardExceeded("lovasz: input size " + answer.str() + " outside 1.." + std::to_string(state_->size_cap));
    return answer.convert_to<std::size_t>();
  }

  std::shared_ptr<const State> state_;
};

inline AdaptiveAlgorithm lovasz_universal_decider(ClassPredicate cls, std::size_t size_cap = 3) {
  return LovaszDecider(std::move(cls), size_cap).algorithm();
}

// ---------------------------------------------------------------------------
// The D_n / D_n' families

enum class Parity { Even, Odd };

struct CycleFamilySpec {
  std::size_t n = 1;
  Parity parity = Parity::Even;
};

/// 2^(n-m) . C_(2^m).
inline Structure dn_member(std::size_t n, std::size_t m) {
  if (m > n || n >= 31) throw InvalidArgument("dn_member: need 0 <= m <= n < 31");
  return scalar_multiple(std::size_t{1} << (n - m), directed_cycle(std::size_t{1} << m));
}

/// D_n (even m) or D_n' (odd m), by increasing m.
inline std::vector<Structure> dn_family(const CycleFamilySpec &spec) {
  if (spec.n == 0) throw InvalidArgument("dn_family: n must be >= 1");
  std::vector<Structure> out;
  for (std::size_t m = spec.parity == Parity::Even ? 0 : 1; m <= spec.n; m += 2) out.push_back(dn_member(spec.n, m));
  return out;
}

/// Queries C_1, C_2, ..., C_(2^(n-1)); accepts exactly the answer vectors of
/// the members of D_n, computed from the closed form.
inline NonAdaptiveAlgorithm dn_nonadaptive_separator(std::size_t n) {
  if (n == 0) throw InvalidArgument("dn_nonadaptive_separator: n must be >= 1");
  std::vector<Structure> queries;
  for (std::size_t r = 0; r < n; ++r) queries.push_back(directed_cycle(std::size_t{1} << r));
  AcceptSet accept;
  for (std::size_t m = 0; m <= n; m += 2) {
    AnswerVector v;
    for (const auto &q : queries)
      v.push_back(hom_into_cycle_union_formula(q, std::uint64_t{1} << (n - m), std::uint64_t{1} << m));
    accept.push_back(std::move(v));
  }
  return NonAdaptiveAlgorithm::with_set("dn-sep(" + std::to_string(n) + ")", Orientation::Left, std::move(queries),
                                        std::move(accept));
}

inline std::size_t ceil_log2(std::size_t x) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

/// Binary search for m on inputs 2^(n-m) . C_(2^m): hom(C_(2^r), input) is
/// non-zero iff m <= r. Accepts iff m is even. Promise algorithm: inputs
/// outside D_n and D_n' get an unspecified verdict.
inline AdaptiveAlgorithm dn_adaptive_binary_search(std::size_t n) {
  if (n == 0) throw InvalidArgument("dn_adaptive_binary_search: n must be >= 1");
  AdaptiveAlgorithm alg;
  alg.name = "dn-binsearch(" + std::to_string(n) + ")";
  alg.orientation = Orientation::Left;
  alg.semiring = Semiring::Count;
  alg.decide = [n](std::span<const HomCount> t) -> Decision {
    std::size_t lo = 0, hi = n;
    for (const auto &a : t) {
      if (lo >= hi) throw ContractViolation("dn-binsearch: transcript past its leaves");
      const std::size_t mid = (lo + hi) / 2;
      if (a != 0)
        hi = mid;
      else
        lo = mid + 1;
    }
    if (lo < hi) return directed_cycle(std::size_t{1} << ((lo + hi) / 2));
    return verdict_of(lo % 2 == 0);
  };
  const std::size_t cap = ceil_log2(n + 1);
  alg.step_cap = [cap](const Structure &) { return cap; };
  return alg;
}

// ---------------------------------------------------------------------------
// Non-adaptive k queries that no adaptive (k-1)-query algorithm matches

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct AdaptiveNotBetterInstance {
  std::size_t k = 0;
  std::vector<std::uint64_t> primes;    // p_1..p_2k
  std::uint64_t product = 0;            // P
  std::vector<std::uint64_t> cofactors;  // q_j = P / p_j
  NonAdaptiveAlgorithm algorithm;       // queries F_i = p_i . C_(q_i)
  std::vector<Structure> tests;         // p_j . C_(q_j), j = 1..2k
};

/// Builds F_i = p_i . C_(q_i) for i <= k and the 2k test structures
/// p_j . C_(q_j). The acceptance set holds the answer vectors of the first k
/// test structures, evaluated with the closed form.
inline AdaptiveNotBetterInstance adaptive_not_better_instance(std::size_t k, std::vector<std::uint64_t> primes,
                                                              std::uint64_t max_product = 1000) {
  if (k == 0) throw InvalidArgument("adaptive_not_better_instance: k must be >= 1");
  if (primes.size() != 2 * k) throw InvalidArgument("adaptive_not_better_instance: need exactly 2k primes");
  {
    auto sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("adaptive_not_better_instance: primes must be distinct");
  }
  AdaptiveNotBetterInstance inst;
  inst.k = k;
  inst.product = 1;
  for (auto p : primes) {
    if (!is_prime(p)) throw InvalidArgument("adaptive_not_better_instance: " + std::to_string(p) + " is not prime");
    if (inst.product > max_product / p)
      throw GuardExceeded("adaptive_not_better_instance: product of primes exceeds " + std::to_string(max_product));
    inst.product *= p;
  }
  inst.primes = std::move(primes);
  for (auto p : inst.primes) inst.cofactors.push_back(inst.product / p);

  std::vector<Structure> queries;
  for (std::size_t i = 0; i < k; ++i) queries.push_back(scalar_multiple(inst.primes[i], directed_cycle(inst.cofactors[i])));
  for (std::size_t j = 0; j < 2 * k; ++j) inst.tests.push_back(scalar_multiple(inst.primes[j], directed_cycle(inst.cofactors[j])));

  AcceptSet accept;
  for (std::size_t j = 0; j < k; ++j) {
    AnswerVector v;
    for (const auto &q : queries) v.push_back(hom_into_cycle_union_formula(q, inst.primes[j], inst.cofactors[j]));
    accept.push_back(std::move(v));
  }
  inst.algorithm = NonAdaptiveAlgorithm::with_set("adaptive-not-better(" + std::to_string(k) + ")", Orientation::Left,
                                                  std::move(queries), std::move(accept));
  return inst;
}

// ---------------------------------------------------------------------------
// Unary signatures

/// F_S: the singleton satisfying exactly the predicates in S (bit i of mask
/// selects relation i).
inline Structure unary_point(const Signature &sig, std::size_t mask) {
  std::vector<std::vector<Tuple>> rels(sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (mask >> i & 1U) rels[i].push_back({0});
  return Structure(sig, 1, std::move(rels));
}

/// Rebuilds a unary structure from the answers hom(F_S, A), S in mask order.
/// hom(F_S, A) counts elements satisfying at least S; inclusion-exclusion
/// gives the number satisfying exactly S.
inline Structure reconstruct_unary(const Signature &sig, std::span<const HomCount> answers) {
  if (!sig.all_unary()) throw InvalidArgument("reconstruct_unary: signature must be unary");
  const std::size_t subsets = std::size_t{1} << sig.size();
  if (answers.size() != subsets) throw InvalidArgument("reconstruct_unary: need 2^k answers");
  std::vector<std::vector<Tuple>> rels(sig.size());
  Element next = 0;
  for (std::size_t exact = 0; exact < subsets; ++exact) {
    HomCount count = 0;
    for (std::size_t s = exact; s < subsets; s = (s + 1) | exact) {
      const int extra = __builtin_popcountll(s & ~exact);
      if (extra % 2 == 0)
        count += answers[s];
      else
        count -= answers[s];
    }
    if (count < 0) throw InvalidArgument("reconstruct_unary: inconsistent answers");
    for (HomCount c = 0; c < count; ++c, ++next)
      for (std::size_t i = 0; i < sig.size(); ++i)
        if (exact >> i & 1U) rels[i].push_back({next});
  }
  if (next == 0) throw InvalidArgument("reconstruct_unary: answers describe an empty structure");
  return Structure(sig, next, std::move(rels));
}

/// Non-adaptive left 2^k-query algorithm deciding any class over a unary
/// signature with k relations.
inline NonAdaptiveAlgorithm unary_full_decider(const Signature &sig, ClassPredicate cls) {
  if (!sig.all_unary()) throw InvalidArgument("unary_full_decider: signature must be unary");
  if (sig.size() > 16) throw GuardExceeded("unary_full_decider: too many relations");
  std::vector<Structure> queries;
  for (std::size_t mask = 0; mask < (std::size_t{1} << sig.size()); ++mask) queries.push_back(unary_point(sig, mask));
  return NonAdaptiveAlgorithm::with_predicate(
      "unary-full(" + cls.name + ")", Orientation::Left, std::move(queries),
      [sig, cls](std::span<const HomCount> answers) { return cls.contains(reconstruct_unary(sig, answers)); });
}

// ---------------------------------------------------------------------------
// Right algorithms over the counting semiring

using Distinguisher = std::function<Structure(std::size_t, const Signature &)>;

/// Isomorphism classes of structures of size n over sig.
inline std::vector<Structure> iso_classes(const Signature &sig, std::size_t n) {
  if (sig.is_digraph() && n <= 4) return enumerate_digraphs(n).representatives;
  return enumerate_structures(sig, n, true);
}

struct DistinguisherOptions {
  std::size_t max_n = 2;       // largest size of structures to tell apart
  std::size_t search_cap = 4;  // largest candidate F tried
};

/// The first structure F (by size, then catalog order) with hom(H, F)
/// pairwise distinct over all isomorphism classes H of size n. Stands in for
/// an explicit construction, at desk scale only.
inline Structure brute_force_distinguisher(std::size_t n, const Signature &sig, const DistinguisherOptions &opt = {}) {
  if (n == 0) throw InvalidArgument("brute_force_distinguisher: n must be >= 1");
  if (n > opt.max_n)
    throw GuardExceeded("brute_force_distinguisher: n = " + std::to_string(n) + " exceeds guard " +
                        std::to_string(opt.max_n));
  const auto classes = iso_classes(sig, n);
  for (std::size_t size = 1; size <= opt.search_cap; ++size)
    for (const auto &f : iso_classes(sig, size)) {
      std::vector<HomCount> counts;
      for (const auto &h : classes) counts.push_back(hom_count(h, f));
      std::sort(counts.begin(), counts.end());
      if (std::adjacent_find(counts.begin(), counts.end()) == counts.end()) return f;
    }
  throw GuardExceeded("brute_force_distinguisher: no distinguisher up to size " + std::to_string(opt.search_cap));
}

inline std::optional<std::size_t> exact_log2(const HomCount &x) {
  if (x < 1) return std::nullopt;
  const auto msb = boost::multiprecision::msb(x);
  if (x != HomCount(1) << msb) return std::nullopt;
  return static_cast<std::size_t>(msb);
}

/// Right 2-query decider: hom(H, 2_tau) = 2^|H| reveals |H|, then
/// hom(H, F(|H|)) identifies H up to isomorphism.
inline AdaptiveAlgorithm right_two_query_decider(ClassPredicate cls, const Signature &sig, Distinguisher distinguisher,
                                                 std::size_t size_cap = 2) {
  struct Table {
    Structure distinguisher;
    std::vector<std::pair<HomCount, bool>> answers;  // (hom(H, F), H in class)
  };
  auto tables = std::make_shared<std::vector<Table>>();
  for (std::size_t n = 1; n <= size_cap; ++n) {
    auto f = distinguisher(n, sig);
    if (f.signature() != sig) throw InvalidArgument("right2q: distinguisher has the wrong signature");
    Table table{f, {}};
    for (const auto &h : iso_classes(sig, n)) table.answers.emplace_back(hom_count(h, f), cls.contains(h));
    auto counts = table.answers;
    std::sort(counts.begin(), counts.end());
    for (std::size_t i = 1; i < counts.size(); ++i)
      if (counts[i].first == counts[i - 1].first)
        throw InvalidArgument("right2q: distinguisher for size " + std::to_string(n) + " is not pairwise distinct");
    tables->push_back(std::move(table));
  }

  AdaptiveAlgorithm alg;
  alg.name = "right2q(" + cls.name + ")";
  alg.orientation = Orientation::Right;
  alg.semiring = Semiring::Count;
  alg.decide = [sig, tables, size_cap](std::span<const HomCount> t) -> Decision {
    if (t.empty()) return complete_pair(sig);
    auto n = exact_log2(t[0]);
    if (!n || *n == 0) throw InternalError("right2q: first answer " + t[0].str() + " is not 2^n with n >= 1");
    if (*n > size_cap) throw GuardExceeded("right2q: input size " + std::to_string(*n) + " exceeds size cap");
    const auto &table = (*tables)[*n - 1];
    if (t.size() == 1) return table.distinguisher;
    if (t.size() > 2) throw ContractViolation("right2q: transcript past its leaves");
    for (const auto &[count, member] : table.answers)
      if (count == t[1]) return verdict_of(member);
    throw InternalError("right2q: second answer matches no isomorphism class");
  };
  alg.step_cap = [](const Structure &) { return std::size_t{2}; };
  return alg;
}

// ---------------------------------------------------------------------------
// Unbounded algorithms over the Boolean semiring

/// Rounds n = 1, 2, ...: ask hom_B(P_n, A) then hom_B(C_n, A). NO once some
/// P_n does not map in, YES once some C_n does.
inline AdaptiveAlgorithm unbounded_boolean_cycle_detector() {
  AdaptiveAlgorithm alg;
  alg.name = "ub-bool-cycle";
  alg.orientation = Orientation::Left;
  alg.semiring = Semiring::Boolean;
  alg.decide = [](std::span<const HomCount> t) -> Decision {
    const std::size_t round = t.size() / 2 + 1;
    if (t.size() % 2 == 0) {
      if (!t.empty() && t.back() == 1) return Verdict::Yes;
      return directed_path(round);
    }
    if (t.back() == 0) return Verdict::No;
    return directed_cycle(round);
  };
  alg.step_cap = [](const Structure &s) { return 2 * (s.size() + 1); };
  return alg;
}

/// Right analogue: ask hom_B(A, P_n) then hom_B(A, C_n). NO once A maps to
/// some P_n, YES once A fails to map to some C_n. Decides "has an oriented
/// cycle of non-zero net length".
inline AdaptiveAlgorithm unbounded_boolean_nonzero_net_cycle_detector() {
  AdaptiveAlgorithm alg;
  alg.name = "ub-bool-netcycle";
  alg.orientation = Orientation::Right;
  alg.semiring = Semiring::Boolean;
  alg.decide = [](std::span<const HomCount> t) -> Decision {
    const std::size_t round = t.size() / 2 + 1;
    if (t.size() % 2 == 0) {
      if (!t.empty() && t.back() == 0) return Verdict::Yes;
      return directed_path(round);
    }
    if (t.back() == 1) return Verdict::No;
    return directed_cycle(round);
  };
  // gamma(A) <= |A| when non-zero, so both exits happen by round |A| + 1.
  alg.step_cap = [](const Structure &s) { return 2 * (s.size() + 1); };
  return alg;
}

}  // namespace homq
