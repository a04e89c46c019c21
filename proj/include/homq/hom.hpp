#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homq/analysis.hpp"
#include "homq/error.hpp"
#include "homq/structure.hpp"

namespace homq {

/// Exact homomorphism count. Values such as (m*n)^c(A) outgrow 64 bits fast.
using HomCount = boost::multiprecision::cpp_int;

enum class Semiring { Count, Boolean };

inline const char *to_string(Semiring s) { return s == Semiring::Count ? "count" : "boolean"; }

struct HomOptions {
  /// Maximum number of candidate assignments tried by one search.
  std::uint64_t node_budget = 2'000'000'000ULL;
};

namespace detail {

/// Membership and neighbour lookups over a fixed target structure.
class TargetIndex {
public:
  explicit TargetIndex(const Structure &b) : b_(&b), n_(b.size()) {
    const std::size_t rels = b.relation_count();
    dense_.resize(rels);
    by_position_.resize(rels);
    for (std::size_t r = 0; r < rels; ++r) {
      const std::size_t arity = b.signature()[r].arity;
      if (dense_size(arity) <= (std::size_t{1} << 22)) {
        dense_[r].assign(dense_size(arity), 0);
        for (const auto &t : b.relation(r)) dense_[r][encode(t.data(), arity)] = 1;
      }
      auto &slots = by_position_[r];
      slots.assign(arity * arity, std::vector<std::vector<Element>>(n_));
      for (const auto &t : b.relation(r))
        for (std::size_t p = 0; p < arity; ++p)
          for (std::size_t q = 0; q < arity; ++q) slots[p * arity + q][t[p]].push_back(t[q]);
      for (auto &slot : slots)
        for (auto &vs : slot) {
          std::sort(vs.begin(), vs.end());
          vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        }
    }
  }

  std::size_t size() const { return n_; }

  bool contains(std::size_t r, const Element *t, std::size_t arity) const {
    if (!dense_[r].empty()) return dense_[r][encode(t, arity)] != 0;
    return b_->contains(r, std::span<const Element>(t, arity));
  }

  /// Values at position q of target tuples whose position p holds v.
  const std::vector<Element> &neighbours(std::size_t r, std::size_t p, std::size_t q, Element v) const {
    const std::size_t arity = b_->signature()[r].arity;
    return by_position_[r][p * arity + q][v];
  }

private:
  std::size_t dense_size(std::size_t arity) const {
    std::size_t total = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (total > (std::size_t{1} << 40) / std::max<std::size_t>(n_, 1)) return SIZE_MAX;
      total *= n_;
    }
    return total;
  }

  std::size_t encode(const Element *t, std::size_t arity) const {
    std::size_t code = 0;
    for (std::size_t i = 0; i < arity; ++i) code = code * n_ + t[i];
    return code;
  }

  const Structure *b_;
  std::size_t n_;
  std::vector<std::vector<char>> dense_;
  std::vector<std::vector<std::vector<std::vector<Element>>>> by_position_;
};

struct FactRef {
  std::size_t relation;
  const Tuple *tuple;
};

/// A fact linking the element at this position to an earlier one, used to
/// restrict candidates to neighbours of that earlier element's image.
struct Anchor {
  std::size_t relation;
  std::size_t earlier_position;  // index in tuple of the already-assigned entry
  std::size_t own_position;      // index in tuple of the element being assigned
  Element earlier;
};

struct ComponentPlan {
  std::vector<Element> order;
  std::vector<std::vector<FactRef>> checks;  // facts completed at each depth
  std::vector<std::optional<Anchor>> anchors;
};

/// Elements of each component in BFS order over inc(a).
inline std::vector<ComponentPlan> plan_search(const Structure &a) {
  const std::size_t n = a.size();
  std::vector<std::vector<FactRef>> facts_of(n);
  for (std::size_t r = 0; r < a.relation_count(); ++r)
    for (const auto &t : a.relation(r)) {
      Element prev = ~Element{0};
      auto sorted = t;
      std::sort(sorted.begin(), sorted.end());
      for (Element e : sorted)
        if (e != prev) {
          facts_of[e].push_back({r, &t});
          prev = e;
        }
    }

  std::vector<std::size_t> position(n, SIZE_MAX);
  std::vector<ComponentPlan> plans;
  for (std::size_t root = 0; root < n; ++root) {
    if (position[root] != SIZE_MAX) continue;
    ComponentPlan plan;
    std::deque<Element> queue{static_cast<Element>(root)};
    position[root] = 0;
    while (!queue.empty()) {
      const Element x = queue.front();
      queue.pop_front();
      plan.order.push_back(x);
      for (const auto &f : facts_of[x])
        for (Element y : *f.tuple)
          if (position[y] == SIZE_MAX) {
            position[y] = 0;
            queue.push_back(y);
          }
    }
    for (std::size_t i = 0; i < plan.order.size(); ++i) position[plan.order[i]] = i;

    plan.checks.resize(plan.order.size());
    plan.anchors.resize(plan.order.size());
    for (std::size_t i = 0; i < plan.order.size(); ++i) {
      const Element x = plan.order[i];
      for (const auto &f : facts_of[x]) {
        std::size_t last = 0;
        for (Element y : *f.tuple) last = std::max(last, position[y]);
        if (last == i) plan.checks[i].push_back(f);
        if (plan.anchors[i]) continue;
        for (std::size_t p = 0; p < f.tuple->size() && !plan.anchors[i]; ++p) {
          const Element y = (*f.tuple)[p];
          if (position[y] >= i) continue;
          for (std::size_t q = 0; q < f.tuple->size(); ++q)
            if ((*f.tuple)[q] == x) {
              plan.anchors[i] = Anchor{f.relation, p, q, y};
              break;
            }
        }
      }
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

class Searcher {
public:
  Searcher(const Structure &a, const Structure &b, const HomOptions &opt)
      : index_(b), plans_(plan_search(a)), map_(a.size()), budget_(opt.node_budget) {
    all_.resize(b.size());
    for (std::size_t i = 0; i < all_.size(); ++i) all_[i] = static_cast<Element>(i);
  }

  const std::vector<ComponentPlan> &plans() const { return plans_; }

  /// Number of homomorphisms of one component, or min(count, 1) if
  /// stop_at_first.
  std::uint64_t run(const ComponentPlan &plan, bool stop_at_first) {
    plan_ = &plan;
    stop_ = stop_at_first;
    found_ = 0;
    descend(0);
    return found_;
  }

private:
  bool descend(std::size_t depth) {
    const auto &plan = *plan_;
    const Element x = plan.order[depth];
    const auto &anchor = plan.anchors[depth];
    const auto &candidates =
        anchor ? index_.neighbours(anchor->relation, anchor->earlier_position, anchor->own_position, map_[anchor->earlier])
               : all_;
    for (Element c : candidates) {
      if (++nodes_ > budget_) throw BudgetExceeded("homomorphism search exceeded node budget of " + std::to_string(budget_));
      map_[x] = c;
      bool ok = true;
      for (const auto &f : plan.checks[depth]) {
        const auto &t = *f.tuple;
        image_.resize(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) image_[j] = map_[t[j]];
        if (!index_.contains(f.relation, image_.data(), t.size())) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (depth + 1 == plan.order.size()) {
        ++found_;
        if (stop_) return true;
      } else if (descend(depth + 1)) {
        return true;
      }
    }
    return false;
  }

  TargetIndex index_;
  std::vector<ComponentPlan> plans_;
  std::vector<Element> map_;
  std::vector<Element> all_;
  Tuple image_;
  const ComponentPlan *plan_ = nullptr;
  bool stop_ = false;
  std::uint64_t found_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t budget_;
};

}  // namespace detail

/// Number of homomorphisms a -> b: a backtracking count per component of a,
/// multiplied across components.
inline HomCount hom_count(const Structure &a, const Structure &b, const HomOptions &opt = {}) {
  require_same_signature(a, b, "hom_count");
  detail::Searcher search(a, b, opt);
  HomCount total = 1;
  for (const auto &plan : search.plans()) {
    const auto c = search.run(plan, false);
    if (c == 0) return 0;
    total *= c;
  }
  return total;
}

/// a -> b.
inline bool hom_exists(const Structure &a, const Structure &b, const HomOptions &opt = {}) {
  require_same_signature(a, b, "hom_exists");
  detail::Searcher search(a, b, opt);
  for (const auto &plan : search.plans())
    if (search.run(plan, true) == 0) return false;
  return true;
}

/// a <-> b.
inline bool hom_equivalent(const Structure &a, const Structure &b, const HomOptions &opt = {}) {
  return hom_exists(a, b, opt) && hom_exists(b, a, opt);
}

/// hom_K(a, b): the exact count over Count, 0/1 over Boolean.
inline HomCount hom_value(const Structure &a, const Structure &b, Semiring k, const HomOptions &opt = {}) {
  if (k == Semiring::Boolean) return hom_exists(a, b, opt) ? 1 : 0;
  return hom_count(a, b, opt);
}

// ---------------------------------------------------------------------------
// Closed forms. These never search.

/// hom(a, m . C_n) = 0 if n does not divide gamma(a), else (m*n)^c(a).
inline HomCount hom_into_cycle_union_formula(const Structure &a, std::uint64_t m, std::uint64_t n) {
  require_digraph(a, "hom_into_cycle_union_formula");
  if (m == 0 || n == 0) throw InvalidArgument("hom_into_cycle_union_formula: m and n must be >= 1");
  if (gamma(a) % n != 0) return 0;
  return boost::multiprecision::pow(HomCount(m) * n, static_cast<unsigned>(component_count(a)));
}

/// hom(a, m . C_d^k) for a structure with a single k-ary relation:
/// 0 if d does not divide gamma(a*), else (m*d)^c(a). For k = 1 the star
/// transform has no edges, so gamma is taken as 0.
inline HomCount hom_into_nary_cycle_union_formula(const Structure &a, std::uint64_t m, std::uint64_t d) {
  if (a.relation_count() != 1)
    throw InvalidArgument("hom_into_nary_cycle_union_formula: need a single-relation signature");
  if (m == 0 || d == 0) throw InvalidArgument("hom_into_nary_cycle_union_formula: m and d must be >= 1");
  const std::uint64_t g = a.signature()[0].arity >= 2 ? gamma(star_transform(a)) : 0;
  if (g % d != 0) return 0;
  return boost::multiprecision::pow(HomCount(m) * d, static_cast<unsigned>(component_count(a)));
}

/// Non-negative integer or +infinity.
class ExtendedNat {
public:
  constexpr explicit ExtendedNat(std::uint64_t v) : value_(v), infinite_(false) {}
  static constexpr ExtendedNat infinity() { return ExtendedNat(); }

  constexpr bool is_infinite() const { return infinite_; }
  std::uint64_t value() const {
    if (infinite_) throw InvalidArgument("ExtendedNat: value of infinity");
    return value_;
  }

  constexpr bool operator==(const ExtendedNat &o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  constexpr std::strong_ordering operator<=>(const ExtendedNat &o) const {
    if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(std::uint64_t v) const { return !infinite_ && value_ == v; }
  constexpr std::strong_ordering operator<=>(std::uint64_t v) const { return *this <=> ExtendedNat(v); }

  std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
  constexpr ExtendedNat() : value_(0), infinite_(true) {}
  std::uint64_t value_;
  bool infinite_;
};

/// 2-adic valuation; nu2(0) is +infinity.
inline ExtendedNat nu2(std::uint64_t k) {
  if (k == 0) return ExtendedNat::infinity();
  std::uint64_t r = 0;
  while (k % 2 == 0) {
    k /= 2;
    ++r;
  }
  return ExtendedNat(r);
}

}  // namespace homq
