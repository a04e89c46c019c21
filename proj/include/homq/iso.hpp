#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homq/error.hpp"
#include "homq/structure.hpp"

namespace homq {

struct IsoOptions {
  /// Largest domain the exhaustive procedures accept.
  std::size_t max_size = 8;
};

namespace detail {

using Invariant = std::vector<std::size_t>;

/// Per-element occurrence counts, one slot per (relation, position).
inline std::vector<Invariant> base_invariants(const Structure &s) {
  std::size_t slots = 0;
  for (const auto &r : s.signature()) slots += r.arity;
  std::vector<Invariant> inv(s.size(), Invariant(slots, 0));
  std::size_t offset = 0;
  for (std::size_t r = 0; r < s.relation_count(); ++r) {
    for (const auto &t : s.relation(r))
      for (std::size_t p = 0; p < t.size(); ++p) ++inv[t[p]][offset + p];
    offset += s.signature()[r].arity;
  }
  return inv;
}

/// One refinement round: each element also records, for every tuple it sits
/// in, the base invariants of the tuple's entries.
inline std::vector<std::vector<Invariant>> refined_invariants(const Structure &s) {
  const auto base = base_invariants(s);
  std::vector<std::vector<Invariant>> out(s.size());
  for (std::size_t e = 0; e < s.size(); ++e) out[e].push_back(base[e]);
  for (std::size_t r = 0; r < s.relation_count(); ++r)
    for (const auto &t : s.relation(r))
      for (std::size_t p = 0; p < t.size(); ++p) {
        Invariant entry{r, p};
        for (Element x : t) {
          entry.push_back(x == t[p] ? 1 : 0);
          entry.insert(entry.end(), base[x].begin(), base[x].end());
        }
        out[t[p]].push_back(std::move(entry));
      }
  for (auto &v : out) std::sort(v.begin() + 1, v.end());
  return out;
}

inline void check_guard(const Structure &s, const IsoOptions &opt, const char *op) {
  if (s.size() > opt.max_size)
    throw GuardExceeded(std::string(op) + ": domain size " + std::to_string(s.size()) + " exceeds guard " +
                        std::to_string(opt.max_size));
}

}  // namespace detail

/// Canonical relabelling: the lexicographically least tuple layout among all
/// relabellings that list elements in increasing refined-invariant order.
/// Two structures are isomorphic iff their canonical forms are equal.
inline Structure canonical_form(const Structure &s, const IsoOptions &opt = {}) {
  detail::check_guard(s, opt, "canonical_form");
  const auto inv = detail::refined_invariants(s);
  std::vector<Element> order(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Element>(i);
  std::stable_sort(order.begin(), order.end(), [&](Element x, Element y) { return inv[x] < inv[y]; });

  // Blocks of equal invariants; only permutations inside blocks are tried.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && inv[order[j]] == inv[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }

  std::optional<Structure> best;
  std::vector<Element> perm(s.size());
  std::function<void(std::size_t)> visit = [&](std::size_t b) {
    if (b == blocks.size()) {
      for (std::size_t pos = 0; pos < order.size(); ++pos) perm[order[pos]] = static_cast<Element>(pos);
      auto candidate = relabel(s, perm);
      if (!best || candidate.relations() < best->relations()) best = std::move(candidate);
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
    do {
      visit(b + 1);
    } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                   order.begin() + static_cast<std::ptrdiff_t>(hi)));
  };
  visit(0);
  return *best;
}

/// True iff some bijection maps the tuple sets of a exactly onto those of b.
inline bool isomorphic(const Structure &a, const Structure &b, const IsoOptions &opt = {}) {
  require_same_signature(a, b, "isomorphic");
  if (a.size() != b.size()) return false;
  detail::check_guard(a, opt, "isomorphic");
  for (std::size_t r = 0; r < a.relation_count(); ++r)
    if (a.relation(r).size() != b.relation(r).size()) return false;

  const auto ia = detail::refined_invariants(a);
  const auto ib = detail::refined_invariants(b);
  {
    auto sa = ia, sb = ib;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  // Each tuple of a is checked once all its entries are mapped.
  const std::size_t n = a.size();
  std::vector<std::vector<std::pair<std::size_t, const Tuple *>>> checks(n);
  for (std::size_t r = 0; r < a.relation_count(); ++r)
    for (const auto &t : a.relation(r)) checks[*std::max_element(t.begin(), t.end())].emplace_back(r, &t);

  std::vector<Element> map(n);
  std::vector<char> used(n, 0);
  Tuple image;
  std::function<bool(std::size_t)> extend = [&](std::size_t x) -> bool {
    if (x == n) return true;
    for (Element y = 0; y < n; ++y) {
      if (used[y] || ia[x] != ib[y]) continue;
      map[x] = y;
      bool ok = true;
      for (const auto &[r, t] : checks[x]) {
        image.resize(t->size());
        for (std::size_t j = 0; j < t->size(); ++j) image[j] = map[(*t)[j]];
        if (!b.contains(r, image)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[y] = 1;
      if (extend(x + 1)) return true;
      used[y] = 0;
    }
    return false;
  };
  return extend(0);
}

}  // namespace homq
