#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "homq/error.hpp"
#include "homq/iso.hpp"
#include "homq/structure.hpp"

namespace homq {

/// Representatives of every isomorphism class of structures of one size.
struct IsoClassCatalog {
  std::size_t size = 0;
  Signature signature;
  std::vector<Structure> representatives;
};

struct EnumerateOptions {
  std::size_t max_digraph_size = 4;
  /// Cap on the number of candidate tuples for generic enumeration.
  std::size_t max_tuple_slots = 20;
};

namespace detail {

inline Structure digraph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Tuple> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> (i * n + j) & 1U) edges.push_back({static_cast<Element>(i), static_cast<Element>(j)});
  return Structure(Signature::digraph(), n, {std::move(edges)});
}

}  // namespace detail

/// All isomorphism classes of digraphs (loops allowed) on n vertices. A class
/// is represented by its adjacency bitmask that is least over all vertex
/// permutations; representatives are listed by increasing bitmask.
inline IsoClassCatalog enumerate_digraphs(std::size_t n, const EnumerateOptions &opt = {}) {
  if (n == 0) throw InvalidArgument("enumerate_digraphs: n must be >= 1");
  if (n > opt.max_digraph_size)
    throw GuardExceeded("enumerate_digraphs: n = " + std::to_string(n) + " exceeds guard " +
                        std::to_string(opt.max_digraph_size));
  if (n * n > 63) throw GuardExceeded("enumerate_digraphs: adjacency matrix does not fit 64 bits");

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  // bit (i, j) moves to (perm[i], perm[j])
  std::vector<std::vector<std::size_t>> bit_map;
  for (const auto &perm : perms) {
    std::vector<std::size_t> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = perm[i] * n + perm[j];
    bit_map.push_back(std::move(m));
  }

  IsoClassCatalog cat{n, Signature::digraph(), {}};
  const std::uint64_t limit = std::uint64_t{1} << (n * n);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    bool minimal = true;
    for (std::size_t k = 1; k < bit_map.size() && minimal; ++k) {
      std::uint64_t image = 0;
      for (std::size_t b = 0; b < n * n; ++b)
        if (mask >> b & 1U) image |= std::uint64_t{1} << bit_map[k][b];
      minimal = image >= mask;
    }
    if (minimal) cat.representatives.push_back(detail::digraph_from_mask(n, mask));
  }
  return cat;
}

/// Catalog representatives of sizes 1..n, smaller sizes first.
inline std::vector<Structure> digraphs_up_to(std::size_t n, const EnumerateOptions &opt = {}) {
  std::vector<Structure> out;
  for (std::size_t k = 1; k <= n; ++k) {
    auto cat = enumerate_digraphs(k, opt);
    for (auto &s : cat.representatives) out.push_back(std::move(s));
  }
  return out;
}

/// Every structure of the signature on n elements (all subsets of all
/// possible tuples). With up_to_iso, one canonical representative per class,
/// ordered by canonical layout.
inline std::vector<Structure> enumerate_structures(const Signature &sig, std::size_t n, bool up_to_iso,
                                                   const EnumerateOptions &opt = {}) {
  if (n == 0) throw InvalidArgument("enumerate_structures: n must be >= 1");
  std::vector<std::pair<std::size_t, Tuple>> slots;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const std::size_t arity = sig[r].arity;
    std::size_t count = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      count *= n;
      if (count > opt.max_tuple_slots)
        throw GuardExceeded("enumerate_structures: too many candidate tuples");
    }
    for (std::size_t code = 0; code < count; ++code) {
      Tuple t(arity);
      std::size_t c = code;
      for (std::size_t i = arity; i-- > 0;) {
        t[i] = static_cast<Element>(c % n);
        c /= n;
      }
      slots.emplace_back(r, std::move(t));
    }
  }
  if (slots.size() > opt.max_tuple_slots)
    throw GuardExceeded("enumerate_structures: " + std::to_string(slots.size()) + " candidate tuples exceed guard " +
                        std::to_string(opt.max_tuple_slots));

  std::vector<Structure> out;
  std::map<std::vector<std::vector<Tuple>>, std::size_t> seen;
  const std::uint64_t limit = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::vector<std::vector<Tuple>> rels(sig.size());
    for (std::size_t b = 0; b < slots.size(); ++b)
      if (mask >> b & 1U) rels[slots[b].first].push_back(slots[b].second);
    Structure s(sig, n, std::move(rels));
    if (!up_to_iso) {
      out.push_back(std::move(s));
      continue;
    }
    auto c = canonical_form(s, IsoOptions{std::max<std::size_t>(n, 8)});
    seen.emplace(c.relations(), 0);
  }
  if (up_to_iso)
    for (const auto &[rels, unused] : seen) out.emplace_back(sig, n, rels);
  return out;
}

/// Uniformly random digraph on n vertices (each of the n^2 arcs present with
/// probability 1/2).
template <class Rng>
Structure random_digraph(std::size_t n, Rng &rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Tuple> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (coin(rng)) edges.push_back({static_cast<Element>(i), static_cast<Element>(j)});
  return Structure(Signature::digraph(), n, {std::move(edges)});
}

}  // namespace homq
