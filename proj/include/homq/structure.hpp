#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "homq/error.hpp"

namespace homq {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct RelationSymbol {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const RelationSymbol &) const = default;
};

/// Ordered list of relation symbols. Names are unique, arities positive.
class Signature {
public:
  Signature() = default;

  explicit Signature(std::vector<RelationSymbol> relations) : relations_(std::move(relations)) {
    std::unordered_set<std::string> seen;
    for (const auto &r : relations_) {
      if (r.name.empty()) throw InvalidArgument("relation name must be non-empty");
      if (r.arity == 0) throw InvalidArgument("relation '" + r.name + "' must have arity >= 1");
      if (!seen.insert(r.name).second) throw InvalidArgument("duplicate relation name '" + r.name + "'");
    }
  }

  /// One binary relation named R.
  static Signature digraph() { return Signature({{"R", 2}}); }

  static Signature single(std::string name, std::size_t arity) {
    return Signature({{std::move(name), arity}});
  }

  static Signature unary(const std::vector<std::string> &names) {
    std::vector<RelationSymbol> rels;
    rels.reserve(names.size());
    for (const auto &n : names) rels.push_back({n, 1});
    return Signature(std::move(rels));
  }

  std::size_t size() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }
  const RelationSymbol &operator[](std::size_t i) const { return relations_[i]; }
  auto begin() const { return relations_.begin(); }
  auto end() const { return relations_.end(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < relations_.size(); ++i)
      if (relations_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t max_arity() const {
    std::size_t m = 0;
    for (const auto &r : relations_) m = std::max(m, r.arity);
    return m;
  }

  bool is_digraph() const { return relations_.size() == 1 && relations_[0].arity == 2; }

  bool all_unary() const {
    return std::all_of(relations_.begin(), relations_.end(), [](const auto &r) { return r.arity == 1; });
  }

  bool operator==(const Signature &) const = default;

private:
  std::vector<RelationSymbol> relations_;
};

/// A finite relational structure on the domain {0, ..., size()-1}.
///
/// Tuple lists are kept sorted and duplicate-free, so two structures with the
/// same labelling compare equal with operator==. Instances are immutable.
class Structure {
public:
  Structure(Signature signature, std::size_t domain_size, std::vector<std::vector<Tuple>> relations)
      : signature_(std::move(signature)), size_(domain_size), relations_(std::move(relations)) {
    if (size_ == 0) throw InvalidArgument("structure domain must be non-empty");
    if (relations_.size() != signature_.size())
      throw InvalidArgument("relation count does not match signature");
    for (std::size_t r = 0; r < relations_.size(); ++r) {
      auto &tuples = relations_[r];
      for (const auto &t : tuples) {
        if (t.size() != signature_[r].arity)
          throw InvalidArgument("tuple length does not match arity of '" + signature_[r].name + "'");
        for (Element e : t)
          if (e >= size_) throw InvalidArgument("tuple entry out of domain in '" + signature_[r].name + "'");
      }
      std::sort(tuples.begin(), tuples.end());
      tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    }
  }

  /// The structure on n elements with every relation empty.
  static Structure empty_relations(Signature signature, std::size_t n) {
    std::vector<std::vector<Tuple>> rels(signature.size());
    return Structure(std::move(signature), n, std::move(rels));
  }

  const Signature &signature() const { return signature_; }
  std::size_t size() const { return size_; }
  std::size_t relation_count() const { return relations_.size(); }
  const std::vector<Tuple> &relation(std::size_t i) const { return relations_[i]; }
  const std::vector<std::vector<Tuple>> &relations() const { return relations_; }

  const std::vector<Tuple> &relation(std::string_view name) const {
    auto i = signature_.index_of(name);
    if (!i) throw InvalidArgument("unknown relation '" + std::string(name) + "'");
    return relations_[*i];
  }

  bool contains(std::size_t rel, std::span<const Element> t) const {
    const auto &ts = relations_[rel];
    return std::binary_search(ts.begin(), ts.end(), t, [](const auto &a, const auto &b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
  }

  std::size_t fact_count() const {
    std::size_t n = 0;
    for (const auto &ts : relations_) n += ts.size();
    return n;
  }

  bool is_digraph() const { return signature_.is_digraph(); }

  bool operator==(const Structure &) const = default;

private:
  Signature signature_;
  std::size_t size_;
  std::vector<std::vector<Tuple>> relations_;
};

inline void require_same_signature(const Structure &a, const Structure &b, std::string_view op) {
  if (a.signature() != b.signature()) throw SignatureMismatch(std::string(op) + ": signatures differ");
}

inline void require_digraph(const Structure &s, std::string_view op) {
  if (!s.is_digraph()) throw SignatureMismatch(std::string(op) + ": input must be a digraph");
}

// ---------------------------------------------------------------------------
// Constructors

/// C_n: vertices 0..n-1 with edges i -> i+1 mod n. C_1 is a single loop.
inline Structure directed_cycle(std::size_t n) {
  if (n == 0) throw InvalidArgument("directed_cycle: length must be >= 1");
  std::vector<Tuple> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back({static_cast<Element>(i), static_cast<Element>((i + 1) % n)});
  return Structure(Signature::digraph(), n, {std::move(edges)});
}

/// P_n: vertices 0..n with edges i -> i+1.
inline Structure directed_path(std::size_t n) {
  std::vector<Tuple> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({static_cast<Element>(i), static_cast<Element>(i + 1)});
  return Structure(Signature::digraph(), n + 1, {std::move(edges)});
}

/// The n-ary cycle of length d: tuples (i, i+1, ..., i+n-1) mod d.
inline Structure n_ary_cycle(std::size_t d, std::size_t n, std::string relation = "R") {
  if (d == 0 || n == 0) throw InvalidArgument("n_ary_cycle: d and n must be >= 1");
  std::vector<Tuple> tuples;
  for (std::size_t i = 0; i < d; ++i) {
    Tuple t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = static_cast<Element>((i + j) % d);
    tuples.push_back(std::move(t));
  }
  return Structure(Signature::single(std::move(relation), n), d, {std::move(tuples)});
}

/// The singleton with every relation empty. For digraphs, the query used to
/// learn the number of vertices.
inline Structure edgeless_singleton(const Signature &sig) { return Structure::empty_relations(sig, 1); }

/// 1_tau: one element, every relation holds on the all-zero tuple.
inline Structure complete_singleton(const Signature &sig) {
  std::vector<std::vector<Tuple>> rels;
  for (const auto &r : sig) rels.push_back({Tuple(r.arity, 0)});
  return Structure(sig, 1, std::move(rels));
}

/// 2_tau: domain {0,1}, each relation of arity m holds on all 2^m tuples.
inline Structure complete_pair(const Signature &sig) {
  std::vector<std::vector<Tuple>> rels;
  for (const auto &r : sig) {
    std::vector<Tuple> ts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r.arity); ++mask) {
      Tuple t(r.arity);
      for (std::size_t j = 0; j < r.arity; ++j) t[j] = static_cast<Element>((mask >> (r.arity - 1 - j)) & 1U);
      ts.push_back(std::move(t));
    }
    rels.push_back(std::move(ts));
  }
  return Structure(sig, 2, std::move(rels));
}

// ---------------------------------------------------------------------------
// Combinators

/// a (+) b. Elements of b are shifted up by |a|.
inline Structure disjoint_union(const Structure &a, const Structure &b) {
  require_same_signature(a, b, "disjoint_union");
  auto rels = a.relations();
  const auto shift = static_cast<Element>(a.size());
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (auto t : b.relation(r)) {
      for (auto &e : t) e += shift;
      rels[r].push_back(std::move(t));
    }
  return Structure(a.signature(), a.size() + b.size(), std::move(rels));
}

/// m . h, the disjoint union of m copies of h.
inline Structure scalar_multiple(std::size_t m, const Structure &h) {
  if (m == 0) throw InvalidArgument("scalar_multiple: multiplier must be >= 1");
  std::vector<std::vector<Tuple>> rels(h.relation_count());
  for (std::size_t copy = 0; copy < m; ++copy) {
    const auto shift = static_cast<Element>(copy * h.size());
    for (std::size_t r = 0; r < rels.size(); ++r)
      for (auto t : h.relation(r)) {
        for (auto &e : t) e += shift;
        rels[r].push_back(std::move(t));
      }
  }
  return Structure(h.signature(), m * h.size(), std::move(rels));
}

/// a (x) b. The pair (x, y) is element x * |b| + y.
inline Structure direct_product(const Structure &a, const Structure &b) {
  require_same_signature(a, b, "direct_product");
  std::vector<std::vector<Tuple>> rels(a.relation_count());
  const auto nb = static_cast<Element>(b.size());
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (const auto &ta : a.relation(r))
      for (const auto &tb : b.relation(r)) {
        Tuple t(ta.size());
        for (std::size_t j = 0; j < t.size(); ++j) t[j] = ta[j] * nb + tb[j];
        rels[r].push_back(std::move(t));
      }
  return Structure(a.signature(), a.size() * b.size(), std::move(rels));
}

/// Image of s under the relabelling e -> perm[e]. perm must be a bijection.
inline Structure relabel(const Structure &s, std::span<const Element> perm) {
  if (perm.size() != s.size()) throw InvalidArgument("relabel: permutation size mismatch");
  auto rels = s.relations();
  for (auto &ts : rels)
    for (auto &t : ts)
      for (auto &e : t) e = perm[e];
  return Structure(s.signature(), s.size(), std::move(rels));
}

/// Substructure induced on `keep` (which must be non-empty). The i-th kept
/// element becomes element i.
inline Structure induced_substructure(const Structure &s, std::span<const Element> keep) {
  if (keep.empty()) throw InvalidArgument("induced_substructure: empty element set");
  constexpr Element absent = ~Element{0};
  std::vector<Element> index(s.size(), absent);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= s.size()) throw InvalidArgument("induced_substructure: element out of range");
    index[keep[i]] = static_cast<Element>(i);
  }
  std::vector<std::vector<Tuple>> rels(s.relation_count());
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (const auto &t : s.relation(r)) {
      Tuple mapped(t.size());
      bool inside = true;
      for (std::size_t j = 0; j < t.size() && inside; ++j) {
        mapped[j] = index[t[j]];
        inside = mapped[j] != absent;
      }
      if (inside) rels[r].push_back(std::move(mapped));
    }
  return Structure(s.signature(), keep.size(), std::move(rels));
}

}  // namespace homq
