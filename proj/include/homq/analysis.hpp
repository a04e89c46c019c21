#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <vector>

#include "homq/error.hpp"
#include "homq/structure.hpp"

namespace homq {

// ---------------------------------------------------------------------------
// Incidence multigraph

struct Fact {
  std::size_t relation = 0;
  Tuple tuple;
};

/// Bipartite multigraph between elements and facts, with one edge per tuple
/// position. Facts are listed relation by relation in tuple order.
struct IncidenceMultigraph {
  std::size_t element_count = 0;
  std::vector<Fact> facts;
  /// (element, fact index), one entry per tuple position.
  std::vector<std::pair<Element, std::size_t>> edges;

  std::size_t multiplicity(Element e, std::size_t fact) const {
    std::size_t m = 0;
    for (Element x : facts.at(fact).tuple) m += x == e ? 1 : 0;
    return m;
  }
};

inline IncidenceMultigraph incidence_multigraph(const Structure &s) {
  IncidenceMultigraph g;
  g.element_count = s.size();
  for (std::size_t r = 0; r < s.relation_count(); ++r)
    for (const auto &t : s.relation(r)) {
      const std::size_t f = g.facts.size();
      g.facts.push_back({r, t});
      for (Element e : t) g.edges.emplace_back(e, f);
    }
  return g;
}

// ---------------------------------------------------------------------------
// Connectivity

namespace detail {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Component id per element (ids are dense, in order of first element).
inline std::vector<std::size_t> component_labels(const Structure &s) {
  detail::DisjointSets ds(s.size());
  for (const auto &ts : s.relations())
    for (const auto &t : ts)
      for (std::size_t j = 1; j < t.size(); ++j) ds.unite(t[0], t[j]);
  std::vector<std::size_t> label(s.size());
  std::vector<std::size_t> id_of_root(s.size(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t e = 0; e < s.size(); ++e) {
    auto root = ds.find(e);
    if (id_of_root[root] == SIZE_MAX) id_of_root[root] = next++;
    label[e] = id_of_root[root];
  }
  return label;
}

/// c(A): connected components of the incidence multigraph. Elements that
/// occur in no tuple are components of their own.
inline std::size_t component_count(const Structure &s) {
  const auto label = component_labels(s);
  std::size_t c = 0;
  for (auto l : label) c = std::max(c, l + 1);
  return c;
}

/// Elements of each component, in increasing order.
inline std::vector<std::vector<Element>> components(const Structure &s) {
  const auto label = component_labels(s);
  std::vector<std::vector<Element>> out(component_count(s));
  for (std::size_t e = 0; e < s.size(); ++e) out[label[e]].push_back(static_cast<Element>(e));
  return out;
}

/// Berge-acyclicity: inc(s) is a forest, parallel edges counting as a cycle.
/// A multigraph is a forest iff edges = nodes - components.
inline bool is_berge_acyclic(const Structure &s) {
  std::size_t edges = 0;
  for (std::size_t r = 0; r < s.relation_count(); ++r) edges += s.relation(r).size() * s.signature()[r].arity;
  const std::size_t nodes = s.size() + s.fact_count();
  return edges + component_count(s) == nodes;
}

// ---------------------------------------------------------------------------
// Net lengths and gamma

/// Potentials from an undirected traversal of each weak component (+1 along
/// an edge, -1 against it) and, per component, the gcd of the discrepancies
/// |potential(u) + 1 - potential(v)| over its edges.
struct WalkAnalysis {
  std::vector<std::size_t> component;
  std::vector<std::int64_t> potential;
  std::vector<std::uint64_t> discrepancy_gcd;
};

inline WalkAnalysis walk_analysis(const Structure &d) {
  require_digraph(d, "walk_analysis");
  const std::size_t n = d.size();
  std::vector<std::vector<std::pair<Element, int>>> adj(n);
  for (const auto &e : d.relation(0)) {
    adj[e[0]].emplace_back(e[1], +1);
    adj[e[1]].emplace_back(e[0], -1);
  }
  WalkAnalysis w;
  w.component.assign(n, SIZE_MAX);
  w.potential.assign(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (w.component[root] != SIZE_MAX) continue;
    const std::size_t id = w.discrepancy_gcd.size();
    w.discrepancy_gcd.push_back(0);
    std::deque<Element> queue{static_cast<Element>(root)};
    w.component[root] = id;
    while (!queue.empty()) {
      const Element u = queue.front();
      queue.pop_front();
      for (auto [v, step] : adj[u])
        if (w.component[v] == SIZE_MAX) {
          w.component[v] = id;
          w.potential[v] = w.potential[u] + step;
          queue.push_back(v);
        }
    }
  }
  for (const auto &e : d.relation(0)) {
    const std::int64_t disc = w.potential[e[0]] + 1 - w.potential[e[1]];
    auto &g = w.discrepancy_gcd[w.component[e[0]]];
    g = std::gcd(g, static_cast<std::uint64_t>(disc < 0 ? -disc : disc));
  }
  return w;
}

/// gamma(d): gcd of the net lengths of all positive-net-length oriented
/// cycles, 0 when there are none.
inline std::uint64_t gamma(const Structure &d) {
  std::uint64_t g = 0;
  for (auto c : walk_analysis(d).discrepancy_gcd) g = std::gcd(g, c);
  return g;
}

/// d -> C_n  iff  n | gamma(d).
inline bool maps_to_cycle(const Structure &d, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("maps_to_cycle: cycle length must be >= 1");
  return gamma(d) % n == 0;
}

/// A*: the digraph on the same domain with an edge (a, b) whenever a and b
/// occur consecutively in some tuple of the single n-ary relation (n >= 2).
inline Structure star_transform(const Structure &s) {
  if (s.relation_count() != 1 || s.signature()[0].arity < 2)
    throw InvalidArgument("star_transform: need exactly one relation of arity >= 2");
  std::vector<Tuple> edges;
  for (const auto &t : s.relation(0))
    for (std::size_t i = 0; i + 1 < t.size(); ++i) edges.push_back({t[i], t[i + 1]});
  return Structure(Signature::digraph(), s.size(), {std::move(edges)});
}

// ---------------------------------------------------------------------------
// Directed cycles

/// Length of a shortest directed cycle (a loop has length 1), if any.
inline std::optional<std::size_t> shortest_directed_cycle(const Structure &d) {
  require_digraph(d, "shortest_directed_cycle");
  const std::size_t n = d.size();
  std::vector<std::vector<Element>> out(n);
  for (const auto &e : d.relation(0)) out[e[0]].push_back(e[1]);
  std::optional<std::size_t> best;
  std::vector<std::size_t> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[s] = 0;
    std::deque<Element> queue{static_cast<Element>(s)};
    while (!queue.empty()) {
      const Element u = queue.front();
      queue.pop_front();
      for (Element v : out[u]) {
        if (v == s) {
          const std::size_t len = dist[u] + 1;
          if (!best || len < *best) best = len;
        } else if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return best;
}

/// Depth-first search for a directed cycle.
inline bool has_directed_cycle(const Structure &d) {
  require_digraph(d, "has_directed_cycle");
  const std::size_t n = d.size();
  std::vector<std::vector<Element>> out(n);
  for (const auto &e : d.relation(0)) out[e[0]].push_back(e[1]);
  enum Color : char { White, Grey, Black };
  std::vector<Color> color(n, White);
  std::vector<std::pair<Element, std::size_t>> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] != White) continue;
    stack.emplace_back(static_cast<Element>(root), 0);
    color[root] = Grey;
    while (!stack.empty()) {
      auto &[u, next] = stack.back();
      if (next == out[u].size()) {
        color[u] = Black;
        stack.pop_back();
        continue;
      }
      const Element v = out[u][next++];
      if (color[v] == Grey) return true;
      if (color[v] == White) {
        color[v] = Grey;
        stack.emplace_back(v, 0);
      }
    }
  }
  return false;
}

}  // namespace homq
