#pragma once

// Reference computations used only by the tests. None of them share code
// with the library routines they check.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>
#include <vector>

#include "homq/structure.hpp"

namespace homq::reference {

/// gcd of |net length| over every vertex-simple oriented cycle (loops and
/// 2-cycles included), found by depth-first search. Stops early at 1.
inline std::uint64_t cycle_enumeration_gamma(const Structure &d) {
  struct Arc {
    Element to;
    int sign;
    std::size_t id;
  };
  const auto &edges = d.relation(0);
  std::vector<std::vector<Arc>> adj(d.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Element u = edges[i][0], v = edges[i][1];
    adj[u].push_back({v, +1, i});
    if (u != v) adj[v].push_back({u, -1, i});
  }
  std::uint64_t g = 0;
  std::vector<bool> on_path(d.size(), false);
  std::vector<bool> used(edges.size(), false);

  // cycles whose least vertex is `start`
  auto search = [&](auto &&self, Element start, Element at, long net) -> void {
    if (g == 1) return;
    for (const auto &arc : adj[at]) {
      if (used[arc.id] || arc.to < start) continue;
      if (arc.to == start) {
        const long total = net + arc.sign;
        if (total != 0) g = std::gcd(g, static_cast<std::uint64_t>(std::labs(total)));
        continue;
      }
      if (on_path[arc.to]) continue;
      used[arc.id] = true;
      on_path[arc.to] = true;
      self(self, start, arc.to, net + arc.sign);
      on_path[arc.to] = false;
      used[arc.id] = false;
    }
  };
  for (Element s = 0; s < d.size() && g != 1; ++s) {
    on_path[s] = true;
    search(search, s, s, 0);
    on_path[s] = false;
  }
  return g;
}

/// Undirected reachability from P to Q in an {R/2, P/1, Q/1} structure.
inline bool p_reaches_q(const Structure &s) {
  const auto &r = s.relation("R");
  std::vector<bool> seen(s.size(), false);
  std::vector<Element> stack;
  for (const auto &t : s.relation("P")) {
    if (!seen[t[0]]) stack.push_back(t[0]);
    seen[t[0]] = true;
  }
  while (!stack.empty()) {
    const Element x = stack.back();
    stack.pop_back();
    for (const auto &e : r)
      for (int side = 0; side < 2; ++side)
        if (e[side] == x && !seen[e[1 - side]]) {
          seen[e[1 - side]] = true;
          stack.push_back(e[1 - side]);
        }
  }
  for (const auto &t : s.relation("Q"))
    if (seen[t[0]]) return true;
  return false;
}

/// Directed cycle check by repeatedly deleting vertices of out-degree zero.
inline bool has_cycle_by_peeling(const Structure &d) {
  std::vector<bool> alive(d.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Element v = 0; v < d.size(); ++v) {
      if (!alive[v]) continue;
      bool out = false;
      for (const auto &e : d.relation(0))
        if (e[0] == v && alive[e[1]]) out = true;
      if (!out) {
        alive[v] = false;
        changed = true;
      }
    }
  }
  for (bool a : alive)
    if (a) return true;
  return false;
}

/// Every 5-vertex digraph obtained from a 4-vertex one by adding a vertex
/// with arbitrary arcs (9 possible arcs including its loop). Covers every
/// isomorphism class of 5-vertex digraphs (with repetitions).
template <class Fn>
void for_each_five_vertex_extension(const std::vector<Structure> &four_vertex, Fn &&fn) {
  for (const auto &base : four_vertex)
    for (unsigned mask = 0; mask < 512; ++mask) {
      auto edges = base.relation(0);
      for (Element i = 0; i < 4; ++i) {
        if (mask >> i & 1U) edges.push_back({4, i});
        if (mask >> (4 + i) & 1U) edges.push_back({i, 4});
      }
      if (mask >> 8 & 1U) edges.push_back({4, 4});
      fn(Structure(Signature::digraph(), 5, {std::move(edges)}));
    }
}

}  // namespace homq::reference
