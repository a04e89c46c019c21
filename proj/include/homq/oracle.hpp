#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "homq/error.hpp"
#include "homq/hom.hpp"
#include "homq/structure.hpp"

namespace homq {

struct OracleOptions {
  /// Largest |b|^|a| the oracle will enumerate.
  std::uint64_t max_maps = 200'000'000ULL;
};

/// Counts homomorphisms by visiting every one of the |b|^|a| maps and testing
/// every tuple of a. No ordering, pruning or component factorisation: this is
/// the reference the search engine and the closed forms are checked against.
inline HomCount oracle_hom_count(const Structure &a, const Structure &b, const OracleOptions &opt = {}) {
  require_same_signature(a, b, "oracle_hom_count");
  const std::uint64_t nb = b.size();
  std::uint64_t maps = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (maps > opt.max_maps / nb)
      throw GuardExceeded("oracle_hom_count: " + std::to_string(nb) + "^" + std::to_string(a.size()) +
                          " maps exceed guard");
    maps *= nb;
  }

  // Membership tables for b, one flat bitmap per relation.
  std::vector<std::vector<bool>> table(b.relation_count());
  for (std::size_t r = 0; r < b.relation_count(); ++r) {
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < b.signature()[r].arity; ++i) {
      if (cells > (std::uint64_t{1} << 26) / nb) throw GuardExceeded("oracle_hom_count: target relation too large");
      cells *= nb;
    }
    table[r].assign(cells, false);
    for (const auto &t : b.relation(r)) {
      std::uint64_t code = 0;
      for (Element e : t) code = code * nb + e;
      table[r][code] = true;
    }
  }

  std::vector<Element> f(a.size(), 0);
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < maps; ++m) {
    bool ok = true;
    for (std::size_t r = 0; r < a.relation_count() && ok; ++r)
      for (const auto &t : a.relation(r)) {
        std::uint64_t code = 0;
        for (Element e : t) code = code * nb + f[e];
        if (!table[r][code]) {
          ok = false;
          break;
        }
      }
    if (ok) ++count;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (++f[i] < nb) break;
      f[i] = 0;
    }
  }
  return HomCount(count);
}

inline bool oracle_hom_exists(const Structure &a, const Structure &b, const OracleOptions &opt = {}) {
  return oracle_hom_count(a, b, opt) > 0;
}

}  // namespace homq
