#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "homq/analysis.hpp"
#include "homq/error.hpp"
#include "homq/hom.hpp"
#include "homq/iso.hpp"
#include "homq/structure.hpp"

namespace homq {

struct CoreOptions {
  std::size_t max_size = 7;
  HomOptions hom;
};

/// A core of s: repeatedly drop an element v whenever s maps into s - v
/// (such a map is a non-surjective endomorphism, so s - v <-> s). The result
/// has no proper retraction and is returned in canonical form.
inline Structure core(const Structure &s, const CoreOptions &opt = {}) {
  if (s.size() > opt.max_size)
    throw GuardExceeded("core: domain size " + std::to_string(s.size()) + " exceeds guard " +
                        std::to_string(opt.max_size));
  Structure current = s;
  bool shrunk = true;
  while (shrunk && current.size() > 1) {
    shrunk = false;
    for (Element v = 0; v < current.size(); ++v) {
      std::vector<Element> keep;
      for (Element e = 0; e < current.size(); ++e)
        if (e != v) keep.push_back(e);
      auto smaller = induced_substructure(current, keep);
      if (hom_exists(current, smaller, opt.hom)) {
        current = std::move(smaller);
        shrunk = true;
        break;
      }
    }
  }
  return canonical_form(current, IsoOptions{opt.max_size});
}

/// s is homomorphically equivalent to a Berge-acyclic structure, i.e. its
/// core is Berge-acyclic.
inline bool hom_equiv_to_acyclic(const Structure &s, const CoreOptions &opt = {}) {
  return is_berge_acyclic(core(s, opt));
}

}  // namespace homq
