#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homq/error.hpp"
#include "homq/structure.hpp"

namespace homq::io {

using nlohmann::json;

// Structure files are JSON:
//   {"signature": [{"name": "R", "arity": 2}],
//    "domain": 3,
//    "relations": {"R": [[0, 1], [1, 2]]}}
// "signature" may be omitted for digraphs. "domain" may instead be a list of
// element names, in which case tuples refer to elements by name.

inline json signature_to_json(const Signature &sig) {
  json out = json::array();
  for (const auto &r : sig) out.push_back({{"name", r.name}, {"arity", r.arity}});
  return out;
}

inline Signature signature_from_json(const json &j) {
  if (!j.is_array()) throw InvalidArgument("structure file: signature must be an array");
  std::vector<RelationSymbol> rels;
  for (const auto &r : j) {
    if (!r.contains("name") || !r.contains("arity"))
      throw InvalidArgument("structure file: signature entries need name and arity");
    rels.push_back({r.at("name").get<std::string>(), r.at("arity").get<std::size_t>()});
  }
  return Signature(std::move(rels));
}

inline json to_json(const Structure &s) {
  json rels = json::object();
  for (std::size_t i = 0; i < s.relation_count(); ++i) {
    json tuples = json::array();
    for (const auto &t : s.relation(i)) tuples.push_back(t);  // already lexicographic
    rels[s.signature()[i].name] = std::move(tuples);
  }
  return {{"signature", signature_to_json(s.signature())}, {"domain", s.size()}, {"relations", std::move(rels)}};
}

inline Structure from_json(const json &j) {
  try {
    const Signature sig = j.contains("signature") ? signature_from_json(j.at("signature")) : Signature::digraph();
    std::size_t n = 0;
    std::map<std::string, Element> names;
    const auto &dom = j.at("domain");
    if (dom.is_array()) {
      for (const auto &name : dom) {
        const auto key = name.is_string() ? name.get<std::string>() : name.dump();
        if (!names.emplace(key, static_cast<Element>(names.size())).second)
          throw InvalidArgument("structure file: duplicate element name " + key);
      }
      n = names.size();
    } else {
      n = dom.get<std::size_t>();
    }
    std::vector<std::vector<Tuple>> rels(sig.size());
    const json empty = json::object();
    const auto &jr = j.contains("relations") ? j.at("relations") : empty;
    for (const auto &[name, tuples] : jr.items()) {
      auto idx = sig.index_of(name);
      if (!idx) throw InvalidArgument("structure file: relation " + name + " not in the signature");
      for (const auto &t : tuples) {
        Tuple tuple;
        for (const auto &e : t) {
          if (names.empty()) {
            tuple.push_back(e.get<Element>());
          } else {
            const auto key = e.is_string() ? e.get<std::string>() : e.dump();
            auto it = names.find(key);
            if (it == names.end()) throw InvalidArgument("structure file: unknown element " + key);
            tuple.push_back(it->second);
          }
        }
        rels[*idx].push_back(std::move(tuple));
      }
    }
    return Structure(sig, n, std::move(rels));
  } catch (const json::exception &e) {
    throw InvalidArgument(std::string("structure file: ") + e.what());
  }
}

inline Structure parse_structure(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw InvalidArgument(std::string("structure file: ") + e.what());
  }
  return from_json(j);
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Structure load_structure(const std::string &path) { return parse_structure(read_file(path)); }

inline void save_structure(const Structure &s, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << to_json(s).dump(2) << '\n';
}

/// One-line summary: "n=3 R:3".
inline std::string summary(const Structure &s) {
  std::string out = "n=" + std::to_string(s.size());
  for (std::size_t i = 0; i < s.relation_count(); ++i)
    out += " " + s.signature()[i].name + ":" + std::to_string(s.relation(i).size());
  return out;
}

/// Compact tuple listing: "n=3 R={(0,1),(1,2)}".
inline std::string describe(const Structure &s) {
  std::string out = "n=" + std::to_string(s.size());
  for (std::size_t i = 0; i < s.relation_count(); ++i) {
    out += " " + s.signature()[i].name + "={";
    bool first = true;
    for (const auto &t : s.relation(i)) {
      out += first ? "(" : ",(";
      first = false;
      for (std::size_t k = 0; k < t.size(); ++k) out += (k ? "," : "") + std::to_string(t[k]);
      out += ")";
    }
    out += "}";
  }
  return out;
}

}  // namespace homq::io
