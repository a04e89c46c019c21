#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "homq/error.hpp"
#include "homq/structure.hpp"

namespace homq::datalog {

/// P(x, y) or, with `equality` set, x = y (args holds both sides).
struct Atom {
  std::string predicate;
  std::vector<std::string> args;
  bool equality = false;

  std::string str() const {
    if (equality) return args[0] + "=" + args[1];
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i];
    return out + ")";
  }
};

struct Rule {
  Atom head;
  std::vector<Atom> body;

  std::string str() const {
    std::string out = head.str() + " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) out += (i ? ", " : "") + body[i].str();
    return out + ".";
  }
};

/// A Boolean Datalog program: IDB predicates are exactly the rule heads and
/// the goal is the unique nullary one (named Ans, any case).
struct Program {
  std::string name;
  std::vector<Rule> rules;
  std::map<std::string, std::size_t> idb;  // predicate -> arity
  std::string goal;

  bool is_idb(const std::string &p) const { return idb.count(p) != 0; }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline bool is_identifier(const std::string &s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  // primes allowed so variables like a' can be written as-is
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

inline Atom parse_atom(const std::string &text, std::size_t line) {
  const auto where = " (line " + std::to_string(line) + ")";
  const auto eq = text.find('=');
  const auto open = text.find('(');
  if (eq != std::string::npos && (open == std::string::npos || eq < open)) {
    Atom a{"=", {trim(text.substr(0, eq)), trim(text.substr(eq + 1))}, true};
    for (const auto &v : a.args)
      if (!is_identifier(v)) throw InvalidArgument("datalog: bad variable '" + v + "' in equality" + where);
    return a;
  }
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open || trim(text.substr(close + 1)) != "")
    throw InvalidArgument("datalog: malformed atom '" + text + "'" + where);
  Atom a;
  a.predicate = trim(text.substr(0, open));
  if (!is_identifier(a.predicate)) throw InvalidArgument("datalog: bad predicate name '" + a.predicate + "'" + where);
  const auto inner = trim(text.substr(open + 1, close - open - 1));
  if (!inner.empty()) {
    std::stringstream ss(inner);
    std::string arg;
    while (std::getline(ss, arg, ',')) {
      arg = trim(arg);
      if (!is_identifier(arg)) throw InvalidArgument("datalog: bad variable '" + arg + "'" + where);
      a.args.push_back(arg);
    }
  }
  return a;
}

inline std::vector<std::string> split_body(std::string_view body) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !parts.empty()) parts.push_back(trim(cur));
  return parts;
}

inline std::string lower(std::string s) {
  for (auto &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace detail

/// Parses one rule per line, `Head(args) :- Atom1, Atom2.`, with `%`
/// comments. Checks arity consistency, range restriction and the goal.
inline Program parse_program(std::string_view text, std::string name = "") {
  Program p;
  p.name = std::move(name);
  std::map<std::string, std::size_t> arities;
  auto note_arity = [&](const Atom &a, std::size_t line) {
    auto [it, fresh] = arities.emplace(a.predicate, a.args.size());
    if (!fresh && it->second != a.args.size())
      throw InvalidArgument("datalog: predicate " + a.predicate + " used with two arities (line " +
                            std::to_string(line) + ")");
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
    if (auto pct = raw.find('%'); pct != std::string::npos) raw.erase(pct);
    auto line = detail::trim(raw);
    if (line.empty()) continue;
    const auto arrow = line.find(":-");
    if (arrow == std::string::npos)
      throw InvalidArgument("datalog: line " + std::to_string(lineno) + " has no ':-'");
    if (line.back() == '.') line.pop_back();
    Rule r;
    r.head = detail::parse_atom(detail::trim(line.substr(0, arrow)), lineno);
    if (r.head.equality) throw InvalidArgument("datalog: equality in rule head (line " + std::to_string(lineno) + ")");
    for (const auto &part : detail::split_body(line.substr(arrow + 2))) {
      if (part.empty()) throw InvalidArgument("datalog: empty body atom (line " + std::to_string(lineno) + ")");
      r.body.push_back(detail::parse_atom(part, lineno));
    }
    if (r.body.empty()) throw InvalidArgument("datalog: empty rule body (line " + std::to_string(lineno) + ")");

    std::set<std::string> bound;
    for (const auto &a : r.body) {
      bound.insert(a.args.begin(), a.args.end());
      if (!a.equality) note_arity(a, lineno);
    }
    note_arity(r.head, lineno);
    for (const auto &v : r.head.args)
      if (!bound.count(v))
        throw InvalidArgument("datalog: head variable " + v + " does not occur in the body (line " +
                              std::to_string(lineno) + ")");
    p.idb[r.head.predicate] = r.head.args.size();
    p.rules.push_back(std::move(r));
  }
  if (p.rules.empty()) throw InvalidArgument("datalog: program has no rules");

  std::vector<std::string> nullary;
  for (const auto &[pred, arity] : p.idb)
    if (arity == 0) nullary.push_back(pred);
  if (nullary.size() != 1 || detail::lower(nullary[0]) != "ans")
    throw InvalidArgument("datalog: need exactly one nullary goal predicate named Ans");
  p.goal = nullary[0];
  return p;
}

/// Every EDB predicate must be a relation of sig with the same arity.
inline void check_against(const Program &p, const Signature &sig) {
  for (const auto &r : p.rules)
    for (const auto &a : r.body) {
      if (a.equality || p.is_idb(a.predicate)) continue;
      auto idx = sig.index_of(a.predicate);
      if (!idx) throw SignatureMismatch("datalog: EDB predicate " + a.predicate + " not in the signature");
      if (sig[*idx].arity != a.args.size())
        throw SignatureMismatch("datalog: EDB predicate " + a.predicate + " has arity " +
                                std::to_string(sig[*idx].arity) + " in the signature");
    }
}

struct ProgramClass {
  bool monadic = false;
  bool linear = false;
};

/// monadic: every IDB has arity <= 1 (the nullary goal included). linear:
/// every rule body has at most one IDB atom.
inline ProgramClass classify_program(const Program &p) {
  ProgramClass c{true, true};
  for (const auto &[pred, arity] : p.idb)
    if (arity > 1) c.monadic = false;
  for (const auto &r : p.rules) {
    const auto recursive = std::count_if(r.body.begin(), r.body.end(),
                                         [&](const Atom &a) { return !a.equality && p.is_idb(a.predicate); });
    if (recursive > 1) c.linear = false;
  }
  return c;
}

struct Evaluation {
  bool accepted = false;
  std::size_t rounds = 0;
  std::map<std::string, std::set<Tuple>> idb;
};

namespace detail {

using Binding = std::map<std::string, Element>;

class RuleEvaluator {
public:
  RuleEvaluator(const Program &p, const Structure &s, const std::map<std::string, std::set<Tuple>> &idb)
      : p_(p), s_(s), idb_(idb) {}

  void derive(const Rule &r, std::set<Tuple> &out) {
    std::vector<const Atom *> order;
    for (const auto &a : r.body)
      if (!a.equality) order.push_back(&a);
    for (const auto &a : r.body)
      if (a.equality) order.push_back(&a);
    Binding b;
    walk(r, order, 0, b, out);
  }

private:
  template <class Range>
  void match(const Rule &r, const std::vector<const Atom *> &order, std::size_t i, Binding &b, std::set<Tuple> &out,
             const Range &tuples) {
    const Atom &a = *order[i];
    for (const auto &t : tuples) {
      Binding next = b;
      bool ok = true;
      for (std::size_t k = 0; k < a.args.size() && ok; ++k) {
        auto [it, fresh] = next.emplace(a.args[k], t[k]);
        ok = fresh || it->second == t[k];
      }
      if (ok) walk(r, order, i + 1, next, out);
    }
  }

  void walk(const Rule &r, const std::vector<const Atom *> &order, std::size_t i, Binding &b, std::set<Tuple> &out) {
    if (i == order.size()) {
      Tuple t;
      for (const auto &v : r.head.args) t.push_back(b.at(v));
      out.insert(std::move(t));
      return;
    }
    const Atom &a = *order[i];
    if (a.equality) {
      auto l = b.find(a.args[0]), rr = b.find(a.args[1]);
      if (l != b.end() && rr != b.end()) {
        if (l->second == rr->second) walk(r, order, i + 1, b, out);
      } else if (l != b.end() || rr != b.end()) {
        Binding next = b;
        if (l != b.end())
          next[a.args[1]] = l->second;
        else
          next[a.args[0]] = rr->second;
        walk(r, order, i + 1, next, out);
      } else {
        for (Element e = 0; e < s_.size(); ++e) {
          Binding next = b;
          next[a.args[0]] = e;
          next[a.args[1]] = e;
          walk(r, order, i + 1, next, out);
        }
      }
      return;
    }
    if (p_.is_idb(a.predicate))
      match(r, order, i, b, out, idb_.at(a.predicate));
    else
      match(r, order, i, b, out, s_.relation(a.predicate));
  }

  const Program &p_;
  const Structure &s_;
  const std::map<std::string, std::set<Tuple>> &idb_;
};

}  // namespace detail

/// Naive bottom-up evaluation to the least fixpoint.
inline Evaluation evaluate_full(const Program &p, const Structure &s) {
  check_against(p, s.signature());
  Evaluation ev;
  std::size_t max_arity = 0;
  for (const auto &[pred, arity] : p.idb) {
    ev.idb[pred];
    max_arity = std::max(max_arity, arity);
  }
  std::size_t bound = p.rules.size();
  for (std::size_t i = 0; i < max_arity; ++i) bound *= s.size();

  while (true) {
    ++ev.rounds;
    if (ev.rounds > bound + 1) throw InternalError("datalog: fixpoint exceeded its round bound");
    auto next = ev.idb;
    detail::RuleEvaluator eval(p, s, ev.idb);
    for (const auto &r : p.rules) eval.derive(r, next[r.head.predicate]);
    if (next == ev.idb) break;
    ev.idb = std::move(next);
  }
  ev.accepted = !ev.idb.at(p.goal).empty();
  return ev;
}

inline bool evaluate(const Program &p, const Structure &s) { return evaluate_full(p, s).accepted; }

inline const char *directed_cycle_source() {
  return "X(x,y) :- R(x,y).\n"
         "X(x,y) :- X(x, x1), R(x1,y).\n"
         "Ans() :- X(z,z).\n";
}

inline const char *pq_reach_source() {
  return "X(x) :- P(x).\n"
         "X(y) :- X(x), R(x,y).\n"
         "X(y) :- X(x), R(y,x).\n"
         "Ans() :- X(y), Q(y).\n";
}

inline const char *nonzero_net_cycle_source() {
  return "X(a,b) :- a=b.\n"
         "X(a,b) :- X(a', b'), R(a', a), R(b',b).\n"
         "X(a,b) :- X(a', b'), R(a, a'), R(b, b').\n"
         "X(a,b) :- X(a,c), X(c,b).\n"
         "Y(a,b) :- R(a, b).\n"
         "Y(a,b) :- Y(a, c), X(c, b).\n"
         "Y(a,b) :- X(a, c), Y(c, b).\n"
         "Y(a,b) :- Y(a, c), Y(c, b).\n"
         "Ans() :- Y(a, a).\n";
}

/// Signature {R/2, P/1, Q/1} used by the pq-reach program.
inline Signature pq_signature() { return Signature({{"R", 2}, {"P", 1}, {"Q", 1}}); }

inline std::map<std::string, Program> builtin_programs() {
  return {
      {"directed-cycle", parse_program(directed_cycle_source(), "directed-cycle")},
      {"pq-reach", parse_program(pq_reach_source(), "pq-reach")},
      {"nonzero-net-cycle", parse_program(nonzero_net_cycle_source(), "nonzero-net-cycle")},
  };
}

}  // namespace homq::datalog
