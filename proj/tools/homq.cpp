// homq: command-line front end for the homq library.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homq/algorithms.hpp"
#include "homq/analysis.hpp"
#include "homq/core.hpp"
#include "homq/datalog.hpp"
#include "homq/enumerate.hpp"
#include "homq/experiments.hpp"
#include "homq/hom.hpp"
#include "homq/io.hpp"
#include "homq/oracle.hpp"
#include "homq/query.hpp"

namespace {

using namespace homq;
using ordered_json = nlohmann::ordered_json;

struct Globals {
  bool guard_override = false;
  std::uint64_t seed = 1;
  std::string format = "text";
  bool machine() const { return format == "machine"; }
};

void warn_override(const Globals &g) {
  if (g.guard_override) std::cerr << "warning: size guards lifted by --guard-override\n";
}

Semiring parse_semiring(const std::string &s) {
  if (s == "count") return Semiring::Count;
  if (s == "boolean") return Semiring::Boolean;
  throw InvalidArgument("unknown semiring: " + s);
}

void emit(const Globals &g, const ordered_json &j, const std::string &text) {
  if (g.machine())
    std::cout << j.dump() << '\n';
  else
    std::cout << text;
}

int cmd_analyze(const Globals &g, const std::string &path) {
  const auto s = io::load_structure(path);
  ordered_json j;
  std::string text;
  auto put = [&](const std::string &k, const auto &v) {
    j[k] = v;
    std::ostringstream os;
    os << std::boolalpha << v;
    text += k + ": " + os.str() + "\n";
  };
  put("domain", s.size());
  put("facts", s.fact_count());
  put("components", component_count(s));
  put("berge_acyclic", is_berge_acyclic(s));
  if (s.is_digraph()) {
    put("gamma", gamma(s));
    put("directed_cycle", has_directed_cycle(s));
  }
  CoreOptions copt;
  if (g.guard_override) copt.max_size = 64;
  if (s.size() <= copt.max_size) {
    const auto c = core(s, copt);
    put("core_size", c.size());
    put("hom_equiv_to_acyclic", is_berge_acyclic(c));
  } else {
    put("core_size", std::string("skipped (guard)"));
  }
  emit(g, j, text);
  return 0;
}

struct RunParams {
  std::string algorithm;
  std::string input;
  bool trace = false;
  std::string cls = "has-directed-cycle";
  std::size_t n = 3;
  std::size_t size_cap = 0;
};

void print_run(const Globals &g, const std::string &name, const RunReport &r, bool trace) {
  ordered_json j{{"algorithm", name}, {"verdict", to_string(r.verdict)}, {"queries", r.query_count}};
  std::string text = "algorithm: " + name + "\nverdict: " + to_string(r.verdict) +
                     "\nqueries: " + std::to_string(r.query_count) + "\n";
  if (trace) {
    j["trace"] = ordered_json::array();
    for (std::size_t i = 0; i < r.query_count; ++i) {
      j["trace"].push_back({{"index", i + 1}, {"query", io::summary(r.queries_issued[i])}, {"answer", r.transcript[i].str()}});
      text += "query " + std::to_string(i + 1) + ": " + io::summary(r.queries_issued[i]) + " -> " +
              r.transcript[i].str() + "\n";
    }
  }
  emit(g, j, text);
}

int cmd_run(const Globals &g, const RunParams &p) {
  const auto input = io::load_structure(p.input);
  const auto need_digraph = [&] {
    if (!input.is_digraph()) throw SignatureMismatch(p.algorithm + ": input must be a digraph");
  };
  if (p.algorithm == "dn-sep" || p.algorithm == "unary-full") {
    const auto alg = p.algorithm == "dn-sep" ? dn_nonadaptive_separator(p.n)
                                             : unary_full_decider(input.signature(), named_class(p.cls));
    if (p.algorithm == "dn-sep") need_digraph();
    print_run(g, alg.name, run_non_adaptive(alg, input, Semiring::Count), p.trace);
    return 0;
  }
  AdaptiveAlgorithm alg;
  if (p.algorithm == "cycle2q") {
    alg = cycle_detector_2query();
  } else if (p.algorithm == "lovasz") {
    const std::size_t cap = p.size_cap ? p.size_cap : 3;
    if (cap > 3 && !g.guard_override) throw GuardExceeded("lovasz: size cap above 3 needs --guard-override");
    alg = lovasz_universal_decider(named_class(p.cls), cap);
  } else if (p.algorithm == "dn-binsearch") {
    alg = dn_adaptive_binary_search(p.n);
  } else if (p.algorithm == "right2q") {
    const std::size_t cap = p.size_cap ? p.size_cap : 2;
    DistinguisherOptions dopt;
    if (g.guard_override) dopt.max_n = cap;
    alg = right_two_query_decider(named_class(p.cls), input.signature(),
                                  [dopt](std::size_t n, const Signature &sig) {
                                    return brute_force_distinguisher(n, sig, dopt);
                                  },
                                  cap);
  } else if (p.algorithm == "ub-bool-cycle") {
    alg = unbounded_boolean_cycle_detector();
  } else if (p.algorithm == "ub-bool-netcycle") {
    alg = unbounded_boolean_nonzero_net_cycle_detector();
  } else {
    throw InvalidArgument("unknown algorithm: " + p.algorithm);
  }
  if (p.algorithm != "right2q") need_digraph();
  print_run(g, alg.name, run_adaptive(alg, input), p.trace);
  return 0;
}

void write_structures(const std::vector<std::pair<std::string, Structure>> &items, const std::string &out) {
  if (out.empty()) {
    if (items.size() == 1) {
      std::cout << io::to_json(items[0].second).dump(2) << '\n';
      return;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &[name, s] : items) arr.push_back({{"name", name}, {"structure", io::to_json(s)}});
    std::cout << arr.dump(2) << '\n';
    return;
  }
  if (items.size() == 1 && std::filesystem::path(out).extension() == ".json") {
    io::save_structure(items[0].second, out);
    return;
  }
  std::filesystem::create_directories(out);
  for (const auto &[name, s] : items) {
    const auto path = (std::filesystem::path(out) / (name + ".json")).string();
    io::save_structure(s, path);
    std::cout << path << '\n';
  }
}

int cmd_enumerate(const Globals &g, std::size_t n) {
  EnumerateOptions opt;
  if (g.guard_override) opt.max_digraph_size = 5;
  const auto cat = enumerate_digraphs(n, opt);
  ordered_json j{{"size", n}, {"classes", cat.representatives.size()}, {"representatives", ordered_json::array()}};
  std::string text = "size: " + std::to_string(n) + "\nclasses: " + std::to_string(cat.representatives.size()) + "\n";
  for (const auto &s : cat.representatives) {
    j["representatives"].push_back(io::describe(s));
    text += io::describe(s) + "\n";
  }
  emit(g, j, text);
  return 0;
}

datalog::Program load_program(const std::string &spec) {
  auto builtins = datalog::builtin_programs();
  if (auto it = builtins.find(spec); it != builtins.end()) return it->second;
  return datalog::parse_program(io::read_file(spec), spec);
}

struct ExperimentParams {
  std::string id;
  std::size_t n = 0;
  std::size_t k = 1;
  std::size_t max_vertices = 4;
  std::size_t max_m = 3;
  std::size_t max_n = 4;
  std::size_t d_max = 3;
};

int cmd_experiment(const Globals &g, const ExperimentParams &p) {
  const experiments::Guards guards{g.guard_override};
  experiments::ExperimentReport rep;
  if (p.id == "dn")
    rep = experiments::experiment_dn(p.n ? p.n : 3, guards);
  else if (p.id == "lemma42")
    rep = experiments::experiment_lemma42(p.max_vertices, p.max_m, p.max_n, guards);
  else if (p.id == "thm46")
    rep = experiments::experiment_thm46(p.k, guards);
  else if (p.id == "nary")
    rep = experiments::experiment_nary(p.n ? p.n : 3, p.d_max, guards);
  else if (p.id == "unbounded-boolean")
    rep = experiments::experiment_unbounded_boolean(p.max_vertices, guards);
  else
    throw InvalidArgument("unknown experiment: " + p.id);
  if (g.machine())
    std::cout << rep.machine().dump() << '\n';
  else
    std::cout << rep.text();
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Homomorphism-count query algorithms over finite relational structures"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--guard-override", g.guard_override, "Lift size guards (with a warning)");
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  int exit_code = 0;

  // hom
  auto *hom = app.add_subcommand("hom", "Count or test homomorphisms between two structure files");
  hom->require_subcommand(1);
  std::string from, to, semiring = "count";
  for (const char *mode : {"count", "exists"}) {
    auto *sub = hom->add_subcommand(mode, std::string(mode) == "count" ? "hom(A, B)" : "A -> B ?");
    sub->add_option("--from", from, "Source structure")->required();
    sub->add_option("--to", to, "Target structure")->required();
    if (std::string(mode) == "count")
      sub->add_option("--semiring", semiring)->check(CLI::IsMember({"count", "boolean"}));
    sub->callback([&, m = std::string(mode)] {
      const auto a = io::load_structure(from), b = io::load_structure(to);
      const auto k = m == "exists" ? Semiring::Boolean : parse_semiring(semiring);
      std::cout << hom_value(a, b, k).str() << '\n';
    });
  }

  // analyze
  std::string analyze_path;
  auto *analyze = app.add_subcommand("analyze", "Structural parameters of a structure file");
  analyze->add_option("file", analyze_path)->required();
  analyze->callback([&] { exit_code = cmd_analyze(g, analyze_path); });

  // run
  RunParams rp;
  auto *run = app.add_subcommand("run", "Run a named query algorithm on a structure file");
  run->add_option("--algorithm", rp.algorithm, "cycle2q, lovasz, dn-sep, dn-binsearch, unary-full, right2q, "
                                                "ub-bool-cycle, ub-bool-netcycle")
      ->required();
  run->add_option("--input", rp.input)->required();
  run->add_flag("--trace", rp.trace, "Print one line per query");
  run->add_option("--class", rp.cls, "Class predicate for lovasz, unary-full, right2q");
  run->add_option("--n", rp.n, "Family parameter for dn-sep and dn-binsearch");
  run->add_option("--size-cap", rp.size_cap, "Size cap for lovasz (3) and right2q (2)");
  run->callback([&] {
    warn_override(g);
    exit_code = cmd_run(g, rp);
  });

  // gen
  auto *gen = app.add_subcommand("gen", "Write generated structures as JSON");
  gen->require_subcommand(1);
  std::string out, parity = "even";
  std::size_t gn = 1, gd = 1, gm = 1;
  auto *gen_dn = gen->add_subcommand("dn", "D_n (even) or D_n' (odd)");
  gen_dn->add_option("--n", gn)->required();
  gen_dn->add_option("--parity", parity)->check(CLI::IsMember({"even", "odd"}));
  gen_dn->add_option("--out", out, "Output directory (stdout when omitted)");
  gen_dn->callback([&] {
    std::vector<std::pair<std::string, Structure>> items;
    for (std::size_t m = parity == "even" ? 0 : 1; m <= gn; m += 2)
      items.emplace_back("dn_" + std::to_string(gn) + "_m" + std::to_string(m), dn_member(gn, m));
    write_structures(items, out);
  });
  auto *gen_cycle = gen->add_subcommand("cycle", "m copies of the directed cycle C_n");
  gen_cycle->add_option("--n", gn)->required();
  gen_cycle->add_option("--m", gm);
  gen_cycle->add_option("--out", out);
  gen_cycle->callback([&] { write_structures({{"cycle", scalar_multiple(gm, directed_cycle(gn))}}, out); });
  auto *gen_path = gen->add_subcommand("path", "Directed path P_n (n edges)");
  gen_path->add_option("--n", gn)->required();
  gen_path->add_option("--out", out);
  gen_path->callback([&] { write_structures({{"path", directed_path(gn)}}, out); });
  auto *gen_nary = gen->add_subcommand("nary-cycle", "n-ary cycle C_d^n");
  gen_nary->add_option("--d", gd)->required();
  gen_nary->add_option("--n", gn)->required();
  gen_nary->add_option("--out", out);
  gen_nary->callback([&] { write_structures({{"nary_cycle", n_ary_cycle(gd, gn)}}, out); });
  auto *gen_random = gen->add_subcommand("random", "Random digraph on n vertices (uses --seed)");
  gen_random->add_option("--n", gn)->required();
  gen_random->add_option("--out", out);
  gen_random->callback([&] {
    std::mt19937_64 rng(g.seed);
    write_structures({{"random", random_digraph(gn, rng)}}, out);
  });

  // enumerate
  std::size_t en = 1;
  auto *enumerate = app.add_subcommand("enumerate", "Isomorphism classes of digraphs on n vertices");
  enumerate->add_option("--n", en)->required();
  enumerate->callback([&] {
    warn_override(g);
    exit_code = cmd_enumerate(g, en);
  });

  // datalog
  auto *dl = app.add_subcommand("datalog", "Evaluate or classify Datalog programs");
  dl->require_subcommand(1);
  std::string program, structure;
  auto *dl_run = dl->add_subcommand("run", "Evaluate a program on a structure");
  dl_run->add_option("--program", program, "Program file or builtin name")->required();
  dl_run->add_option("--structure", structure)->required();
  dl_run->callback([&] {
    std::cout << (datalog::evaluate(load_program(program), io::load_structure(structure)) ? "true" : "false") << '\n';
  });
  auto *dl_check = dl->add_subcommand("check", "Print the monadic and linear flags");
  dl_check->add_option("--program", program)->required();
  dl_check->callback([&] {
    const auto c = datalog::classify_program(load_program(program));
    std::cout << "monadic: " << (c.monadic ? "true" : "false") << "\nlinear: " << (c.linear ? "true" : "false")
              << '\n';
  });

  // experiment
  ExperimentParams ep;
  auto *exp = app.add_subcommand("experiment", "Run a reproducible experiment");
  exp->add_option("id", ep.id, "dn, lemma42, thm46, nary, unbounded-boolean")->required();
  exp->add_option("--n", ep.n, "n for dn (default 3) and arity for nary (default 3)");
  exp->add_option("--k", ep.k);
  exp->add_option("--max-vertices", ep.max_vertices);
  exp->add_option("--max-m", ep.max_m);
  exp->add_option("--max-n", ep.max_n);
  exp->add_option("--d-max", ep.d_max);
  exp->callback([&] {
    warn_override(g);
    exit_code = cmd_experiment(g, ep);
  });

  // oracle
  auto *oracle = app.add_subcommand("oracle", "Brute-force reference computations");
  oracle->require_subcommand(1);
  auto *oracle_hom = oracle->add_subcommand("hom", "hom(A, B) by enumerating every map");
  oracle_hom->add_option("--from", from)->required();
  oracle_hom->add_option("--to", to)->required();
  oracle_hom->callback([&] {
    OracleOptions opt;
    if (g.guard_override) opt.max_maps = UINT64_MAX;
    std::cout << oracle_hom_count(io::load_structure(from), io::load_structure(to), opt).str() << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const homq::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
