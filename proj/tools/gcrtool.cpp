// gcrtool: command-line front end for the rule composition library.
//
// Exit codes: 0 success, 1 domain failure (not applicable, blocked analysis,
// incompatible kernel, ...), 2 usage, parse or validation error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcr/corpus.hpp"
#include "gcr/error.hpp"
#include "gcr/io.hpp"
#include "gcr/search.hpp"

using namespace gcr;
using nlohmann::json;

namespace {

struct Options {
  std::string signature;
  std::string out;
  std::uint64_t seed = 0;
  bool seeded = false;
  std::size_t max_size = 6;
  std::size_t count = 100;

  std::string workspace;
  std::string rule, match, host, graph, edep, kernel, name;
};

// Domain failures end with exit code 1.
class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string plural(std::size_t n, const std::string& word, const std::string& many = {}) {
  return std::to_string(n) + " " + (n == 1 ? word : many.empty() ? word + "s" : many);
}

std::string counts(const TypedGraph& g) { return plural(g.node_count(), "node") + ", " + plural(g.edge_count(), "edge"); }

std::string node_map(const GraphMorphism& f) {
  std::string s = "{";
  bool first = true;
  for (const auto& [a, b] : f.node_ids()) {
    s += (first ? "" : ", ") + a + "->" + b;
    first = false;
  }
  return s + "}";
}

io::Workspace open(const Options& o) {
  SignaturePtr sig = o.signature.empty() ? nullptr : io::load_signature(o.signature);
  if (o.workspace.empty()) throw CLI::ValidationError("a workspace file is required");
  return io::load(o.workspace, sig);
}

io::Workspace output_doc(const std::string& kind, const SignaturePtr& sig) {
  io::Workspace doc;
  doc.kind = kind;
  doc.signature = sig;
  return doc;
}

void write(const Options& o, const io::Workspace& doc) {
  if (!o.out.empty()) io::store(doc, o.out);
}

template <class Map>
const typename Map::mapped_type& pick(const Map& m, const std::string& name, const char* what, const char* flag) {
  if (!name.empty()) {
    auto it = m.find(name);
    if (it == m.end()) throw ValidationError(std::string("unknown ") + what + " \"" + name + "\"");
    return it->second;
  }
  if (m.size() != 1) throw ValidationError(std::string("choose the ") + what + " with " + flag);
  return m.begin()->second;
}

const io::DependencyEntry& pick_edep(const io::Workspace& ws, const Options& o) {
  return pick(ws.e_dependencies, o.edep, "e-dependency", "--edep");
}

// The dependency matching a kernel's rule pair; --edep wins.
const io::DependencyEntry& edep_for(const io::Workspace& ws, const Options& o, const io::KernelEntry& k) {
  if (!o.edep.empty()) return pick_edep(ws, o);
  const io::DependencyEntry* found = nullptr;
  for (const auto& [name, d] : ws.e_dependencies) {
    if (d.rho1 != k.rho1 || d.rho2 != k.rho2) continue;
    if (found) throw ValidationError("several e-dependencies fit the kernel; choose one with --edep");
    found = &d;
  }
  if (!found) throw ValidationError("no e-dependency for " + k.rho1 + " and " + k.rho2);
  return *found;
}

ConcurrentRuleResult base_of(const io::Workspace& ws, const io::DependencyEntry& d, const std::string& name = {}) {
  return concurrent_rule(ws.rule(d.rho1), ws.rule(d.rho2), d.edep, name);
}

GcrResult gcr_of(const io::Workspace& ws, const Options& o) {
  const auto& k = pick(ws.kernels, o.kernel, "kernel", "--kernel");
  if (k.rho1_inverted) throw ValidationError("kernel belongs to the inverted first rule; use shortcut");
  const auto& d = edep_for(ws, o, k);
  if (d.rho1 != k.rho1 || d.rho2 != k.rho2) throw ValidationError("kernel and e-dependency belong to different rules");
  auto base = base_of(ws, d);
  if (!is_compatible(base.rho1, base.rho2, k.kernel, base.edep)) {
    throw Failure("kernel is not compatible with the e-dependency");
  }
  return gcr::gcr(base, k.kernel, o.name);
}

std::string added_elements(const GcrResult& g) {
  const TypedGraph& Kp = *g.k_prime.codomain();
  std::vector<char> old_n(Kp.node_count(), 0), old_e(Kp.edge_count(), 0);
  for (Index x : g.k_prime.node_map()) old_n[x] = 1;
  for (Index x : g.k_prime.edge_map()) old_e[x] = 1;
  std::string s;
  auto add = [&](const std::string& a, const std::string& b) { s += (s.empty() ? "" : ", ") + a + "/" + b; };
  for (Index x = 0; x < Kp.node_count(); ++x) {
    if (!old_n[x]) add(g.rule.L()->node_id(g.rule.l().node(x)), g.rule.R()->node_id(g.rule.r().node(x)));
  }
  for (Index x = 0; x < Kp.edge_count(); ++x) {
    if (!old_e[x]) add(g.rule.L()->edge_id(g.rule.l().edge(x)), g.rule.R()->edge_id(g.rule.r().edge(x)));
  }
  return s.empty() ? "none" : s;
}

std::string delta(const GcrResult& g) {
  std::size_t dn = g.rule.K()->node_count() - g.base.rule.K()->node_count();
  std::size_t de = g.rule.K()->edge_count() - g.base.rule.K()->edge_count();
  return plural(dn, "node") + " + " + plural(de, "edge");
}

void describe_rule(std::ostream& os, const Rule& r) {
  os << "  L: " << counts(*r.L()) << "\n  K: " << counts(*r.K()) << "\n  R: " << counts(*r.R()) << "\n";
  os << "  condition: " << (r.is_plain() ? "none" : "depth " + std::to_string(depth(r.ac()))) << "\n";
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o) {
  auto ws = open(o);
  std::cout << "kind: " << ws.kind << "\n";
  std::cout << plural(ws.graphs.size(), "graph") << ", " << plural(ws.rules.size(), "rule") << ", "
            << plural(ws.e_dependencies.size(), "e-dependency", "e-dependencies") << ", " << plural(ws.kernels.size(), "kernel") << ", "
            << plural(ws.morphisms.size(), "morphism") << "\n";
  for (const auto& [name, r] : ws.rules) {
    std::cout << "rule " << name << "\n";
    describe_rule(std::cout, r);
  }
  bool all_ok = true;
  for (const auto& [kn, k] : ws.kernels) {
    for (const auto& [dn, d] : ws.e_dependencies) {
      if (k.rho1_inverted || d.rho1 != k.rho1 || d.rho2 != k.rho2) continue;
      bool ok = is_compatible(ws.rule(k.rho1), ws.rule(k.rho2), k.kernel, d.edep);
      all_ok = all_ok && ok;
      std::cout << "kernel " << kn << " is " << (ok ? "" : "not ") << "compatible with " << dn << "\n";
    }
  }
  write(o, ws);
  std::cout << "OK\n";
  return all_ok ? 0 : 1;
}

int cmd_apply(const Options& o) {
  auto ws = open(o);
  const Rule& rule = ws.rule(o.rule);
  std::optional<GraphMorphism> m;
  if (!o.match.empty()) {
    auto it = ws.morphisms.find(o.match);
    if (it == ws.morphisms.end()) throw ValidationError("unknown morphism \"" + o.match + "\"");
    if (!same_graph(it->second.f.domain(), rule.L())) throw ValidationError("match does not start at the rule's L");
    m = it->second.f;
  } else if (!o.host.empty()) {
    for (const auto& mi : enumerate_matches(rule, ws.graph(o.host))) {
      if (mi.verdict.ok()) {
        m = mi.m;
        break;
      }
    }
    if (!m) throw Failure("no applicable match of " + o.rule + " in " + o.host);
  } else {
    throw CLI::ValidationError("give --match or --host");
  }
  auto v = applicable(rule, *m);
  if (!v.ok()) throw Failure("not applicable at " + node_map(*m) + ": " + v.describe());
  auto step = apply(rule, *m);
  std::cout << "applied " << rule.name() << " at " << node_map(*m) << "\n";
  std::cout << "  G: " << counts(*step.G()) << "\n  D: " << counts(*step.D) << "\n  H: " << counts(*step.H) << "\n";
  auto doc = output_doc("step", ws.signature);
  io::add_step(doc, step);
  write(o, doc);
  return 0;
}

int cmd_matches(const Options& o) {
  auto ws = open(o);
  const Rule& rule = ws.rule(o.rule);
  auto ms = enumerate_matches(rule, ws.graph(o.host));
  auto doc = output_doc("matches", ws.signature);
  doc.rules.insert_or_assign(rule.name(), rule);
  doc.graphs[o.host] = ws.graph(o.host);
  json verdicts = json::object();
  std::cout << plural(ms.size(), "match", "matches") << " of " << rule.name() << " in " << o.host << "\n";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string key = "match_" + std::to_string(i + 1);
    std::string verdict = ms[i].verdict.ok() ? "Ok" : ms[i].verdict.describe();
    std::cout << "  " << key << " " << node_map(ms[i].m) << ": " << verdict << "\n";
    doc.morphisms.emplace(key, io::MorphismEntry{rule.name() + ".L", o.host, ms[i].m});
    verdicts[key] = verdict;
  }
  doc.report = {{"verdicts", verdicts}};
  write(o, doc);
  return 0;
}

int cmd_compose_cr(const Options& o) {
  auto ws = open(o);
  const auto& d = pick_edep(ws, o);
  auto cr = base_of(ws, d, o.name);
  std::cout << "concurrent rule " << cr.rule.name() << "\n";
  describe_rule(std::cout, cr.rule);
  auto doc = output_doc("rule", ws.signature);
  doc.rules.emplace(cr.rule.name(), cr.rule);
  write(o, doc);
  return 0;
}

int cmd_compose_gcr(const Options& o) {
  auto ws = open(o);
  auto g = gcr_of(ws, o);
  std::cout << "generalized concurrent rule " << g.rule.name() << "\n";
  describe_rule(std::cout, g.rule);
  std::cout << "  |K' \\ K| = " << delta(g) << "\n";
  std::cout << "  kept: " << added_elements(g) << "\n";
  auto doc = output_doc("rule", ws.signature);
  doc.rules.emplace(g.rule.name(), g.rule);
  doc.report = {{"added_nodes", g.rule.K()->node_count() - g.base.rule.K()->node_count()},
                {"added_edges", g.rule.K()->edge_count() - g.base.rule.K()->edge_count()}};
  write(o, doc);
  return 0;
}

int cmd_kernels(const Options& o) {
  auto ws = open(o);
  const auto& d = pick_edep(ws, o);
  auto ks = enumerate_kernels(base_of(ws, d));
  std::cout << ks.size() << " compatible kernels\n";
  auto doc = output_doc("kernels", ws.signature);
  doc.rules.insert_or_assign(d.rho1, ws.rule(d.rho1));
  doc.rules.insert_or_assign(d.rho2, ws.rule(d.rho2));
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::string key = "kernel_" + std::to_string(i + 1);
    std::cout << "  " << key << ": Kcap " << counts(*ks[i].Kcap()) << "; V " << counts(*ks[i].V()) << "\n";
    doc.kernels.emplace(key, io::KernelEntry{d.rho1, d.rho2, ks[i]});
  }
  write(o, doc);
  return 0;
}

int cmd_enumerate_gcrs(const Options& o) {
  auto ws = open(o);
  const auto& d = pick_edep(ws, o);
  auto all = enumerate_gcrs(base_of(ws, d, o.name));
  std::cout << all.size() << " generalized concurrent rules\n";
  auto doc = output_doc("rules", ws.signature);
  for (const auto& g : all) {
    std::cout << "  " << g.rule.name() << ": |K' \\ K| = " << delta(g) << "; kept: " << added_elements(g) << "\n";
    doc.rules.emplace(g.rule.name(), g.rule);
  }
  write(o, doc);
  return 0;
}

int cmd_shortcut(const Options& o) {
  auto ws = open(o);
  const auto& k = pick(ws.kernels, o.kernel, "kernel", "--kernel");
  if (!k.rho1_inverted) throw ValidationError("a short-cut kernel needs \"rho1_inverted\": true");
  Rule sc = shortcut_rule(ws.rule(k.rho1), ws.rule(k.rho2), k.kernel, o.name);
  std::cout << "short-cut rule " << sc.name() << "\n";
  describe_rule(std::cout, sc);
  auto doc = output_doc("rule", ws.signature);
  doc.rules.emplace(sc.name(), sc);
  write(o, doc);
  return 0;
}

// Runs `check` on every generated case of the seeded corpus; a thrown
// gcr::Error is a violation.
template <class F>
json corpus_run(const Options& o, F&& check) {
  std::size_t cases = 0, violations = 0;
  json extra = json::object();
  for (const auto& q : corpus::sequences(o.seed, o.count, o.max_size)) {
    auto base = concurrent_rule(q.step1.rule, q.step2.rule, e_dependency_of(q.step1, q.step2));
    for (const auto& g : enumerate_gcrs(base)) {
      try {
        cases += check(q, g, extra);
      } catch (const Error& e) {
        ++violations;
        std::cout << "  violation: " << e.what() << "\n";
      }
    }
  }
  extra["cases"] = cases;
  extra["violations"] = violations;
  extra["seed"] = o.seed;
  return extra;
}

void bump(json& j, const char* key) { j[key] = j.value(key, 0) + 1; }

int finish_corpus(const Options& o, const char* kind, const SignaturePtr& sig, const json& report) {
  std::cout << "seed " << o.seed << ": " << report["cases"].get<std::size_t>() << " cases";
  for (const auto& [k, v] : report.items()) {
    if (k != "cases" && k != "violations" && k != "seed") std::cout << ", " << k << " " << v.dump();
  }
  std::cout << ", " << report["violations"].get<std::size_t>() << " violations\n";
  auto doc = output_doc(kind, sig);
  doc.report = report;
  write(o, doc);
  return report["violations"].get<std::size_t>() == 0 && report["cases"].get<std::size_t>() > 0 ? 0 : 1;
}

int cmd_check_synthesis(const Options& o) {
  if (o.seeded) {
    auto report = corpus_run(o, [](const corpus::Sequence& q, const GcrResult& g, json& extra) {
      auto pair = make_e_related_pair(q.step1, q.step2, g.base.edep);
      if (!pair) throw Error("sequence is not E-related to its own dependency");
      auto step = synthesize(*pair, g);
      if (!are_isomorphic(step.H, q.step2.H)) throw Error("synthesized result differs");
      if (!g.k_prime.is_isomorphism()) bump(extra, "enhanced");
      return 1;
    });
    return finish_corpus(o, "synthesis", corpus::signature(), report);
  }
  auto ws = open(o);
  auto g = gcr_of(ws, o);
  const Rule& r1 = g.base.rho1;
  const Rule& r2 = g.base.rho2;
  std::size_t pairs = 0;
  for (const auto& m1 : enumerate_matches(r1, ws.graph(o.host))) {
    if (!m1.verdict.ok()) continue;
    auto s1 = apply(r1, m1.m);
    for (const auto& m2 : enumerate_matches(r2, s1.H)) {
      if (!m2.verdict.ok()) continue;
      auto s2 = apply(r2, m2.m);
      auto pair = make_e_related_pair(s1, s2, g.base.edep);
      if (!pair) continue;
      auto step = synthesize(*pair, g);
      ++pairs;
      std::cout << "pair " << pairs << ": " << r1.name() << " at " << node_map(m1.m) << ", " << r2.name() << " at "
                << node_map(m2.m) << "\n";
      std::cout << "  " << g.rule.name() << " at " << node_map(step.m) << ": result isomorphic ("
                << counts(*step.H) << ")\n";
    }
  }
  auto doc = output_doc("synthesis", ws.signature);
  doc.report = {{"pairs", pairs}};
  write(o, doc);
  if (pairs == 0) throw Failure("no E-related sequence in " + o.host);
  return 0;
}

int cmd_check_analysis(const Options& o) {
  if (o.seeded) {
    corpus::Rng rng(o.seed);
    auto report = corpus_run(o, [&](const corpus::Sequence&, const GcrResult& g, json& extra) {
      std::size_t room = g.rule.L()->node_count() >= o.max_size ? 0 : o.max_size - g.rule.L()->node_count();
      auto G0 = corpus::random_extension(rng, g.rule.L(), room, 3, "g").codomain();
      std::size_t n = 0;
      for (const auto& mi : enumerate_matches(g.rule, G0)) {
        if (!mi.verdict.ok()) continue;
        auto out = analyze(apply(g.rule, mi.m), g);
        bool expected = applicable(g.base.rho1, compose(g.base.e1p, mi.m)).ok();
        if (out.decomposed() != expected) throw Error("analysis disagrees with applicability of the first rule");
        bump(extra, out.decomposed() ? "decomposed" : "blocked");
        ++n;
      }
      return n;
    });
    return finish_corpus(o, "analysis", corpus::signature(), report);
  }
  auto ws = open(o);
  auto g = gcr_of(ws, o);
  auto doc = output_doc("analysis", ws.signature);
  json outcomes = json::array();
  std::size_t steps = 0, blocked = 0;
  for (const auto& mi : enumerate_matches(g.rule, ws.graph(o.host))) {
    if (!mi.verdict.ok()) continue;
    auto step = apply(g.rule, mi.m);
    auto out = analyze(step, g);
    ++steps;
    blocked += out.decomposed() ? 0 : 1;
    std::cout << "match " << steps << " " << node_map(mi.m) << ": " << out.describe() << "\n";
    outcomes.push_back(out.describe());
  }
  doc.report = {{"outcomes", outcomes}};
  write(o, doc);
  if (steps == 0) throw Failure(g.rule.name() + " has no applicable match in " + o.host);
  return blocked ? 1 : 0;
}

int cmd_check_preservation(const Options& o) {
  if (o.seeded) {
    corpus::Rng rng(o.seed);
    auto report = corpus_run(o, [&](const corpus::Sequence&, const GcrResult& g, json& extra) {
      const Rule& cr = g.base.rule;
      std::size_t room = cr.L()->node_count() >= o.max_size ? 0 : o.max_size - cr.L()->node_count();
      auto G0 = corpus::random_extension(rng, cr.L(), room, 2, "g").codomain();
      for (const auto& mi : enumerate_matches(cr, G0)) {
        if (!mi.verdict.ok()) continue;
        auto p = preservation_embedding(apply(cr, mi.m), g);
        bump(extra, p.k_double_prime.is_isomorphism() ? "k_iso" : "k_proper");
        return 1;
      }
      return 0;
    });
    return finish_corpus(o, "preservation", corpus::signature(), report);
  }
  auto ws = open(o);
  auto g = gcr_of(ws, o);
  std::size_t steps = 0;
  json rows = json::array();
  for (const auto& mi : enumerate_matches(g.base.rule, ws.graph(o.host))) {
    if (!mi.verdict.ok()) continue;
    auto cr_step = apply(g.base.rule, mi.m);
    auto p = preservation_embedding(cr_step, g);
    ++steps;
    std::size_t d = cr_step.D->size(), dp = p.gcr_step.D->size();
    std::cout << "match " << steps << " " << node_map(mi.m) << ": |D| = " << d << ", |D'| = " << dp
              << ", k'' is " << (p.k_double_prime.is_isomorphism() ? "an isomorphism" : "a proper embedding") << "\n";
    rows.push_back({{"D", d}, {"D_prime", dp}, {"k_iso", p.k_double_prime.is_isomorphism()}});
  }
  auto doc = output_doc("preservation", ws.signature);
  doc.report = {{"steps", rows}};
  write(o, doc);
  if (steps == 0) throw Failure(g.base.rule.name() + " has no applicable match in " + o.host);
  return 0;
}

int cmd_export_dot(const Options& o) {
  auto ws = open(o);
  std::string dot;
  if (!o.rule.empty()) {
    dot = io::to_dot(ws.rule(o.rule));
  } else if (!o.graph.empty()) {
    dot = io::to_dot(*ws.graph(o.graph), o.graph);
  } else {
    throw CLI::ValidationError("give --rule or --graph");
  }
  if (o.out.empty()) {
    std::cout << dot;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    f << dot;
    if (!f) throw Error("cannot write " + o.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and check concurrent and generalized concurrent rules of typed graph rewriting."};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--signature", o.signature, "Type signature file");
  app.add_option("--out", o.out, "Write the machine-readable result here");
  auto* seed = app.add_option("--seed", o.seed, "Run a check over the seeded corpus");
  app.add_option("--max-size", o.max_size, "Host size cap for corpus runs (nodes)")->check(CLI::PositiveNumber);

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"validate", "Load and check a workspace", cmd_validate},
      {"apply", "Apply a rule at a match or the first applicable one", cmd_apply},
      {"matches", "List matches of a rule with their applicability", cmd_matches},
      {"compose-cr", "Concurrent rule of an E-dependency", cmd_compose_cr},
      {"compose-gcr", "Generalized concurrent rule of a kernel", cmd_compose_gcr},
      {"kernels", "Compatible common kernels of an E-dependency", cmd_kernels},
      {"enumerate-gcrs", "All generalized concurrent rules of an E-dependency", cmd_enumerate_gcrs},
      {"shortcut", "Short-cut rule of two monotonic rules", cmd_shortcut},
      {"check-synthesis", "Synthesis check on a host or the corpus", cmd_check_synthesis},
      {"check-analysis", "Analysis check on a host or the corpus", cmd_check_analysis},
      {"check-preservation", "Preservation check on a host or the corpus", cmd_check_preservation},
      {"export-dot", "Graphviz export of a rule or graph", cmd_export_dot},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("workspace", o.workspace, "Workspace file");
    std::string n = c.name;
    if (n == "apply" || n == "matches" || n == "export-dot") sub->add_option("--rule", o.rule, "Rule name");
    if (n == "apply") sub->add_option("--match", o.match, "Match morphism name");
    if (n == "apply" || n == "matches" || n.rfind("check-", 0) == 0) sub->add_option("--host", o.host, "Host graph name");
    if (n == "export-dot") sub->add_option("--graph", o.graph, "Graph reference");
    if (n != "validate" && n != "apply" && n != "matches" && n != "export-dot" && n != "shortcut") {
      sub->add_option("--edep", o.edep, "E-dependency name");
    }
    if (n == "compose-gcr" || n == "shortcut" || n.rfind("check-", 0) == 0) sub->add_option("--kernel", o.kernel, "Kernel name");
    if (n.rfind("compose", 0) == 0 || n == "shortcut" || n == "enumerate-gcrs") sub->add_option("--name", o.name, "Rule name");
    if (n.rfind("check-", 0) == 0) sub->add_option("--count", o.count, "Corpus sequences (with --seed)");
    subs.emplace_back(sub, c.run);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  o.seeded = seed->count() > 0;
  try {
    for (const auto& [sub, run] : subs) {
      if (sub->parsed()) return run(o);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const Failure& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const NotApplicable& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return 1;
  } catch (const NotARule& e) {
    std::cerr << "no rule: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
