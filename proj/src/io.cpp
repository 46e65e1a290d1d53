#include "gcr/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "gcr/error.hpp"

namespace gcr::io {

using json = nlohmann::json;

namespace {

const std::set<std::string> kKinds = {"workspace", "signature", "rule",     "rules",    "step",
                                      "matches",   "kernels",   "analysis", "synthesis", "preservation"};

[[noreturn]] void shape(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }
[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) shape(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) shape(where, "missing \"" + key + "\"");
  return *it;
}

const json* optional_field(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) shape(where, "expected a string");
  return j.get<std::string>();
}

std::string text_field(const json& j, const std::string& key, const std::string& where) {
  return text(field(j, key, where), where + "." + key);
}

SignaturePtr parse_signature(const json& j, const std::string& where) {
  std::vector<std::string> nodes;
  std::vector<EdgeType> edges;
  const json& nt = field(j, "node_types", where);
  if (!nt.is_array()) shape(where + ".node_types", "expected an array");
  for (const auto& x : nt) nodes.push_back(text(x, where + ".node_types"));
  const json& et = field(j, "edge_types", where);
  if (!et.is_array()) shape(where + ".edge_types", "expected an array");
  for (const auto& x : et) {
    std::string w = where + ".edge_types";
    edges.push_back({text_field(x, "name", w), text_field(x, "source", w), text_field(x, "target", w)});
  }
  auto problems = TypeSignature::validate(nodes, edges);
  if (!problems.empty()) {
    std::string all;
    for (const auto& p : problems) all += (all.empty() ? "" : "; ") + p;
    invalid(where, all);
  }
  return make_signature(std::move(nodes), std::move(edges));
}

GraphPtr parse_graph(const json& j, const SignaturePtr& sig, const std::string& where) {
  GraphData d;
  const json& nodes = field(j, "nodes", where);
  if (!nodes.is_array()) shape(where + ".nodes", "expected an array");
  for (const auto& n : nodes) d.node(text_field(n, "id", where + ".nodes"), text_field(n, "type", where + ".nodes"));
  if (const json* edges = optional_field(j, "edges")) {
    if (!edges->is_array()) shape(where + ".edges", "expected an array");
    for (const auto& e : *edges) {
      std::string w = where + ".edges";
      d.edge(text_field(e, "id", w), text_field(e, "type", w), text_field(e, "source", w), text_field(e, "target", w));
    }
  }
  auto problems = validate_graph(*sig, d);
  if (!problems.empty()) {
    std::string all;
    for (const auto& v : problems) all += (all.empty() ? "" : "; ") + v.message;
    invalid(where, all);
  }
  return make_graph(sig, d);
}

std::map<std::string, std::string> id_table(const json* j, const std::string& where) {
  std::map<std::string, std::string> out;
  if (!j) return out;
  if (!j->is_object()) shape(where, "expected an object");
  for (const auto& [k, v] : j->items()) out[k] = text(v, where + "." + k);
  return out;
}

GraphMorphism parse_mapping(const json& j, const GraphPtr& from, const GraphPtr& to, const std::string& where) {
  if (!j.is_object()) shape(where, "expected an object");
  auto nodes = id_table(optional_field(j, "nodes"), where + ".nodes");
  auto edges = id_table(optional_field(j, "edges"), where + ".edges");
  try {
    return GraphMorphism::from_ids(from, to, nodes, edges);
  } catch (const ValidationError& e) {
    invalid(where, e.what());
  }
}

ConditionPtr parse_condition(const json& j, const GraphPtr& root, const std::string& where) {
  std::string op = text_field(j, "op", where);
  if (op == "true") return Condition::make_true(root);
  if (op == "exists") {
    GraphPtr C = parse_graph(field(j, "graph", where), root->signature(), where + ".graph");
    GraphMorphism a = parse_mapping(field(j, "map", where), root, C, where + ".map");
    if (!a.is_m()) invalid(where + ".map", "morphism is not injective");
    const json* then = optional_field(j, "then");
    return Condition::exists(std::move(a), then ? parse_condition(*then, C, where + ".then") : nullptr);
  }
  if (op == "not") return Condition::negate(parse_condition(field(j, "arg", where), root, where + ".arg"));
  if (op == "and" || op == "or") {
    const json& args = field(j, "args", where);
    if (!args.is_array()) shape(where + ".args", "expected an array");
    std::vector<ConditionPtr> parts;
    for (std::size_t i = 0; i < args.size(); ++i) {
      parts.push_back(parse_condition(args[i], root, where + ".args[" + std::to_string(i) + "]"));
    }
    return op == "and" ? Condition::conj(root, std::move(parts)) : Condition::disj(root, std::move(parts));
  }
  shape(where + ".op", "unknown operator \"" + op + "\"");
}

Rule parse_rule(const std::string& name, const json& j, const SignaturePtr& sig, const std::string& where) {
  GraphPtr L = parse_graph(field(j, "L", where), sig, where + ".L");
  GraphPtr K = parse_graph(field(j, "K", where), sig, where + ".K");
  GraphPtr R = parse_graph(field(j, "R", where), sig, where + ".R");
  GraphMorphism l = parse_mapping(field(j, "l", where), K, L, where + ".l");
  GraphMorphism r = parse_mapping(field(j, "r", where), K, R, where + ".r");
  const json* cj = optional_field(j, "condition");
  ConditionPtr ac = cj ? parse_condition(*cj, L, where + ".condition") : nullptr;
  try {
    return Rule(name, std::move(l), std::move(r), std::move(ac));
  } catch (const PreconditionError& e) {
    invalid(where, e.what());
  }
}

json signature_json(const TypeSignature& sig) {
  json edges = json::array();
  for (const auto& e : sig.edge_types()) edges.push_back({{"name", e.name}, {"source", e.source}, {"target", e.target}});
  return {{"node_types", sig.node_types()}, {"edge_types", std::move(edges)}};
}

std::pair<std::size_t, std::size_t> position(const std::string& s, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < s.size(); ++i) {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

GraphPtr Workspace::graph(const std::string& ref) const {
  if (auto it = graphs.find(ref); it != graphs.end()) return it->second;
  auto dot = ref.rfind('.');
  if (dot != std::string::npos) {
    std::string owner = ref.substr(0, dot), part = ref.substr(dot + 1);
    if (auto it = rules.find(owner); it != rules.end()) {
      if (part == "L") return it->second.L();
      if (part == "K") return it->second.K();
      if (part == "R") return it->second.R();
    }
    if (auto it = kernels.find(owner); it != kernels.end()) {
      if (part == "Kcap") return it->second.kernel.Kcap();
      if (part == "V") return it->second.kernel.V();
    }
    if (auto it = e_dependencies.find(owner); it != e_dependencies.end()) {
      if (part == "E") return it->second.edep.E();
    }
  }
  throw ValidationError("unknown graph reference \"" + ref + "\"");
}

const Rule& Workspace::rule(const std::string& name) const {
  auto it = rules.find(name);
  if (it == rules.end()) throw ValidationError("unknown rule \"" + name + "\"");
  return it->second;
}

Workspace parse(const std::string& input, const SignaturePtr& signature) {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    auto [line, col] = position(input, e.byte);
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(msg, line, col);
  }
  if (!doc.is_object()) throw ParseError("document: expected an object", 1, 1);
  Workspace ws;
  ws.kind = text_field(doc, "kind", "document");
  if (!kKinds.count(ws.kind)) shape("document.kind", "unknown kind \"" + ws.kind + "\"");
  const json& version = field(doc, "format_version", "document");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    shape("document.format_version", "unsupported version " + version.dump());
  }
  if (const json* s = optional_field(doc, "signature")) {
    ws.signature = parse_signature(*s, "signature");
    if (signature && !(*signature == *ws.signature)) invalid("signature", "differs from the --signature file");
  } else {
    ws.signature = signature;
  }
  bool has_values = false;
  for (const char* k : {"graphs", "rules", "e_dependencies", "kernels", "morphisms"}) has_values |= doc.contains(k);
  if (!ws.signature && has_values) shape("document", "no signature given");

  if (const json* gs = optional_field(doc, "graphs")) {
    for (const auto& [name, g] : gs->items()) ws.graphs[name] = parse_graph(g, ws.signature, "graphs." + name);
  }
  if (const json* rs = optional_field(doc, "rules")) {
    for (const auto& [name, r] : rs->items()) ws.rules.emplace(name, parse_rule(name, r, ws.signature, "rules." + name));
  }
  if (const json* ds = optional_field(doc, "e_dependencies")) {
    for (const auto& [name, d] : ds->items()) {
      std::string w = "e_dependencies." + name;
      std::string r1 = text_field(d, "rho1", w), r2 = text_field(d, "rho2", w);
      const Rule& rho1 = ws.rule(r1);
      const Rule& rho2 = ws.rule(r2);
      GraphPtr E = parse_graph(field(d, "E", w), ws.signature, w + ".E");
      GraphMorphism e1 = parse_mapping(field(d, "e1", w), rho1.R(), E, w + ".e1");
      GraphMorphism e2 = parse_mapping(field(d, "e2", w), rho2.L(), E, w + ".e2");
      std::string why;
      auto edep = make_e_dependency(rho1, rho2, e1, e2, &why);
      if (!edep) invalid(w, why);
      ws.e_dependencies.emplace(name, DependencyEntry{r1, r2, std::move(*edep)});
    }
  }
  if (const json* ks = optional_field(doc, "kernels")) {
    for (const auto& [name, k] : ks->items()) {
      std::string w = "kernels." + name;
      std::string r1 = text_field(k, "rho1", w), r2 = text_field(k, "rho2", w);
      bool inverted = false;
      if (const json* inv = optional_field(k, "rho1_inverted")) {
        if (!inv->is_boolean()) shape(w + ".rho1_inverted", "expected a boolean");
        inverted = inv->get<bool>();
      }
      if (inverted && !ws.rule(r1).is_plain()) invalid(w, "rule " + r1 + " has a condition and cannot be inverted");
      const Rule rho1 = inverted ? invert(ws.rule(r1)) : ws.rule(r1);
      const Rule& rho2 = ws.rule(r2);
      GraphPtr Kc = parse_graph(field(k, "Kcap", w), ws.signature, w + ".Kcap");
      GraphPtr V = parse_graph(field(k, "V", w), ws.signature, w + ".V");
      bool relaxed = false;
      if (const json* rx = optional_field(k, "relaxed")) {
        if (!rx->is_boolean()) shape(w + ".relaxed", "expected a boolean");
        relaxed = rx->get<bool>();
      }
      CommonKernel kernel{parse_mapping(field(k, "k", w), Kc, V, w + ".k"),
                          parse_mapping(field(k, "u1", w), Kc, rho1.K(), w + ".u1"),
                          parse_mapping(field(k, "u2", w), Kc, rho2.K(), w + ".u2"),
                          parse_mapping(field(k, "v1", w), V, rho1.L(), w + ".v1"),
                          parse_mapping(field(k, "v2", w), V, rho2.R(), w + ".v2"), relaxed};
      std::string why;
      if (!is_common_kernel(rho1, rho2, kernel, &why)) invalid(w, why);
      ws.kernels.emplace(name, KernelEntry{r1, r2, std::move(kernel), inverted});
    }
  }
  if (const json* ms = optional_field(doc, "morphisms")) {
    for (const auto& [name, m] : ms->items()) {
      std::string w = "morphisms." + name;
      std::string from = text_field(m, "from", w), to = text_field(m, "to", w);
      GraphMorphism f = parse_mapping(m, ws.graph(from), ws.graph(to), w);
      ws.morphisms.emplace(name, MorphismEntry{from, to, std::move(f)});
    }
  }
  if (const json* rep = optional_field(doc, "report")) ws.report = *rep;
  return ws;
}

Workspace load(const std::string& path, const SignaturePtr& signature) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), signature);
}

SignaturePtr load_signature(const std::string& path) {
  Workspace ws = load(path);
  if (!ws.signature) throw ParseError(path + ": no signature");
  return ws.signature;
}

json graph_json(const TypedGraph& g) {
  json nodes = json::array(), edges = json::array();
  for (Index n = 0; n < g.node_count(); ++n) nodes.push_back({{"id", g.node_id(n)}, {"type", g.node_type_name(n)}});
  for (Index e = 0; e < g.edge_count(); ++e) {
    edges.push_back({{"id", g.edge_id(e)},
                     {"type", g.edge_type_name(e)},
                     {"source", g.node_id(g.source(e))},
                     {"target", g.node_id(g.target(e))}});
  }
  json out = {{"nodes", std::move(nodes)}};
  if (!edges.empty()) out["edges"] = std::move(edges);
  return out;
}

json mapping_json(const GraphMorphism& f) {
  json out = json::object();
  if (f.domain()->node_count()) out["nodes"] = f.node_ids();
  if (f.domain()->edge_count()) out["edges"] = f.edge_ids();
  return out;
}

json condition_json(const ConditionPtr& c) {
  using K = Condition::Kind;
  switch (c->kind()) {
    case K::True:
      return {{"op", "true"}};
    case K::Exists: {
      json out = {{"op", "exists"}, {"graph", graph_json(*c->morphism().codomain())}, {"map", mapping_json(c->morphism())}};
      if (c->sub()->kind() != K::True) out["then"] = condition_json(c->sub());
      return out;
    }
    case K::Not:
      return {{"op", "not"}, {"arg", condition_json(c->sub())}};
    case K::And:
    case K::Or: {
      json args = json::array();
      for (const auto& x : c->children()) args.push_back(condition_json(x));
      return {{"op", c->kind() == K::And ? "and" : "or"}, {"args", std::move(args)}};
    }
  }
  throw Error("internal: unknown condition kind");
}

json rule_json(const Rule& r) {
  json out = {{"L", graph_json(*r.L())},
              {"K", graph_json(*r.K())},
              {"R", graph_json(*r.R())},
              {"l", mapping_json(r.l())},
              {"r", mapping_json(r.r())}};
  if (r.ac()->kind() != Condition::Kind::True) out["condition"] = condition_json(r.ac());
  return out;
}

std::string dump(const Workspace& ws) {
  json doc = {{"kind", ws.kind}, {"format_version", kFormatVersion}};
  if (ws.signature) doc["signature"] = signature_json(*ws.signature);
  if (!ws.graphs.empty()) {
    for (const auto& [name, g] : ws.graphs) doc["graphs"][name] = graph_json(*g);
  }
  if (!ws.rules.empty()) {
    for (const auto& [name, r] : ws.rules) doc["rules"][name] = rule_json(r);
  }
  for (const auto& [name, d] : ws.e_dependencies) {
    doc["e_dependencies"][name] = {{"rho1", d.rho1},
                                   {"rho2", d.rho2},
                                   {"E", graph_json(*d.edep.E())},
                                   {"e1", mapping_json(d.edep.e1)},
                                   {"e2", mapping_json(d.edep.e2)}};
  }
  for (const auto& [name, k] : ws.kernels) {
    json kj = {{"rho1", k.rho1},
               {"rho2", k.rho2},
               {"Kcap", graph_json(*k.kernel.Kcap())},
               {"V", graph_json(*k.kernel.V())},
               {"k", mapping_json(k.kernel.k)},
               {"u1", mapping_json(k.kernel.u1)},
               {"u2", mapping_json(k.kernel.u2)},
               {"v1", mapping_json(k.kernel.v1)},
               {"v2", mapping_json(k.kernel.v2)}};
    if (k.kernel.relaxed) kj["relaxed"] = true;
    if (k.rho1_inverted) kj["rho1_inverted"] = true;
    doc["kernels"][name] = std::move(kj);
  }
  for (const auto& [name, m] : ws.morphisms) {
    json mj = mapping_json(m.f);
    mj["from"] = m.from;
    mj["to"] = m.to;
    doc["morphisms"][name] = std::move(mj);
  }
  if (!ws.report.is_null()) doc["report"] = ws.report;
  return doc.dump(2) + "\n";
}

void store(const Workspace& ws, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << dump(ws);
  if (!out) throw Error("cannot write " + path);
}

void add_step(Workspace& ws, const TransformationStep& s, const std::string& prefix) {
  const std::string& rn = s.rule.name();
  ws.rules.insert_or_assign(rn, s.rule);
  ws.graphs[prefix + "G"] = s.G();
  ws.graphs[prefix + "D"] = s.D;
  ws.graphs[prefix + "H"] = s.H;
  ws.morphisms.insert_or_assign(prefix + "m", MorphismEntry{rn + ".L", prefix + "G", s.m});
  ws.morphisms.insert_or_assign(prefix + "d", MorphismEntry{rn + ".K", prefix + "D", s.d});
  ws.morphisms.insert_or_assign(prefix + "g", MorphismEntry{prefix + "D", prefix + "G", s.g_left});
  ws.morphisms.insert_or_assign(prefix + "h", MorphismEntry{prefix + "D", prefix + "H", s.h});
  ws.morphisms.insert_or_assign(prefix + "n", MorphismEntry{rn + ".R", prefix + "H", s.n});
}

std::string to_dot(const Rule& rule) {
  const TypedGraph& L = *rule.L();
  const TypedGraph& K = *rule.K();
  const TypedGraph& R = *rule.R();
  std::vector<std::optional<Index>> l_inv(L.node_count()), r_inv(R.node_count());
  std::vector<char> l_edge_kept(L.edge_count(), 0), r_edge_kept(R.edge_count(), 0);
  for (Index x = 0; x < K.node_count(); ++x) {
    l_inv[rule.l().node(x)] = x;
    r_inv[rule.r().node(x)] = x;
  }
  for (Index x = 0; x < K.edge_count(); ++x) {
    l_edge_kept[rule.l().edge(x)] = 1;
    r_edge_kept[rule.r().edge(x)] = 1;
  }
  auto l_name = [&](Index n) { return l_inv[n] ? "k" + std::to_string(*l_inv[n]) : "l" + std::to_string(n); };
  auto r_name = [&](Index n) { return r_inv[n] ? "k" + std::to_string(*r_inv[n]) : "r" + std::to_string(n); };

  std::ostringstream os;
  os << "digraph " << quoted(rule.name()) << " {\n";
  os << "  node [shape=box];\n";
  if (!rule.is_plain()) os << "  // has application condition of depth " << depth(rule.ac()) << "\n";
  for (Index x = 0; x < K.node_count(); ++x) {
    Index n = rule.l().node(x);
    os << "  k" << x << " [label=" << quoted(L.node_id(n) + " : " + L.node_type_name(n)) << "];\n";
  }
  for (Index n = 0; n < L.node_count(); ++n) {
    if (l_inv[n]) continue;
    os << "  l" << n << " [label=" << quoted("-- " + L.node_id(n) + " : " + L.node_type_name(n))
       << ", color=red, fontcolor=red];\n";
  }
  for (Index n = 0; n < R.node_count(); ++n) {
    if (r_inv[n]) continue;
    os << "  r" << n << " [label=" << quoted("++ " + R.node_id(n) + " : " + R.node_type_name(n))
       << ", color=green3, fontcolor=green3];\n";
  }
  for (Index e = 0; e < L.edge_count(); ++e) {
    std::string label = L.edge_id(e) + " : " + L.edge_type_name(e);
    os << "  " << l_name(L.source(e)) << " -> " << l_name(L.target(e));
    if (l_edge_kept[e]) {
      os << " [label=" << quoted(label) << "];\n";
    } else {
      os << " [label=" << quoted("-- " + label) << ", color=red, fontcolor=red];\n";
    }
  }
  for (Index e = 0; e < R.edge_count(); ++e) {
    if (r_edge_kept[e]) continue;
    os << "  " << r_name(R.source(e)) << " -> " << r_name(R.target(e)) << " [label="
       << quoted("++ " + R.edge_id(e) + " : " + R.edge_type_name(e)) << ", color=green3, fontcolor=green3];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const TypedGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quoted(name) << " {\n";
  os << "  node [shape=box];\n";
  for (Index n = 0; n < g.node_count(); ++n) {
    os << "  n" << n << " [label=" << quoted(g.node_id(n) + " : " + g.node_type_name(n)) << "];\n";
  }
  for (Index e = 0; e < g.edge_count(); ++e) {
    os << "  n" << g.source(e) << " -> n" << g.target(e) << " [label="
       << quoted(g.edge_id(e) + " : " + g.edge_type_name(e)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace gcr::io
