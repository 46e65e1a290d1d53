#include "gcr/corpus.hpp"

namespace gcr::corpus {

SignaturePtr signature() {
  static SignaturePtr sig = make_signature({"A", "B"}, {{"f", "A", "A"}, {"g", "A", "B"}});
  return sig;
}

namespace {

void add_random_edge(Rng& rng, GraphData& d, const std::vector<std::string>& as, const std::vector<std::string>& bs,
                     const std::string& id) {
  const std::string& s = as[rng() % as.size()];
  if (!bs.empty() && rng() % 3 == 0) {
    d.edge(id, "g", s, bs[rng() % bs.size()]);
  } else {
    d.edge(id, "f", s, as[rng() % as.size()]);
  }
}

}  // namespace

GraphPtr random_graph(Rng& rng, std::size_t max_nodes, std::size_t max_edges, const std::string& prefix) {
  GraphData d;
  std::vector<std::string> as, bs;
  std::size_t n = rng() % (max_nodes + 1);
  for (std::size_t i = 0; i < n; ++i) {
    bool a = rng() % 3 != 0;
    std::string id = prefix + std::to_string(i);
    d.node(id, a ? "A" : "B");
    (a ? as : bs).push_back(id);
  }
  std::size_t m = as.empty() ? 0 : rng() % (max_edges + 1);
  for (std::size_t i = 0; i < m; ++i) add_random_edge(rng, d, as, bs, prefix + "e" + std::to_string(i));
  return make_graph(signature(), d);
}

GraphMorphism random_extension(Rng& rng, const GraphPtr& base, std::size_t max_new_nodes, std::size_t max_new_edges,
                               const std::string& prefix) {
  GraphData d = base->data();
  std::vector<std::string> as, bs;
  for (Index n = 0; n < base->node_count(); ++n) {
    (base->node_type_name(n) == "A" ? as : bs).push_back(base->node_id(n));
  }
  std::size_t n = rng() % (max_new_nodes + 1);
  for (std::size_t i = 0; i < n; ++i) {
    bool a = rng() % 3 != 0;
    std::string id = prefix + std::to_string(i);
    d.node(id, a ? "A" : "B");
    (a ? as : bs).push_back(id);
  }
  std::size_t m = as.empty() ? 0 : rng() % (max_new_edges + 1);
  for (std::size_t i = 0; i < m; ++i) add_random_edge(rng, d, as, bs, prefix + "e" + std::to_string(i));
  return GraphMorphism::inclusion(base, make_graph(base->signature(), d));
}

namespace {

GraphMorphism proper_extension(Rng& rng, const GraphPtr& root, std::size_t max_nodes, const std::string& prefix) {
  std::size_t room = max_nodes > root->node_count() ? 1 : 0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    GraphMorphism ext = random_extension(rng, root, room, 2, prefix);
    if (ext.codomain()->size() > root->size()) return ext;
  }
  return GraphMorphism::identity(root);
}

}  // namespace

ConditionPtr random_condition(Rng& rng, const GraphPtr& root, std::size_t depth, std::size_t max_nodes) {
  if (depth == 0) return Condition::make_true(root);
  const std::string prefix = "c" + std::to_string(depth) + "_";
  switch (rng() % 6) {
    case 0:
      return Condition::make_true(root);
    case 1:
    case 2: {
      GraphMorphism a = proper_extension(rng, root, max_nodes, prefix);
      ConditionPtr sub = random_condition(rng, a.codomain(), depth - 1, max_nodes);
      return Condition::exists(std::move(a), std::move(sub));
    }
    case 3: {
      GraphMorphism a = proper_extension(rng, root, max_nodes, prefix);
      ConditionPtr sub = random_condition(rng, a.codomain(), depth - 1, max_nodes);
      return Condition::negate(Condition::exists(std::move(a), std::move(sub)));
    }
    case 4:
      return Condition::conj(root, {random_condition(rng, root, depth - 1, max_nodes),
                                    random_condition(rng, root, depth, max_nodes)});
    default:
      return Condition::disj(root, {random_condition(rng, root, depth - 1, max_nodes),
                                    random_condition(rng, root, depth - 1, max_nodes)});
  }
}

Rule random_rule(Rng& rng, const std::string& name, const RuleOptions& options) {
  GraphPtr K = random_graph(rng, options.max_kernel_nodes, 2, "k");
  std::size_t room = options.max_side_nodes > K->node_count() ? options.max_side_nodes - K->node_count() : 0;
  GraphMorphism l = options.monotonic ? GraphMorphism::identity(K) : random_extension(rng, K, room, 2, "l");
  GraphMorphism r = random_extension(rng, K, room, 2, "r");
  ConditionPtr ac;
  if (rng() % 100 < options.condition_percent) {
    GraphMorphism a = proper_extension(rng, l.codomain(), options.max_side_nodes + 1, "x");
    ConditionPtr e = Condition::exists(std::move(a));
    ac = rng() % 2 ? Condition::negate(e) : e;
  }
  return Rule(name, std::move(l), std::move(r), std::move(ac));
}

std::vector<Sequence> sequences(std::uint64_t seed, std::size_t count, std::size_t max_host_nodes,
                                const RuleOptions& options) {
  Rng rng(seed);
  std::vector<Sequence> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < count * 400; ++attempt) {
    Rule rho1 = random_rule(rng, "rho1_" + std::to_string(attempt), options);
    Rule rho2 = random_rule(rng, "rho2_" + std::to_string(attempt), options);
    if (rho1.L()->node_count() > max_host_nodes) continue;
    GraphPtr G0 = random_extension(rng, rho1.L(), max_host_nodes - rho1.L()->node_count(), 3, "h").codomain();
    std::vector<GraphMorphism> first;
    for (auto& mi : enumerate_matches(rho1, G0)) {
      if (mi.verdict.ok()) first.push_back(std::move(mi.m));
    }
    if (first.empty()) continue;
    TransformationStep s1 = apply(rho1, first[rng() % first.size()], "1");
    std::vector<GraphMorphism> second;
    for (auto& mi : enumerate_matches(rho2, s1.H)) {
      if (mi.verdict.ok()) second.push_back(std::move(mi.m));
    }
    if (second.empty()) continue;
    TransformationStep s2 = apply(rho2, second[rng() % second.size()], "2");
    out.push_back(Sequence{std::move(s1), std::move(s2)});
  }
  return out;
}

}  // namespace gcr::corpus
