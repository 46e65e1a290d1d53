#include "gcr/theorems.hpp"

#include "gcr/error.hpp"
#include "gcr/search.hpp"

namespace gcr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

GraphMorphism must(std::optional<GraphMorphism> f, const char* what) {
  if (!f) throw Error(std::string("internal: ") + what + " does not exist");
  return std::move(*f);
}

bool same_span(const Rule& a, const Rule& b) {
  return same_graph(a.L(), b.L()) && same_graph(a.K(), b.K()) && same_graph(a.R(), b.R()) && a.l() == b.l() &&
         a.r() == b.r();
}

bool same_dependency(const EDependency& a, const EDependency& b) { return a.e1 == b.e1 && a.e2 == b.e2; }

}  // namespace

std::optional<GraphMorphism> is_e_related(const TransformationStep& step1, const TransformationStep& step2,
                                          const EDependency& edep) {
  require(same_graph(step2.G(), step1.H), "is_e_related: the second step does not start at the first result");
  require(same_graph(edep.e1.domain(), step1.rule.R()) && same_graph(edep.e2.domain(), step2.rule.L()),
          "is_e_related: E-dependency belongs to other rules");
  const TypedGraph& E = *edep.E();
  std::vector<std::optional<Index>> nodes(E.node_count()), edges(E.edge_count());
  auto assign = [](std::vector<std::optional<Index>>& slots, Index at, Index value) {
    if (slots[at] && *slots[at] != value) return false;
    slots[at] = value;
    return true;
  };
  for (const auto& [e, g] : {std::pair{&edep.e1, &step1.n}, std::pair{&edep.e2, &step2.m}}) {
    for (Index x = 0; x < e->domain()->node_count(); ++x) {
      if (!assign(nodes, e->node(x), g->node(x))) return std::nullopt;
    }
    for (Index x = 0; x < e->domain()->edge_count(); ++x) {
      if (!assign(edges, e->edge(x), g->edge(x))) return std::nullopt;
    }
  }
  std::vector<Index> nm, em;
  for (const auto& x : nodes) {
    if (!x) throw Error("internal: E is not covered by e1 and e2");
    nm.push_back(*x);
  }
  for (const auto& x : edges) {
    if (!x) throw Error("internal: E is not covered by e1 and e2");
    em.push_back(*x);
  }
  GraphMorphism h(edep.E(), step1.H, std::move(nm), std::move(em));
  if (!h.is_m()) return std::nullopt;
  return h;
}

std::optional<ERelatedPair> make_e_related_pair(const TransformationStep& step1, const TransformationStep& step2,
                                                const EDependency& edep) {
  auto h = is_e_related(step1, step2, edep);
  if (!h) return std::nullopt;
  return ERelatedPair{step1, step2, edep, std::move(*h)};
}

std::optional<GraphMorphism> result_isomorphism(const TransformationStep& a, const GraphMorphism& ea,
                                                const TransformationStep& b) {
  require(same_graph(ea.codomain(), a.rule.R()) && same_graph(ea.domain(), b.rule.R()),
          "result_isomorphism: ea does not relate the right-hand sides");
  GraphMorphism an = compose(ea, a.n);
  std::vector<std::optional<Index>> fn(a.H->node_count()), fe(a.H->edge_count());
  for (Index x = 0; x < ea.domain()->node_count(); ++x) fn[an.node(x)] = b.n.node(x);
  for (Index x = 0; x < ea.domain()->edge_count(); ++x) fe[an.edge(x)] = b.n.edge(x);
  return find_isomorphism(a.H, b.H, std::move(fn), std::move(fe));
}

TransformationStep synthesize(const ERelatedPair& pair, const GcrResult& gcr_result) {
  const ConcurrentRuleResult& base = gcr_result.base;
  require(same_dependency(base.edep, pair.edep), "synthesize: the GCR was built for another E-dependency");
  require(same_span(base.rho1, pair.step1.rule) && same_span(base.rho2, pair.step2.rule),
          "synthesize: the GCR was built for other rules");
  const TransformationStep& s1 = pair.step1;
  // C1 lands in the context D1 of the first step.
  GraphMorphism d = must(factor_through(compose(base.edep.r1p, pair.h), s1.h), "C1 -> D1");
  GraphMorphism m = must(induced_from_pushout(base.l1p, base.e1p, compose(d, s1.g_left), s1.m), "match of the GCR");
  Applicability v = applicable(gcr_result.rule, m);
  if (!v.ok()) throw Error("synthesis failed: the GCR is not applicable at the induced match: " + v.describe());
  TransformationStep step = apply(gcr_result.rule, m);
  if (!result_isomorphism(step, base.e2p, pair.step2)) {
    throw Error("synthesis failed: result is not isomorphic to the sequential result");
  }
  return step;
}

TransformationStep synthesize(const ERelatedPair& pair, const CommonKernel& kernel) {
  auto base = concurrent_rule(pair.step1.rule, pair.step2.rule, pair.edep);
  return synthesize(pair, gcr(base, kernel));
}

std::string AnalysisOutcome::describe() const {
  if (decomposed()) return "Decomposed";
  return "Blocked: " + reason.describe();
}

AnalysisOutcome analyze(const TransformationStep& step, const GcrResult& context) {
  require(same_span(step.rule, context.rule), "analyze: the step does not use the given GCR");
  const ConcurrentRuleResult& base = context.base;
  const EDependency& edep = base.edep;
  AnalysisOutcome out;
  GraphMorphism m1 = compose(base.e1p, step.m);
  out.reason = applicable(base.rho1, m1);
  if (!out.reason.ok()) return out;

  TransformationStep s1 = apply(base.rho1, m1);
  GraphMorphism d = must(factor_through(compose(base.l1p, step.m), s1.g_left), "C1 -> D1");
  GraphMorphism h = must(induced_from_pushout(edep.e1, edep.r1p, s1.n, compose(d, s1.h)), "E -> G1");
  if (!h.is_m()) throw Error("analysis failed: E -> G1 is not injective");
  GraphMorphism m2 = compose(edep.e2, h);
  Applicability v2 = applicable(base.rho2, m2);
  if (!v2.ok()) throw Error("analysis failed: second rule not applicable: " + v2.describe());
  TransformationStep s2 = apply(base.rho2, m2);
  if (!result_isomorphism(step, base.e2p, s2)) {
    throw Error("analysis failed: sequential result is not isomorphic to the GCR result");
  }
  out.kind = AnalysisOutcome::Kind::Decomposed;
  out.pair = ERelatedPair{std::move(s1), std::move(s2), edep, std::move(h)};
  return out;
}

PreservationResult preservation_embedding(const TransformationStep& cr_step, const GcrResult& gcr_result) {
  require(same_span(cr_step.rule, gcr_result.base.rule), "preservation_embedding: the step does not use the base CR");
  const GraphMorphism& kp = gcr_result.k_prime;
  const Rule& rule = gcr_result.rule;
  CospanPO po = pushout(cr_step.d, kp, PushoutNaming::keep_left());
  const GraphMorphism& kpp = po.left_leg;
  const GraphMorphism& dp = po.right_leg;
  GraphMorphism g0 = must(induced_from_pushout(kpp, dp, cr_step.g_left, compose(rule.l(), cr_step.m)), "D' -> G0");
  GraphMorphism g2 = must(induced_from_pushout(kpp, dp, cr_step.h, compose(rule.r(), cr_step.n)), "D' -> G2");
  if (!is_pushout(rule.l(), dp, cr_step.m, g0) || !is_pushout(rule.r(), dp, cr_step.n, g2)) {
    throw Error("preservation failed: the squares over D' are not pushouts");
  }
  if (!kpp.is_m() || kpp.is_isomorphism() != kp.is_isomorphism()) {
    throw Error("preservation failed: k'' is not an embedding that mirrors k'");
  }
  TransformationStep step{rule, cr_step.m, po.apex, dp, std::move(g0), cr_step.H, std::move(g2), cr_step.n};
  return PreservationResult{std::move(step), kpp};
}

}  // namespace gcr
