#include "gcr/rules.hpp"

#include <sstream>

#include "gcr/error.hpp"
#include "gcr/search.hpp"

namespace gcr {

Rule::Rule(std::string name, GraphMorphism l, GraphMorphism r, ConditionPtr ac)
    : name_(std::move(name)), l_(std::move(l)), r_(std::move(r)), ac_(std::move(ac)) {
  if (!same_graph(l_.domain(), r_.domain())) throw PreconditionError("rule '" + name_ + "': l and r have different domains");
  if (!l_.is_m()) throw PreconditionError("rule '" + name_ + "': l is not injective");
  if (!r_.is_m()) throw PreconditionError("rule '" + name_ + "': r is not injective");
  if (!ac_) ac_ = Condition::make_true(l_.codomain());
  if (!same_graph(ac_->root(), l_.codomain())) {
    throw PreconditionError("rule '" + name_ + "': application condition is not over L");
  }
}

Rule Rule::renamed(std::string name) const { return Rule(std::move(name), l_, r_, ac_); }

Rule Rule::with_condition(ConditionPtr ac) const { return Rule(name_, l_, r_, std::move(ac)); }

std::string_view to_string(Applicability::Kind kind) {
  switch (kind) {
    case Applicability::Kind::Ok: return "Ok";
    case Applicability::Kind::DanglingEdge: return "DanglingEdge";
    case Applicability::Kind::ConditionViolated: return "ConditionViolated";
  }
  return "?";
}

std::string Applicability::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind == Kind::DanglingEdge) {
    for (std::size_t i = 0; i < dangling.size(); ++i) {
      os << (i ? ", " : " at ") << "node " << dangling[i].node << " (edge " << dangling[i].edge << ")";
    }
  }
  return os.str();
}

namespace {

void check_match(const Rule& rule, const GraphMorphism& m) {
  if (!same_graph(m.domain(), rule.L())) throw PreconditionError("match is not defined on the rule's LHS");
  if (!m.is_m()) throw PreconditionError("match is not injective");
}

}  // namespace

Applicability applicable(const Rule& rule, const GraphMorphism& m) {
  check_match(rule, m);
  Applicability out;
  ComplementResult pc = pushout_complement(rule.l(), m);
  if (!pc) {
    out.kind = Applicability::Kind::DanglingEdge;
    out.dangling = std::move(pc.dangling);
    return out;
  }
  if (!satisfies(m, rule.ac())) out.kind = Applicability::Kind::ConditionViolated;
  return out;
}

bool applicable_via_initial_pushout(const Rule& rule, const GraphMorphism& m) {
  check_match(rule, m);
  InitialPushoutResult ipo = initial_pushout(m);
  // b_m* : B_m -> K with l ∘ b_m* = b_m; B_m is discrete.
  const GraphMorphism& l = rule.l();
  SearchConstraints c;
  c.node_filter = [&](Index y, Index k) { return l.node(k) == ipo.b.node(y); };
  return count_morphisms(ipo.boundary, rule.K(), c, 1) == 1;
}

TransformationStep apply(const Rule& rule, const GraphMorphism& m, const std::string& tag) {
  Applicability a = applicable(rule, m);
  if (!a.ok()) throw NotApplicable("rule '" + rule.name() + "' is not applicable: " + a.describe());
  ComplementResult pc = pushout_complement(rule.l(), m);
  PushoutComplement& c = *pc.value;
  CospanPO po = pushout(c.d, rule.r(), PushoutNaming::keep_left("#" + (tag.empty() ? rule.name() : tag)));
  return TransformationStep{rule, m, c.D, c.d, c.g, po.apex, po.left_leg, po.right_leg};
}

Rule invert(const Rule& rule) {
  if (!rule.is_plain()) throw PreconditionError("invert: rule '" + rule.name() + "' has an application condition");
  return Rule(rule.name() + "^-1", rule.r(), rule.l());
}

std::vector<MatchInfo> enumerate_matches(const Rule& rule, const GraphPtr& G) {
  std::vector<MatchInfo> out;
  for (auto& m : enumerate_morphisms(rule.L(), G, true)) {
    Applicability a = applicable(rule, m);
    out.push_back({std::move(m), std::move(a)});
  }
  return out;
}

ConditionPtr shift_over_rule(const Rule& rule, const ConditionPtr& c) { return shift_over_span(rule.l(), rule.r(), c); }

std::optional<SpanIsomorphism> find_span_isomorphism(const Rule& a, const Rule& b) {
  const GraphMorphism& la = a.l();
  const GraphMorphism& lb = b.l();
  if (a.L()->node_count() != b.L()->node_count() || a.K()->node_count() != b.K()->node_count() ||
      a.R()->node_count() != b.R()->node_count() || a.L()->edge_count() != b.L()->edge_count() ||
      a.K()->edge_count() != b.K()->edge_count() || a.R()->edge_count() != b.R()->edge_count()) {
    return std::nullopt;
  }
  std::vector<char> ina_n(a.L()->node_count(), 0), ina_e(a.L()->edge_count(), 0);
  std::vector<char> inb_n(b.L()->node_count(), 0), inb_e(b.L()->edge_count(), 0);
  for (Index x : la.node_map()) ina_n[x] = 1;
  for (Index x : la.edge_map()) ina_e[x] = 1;
  for (Index x : lb.node_map()) inb_n[x] = 1;
  for (Index x : lb.edge_map()) inb_e[x] = 1;
  std::vector<Index> lb_inv_n(b.L()->node_count(), 0), lb_inv_e(b.L()->edge_count(), 0);
  for (Index k = 0; k < lb.node_map().size(); ++k) lb_inv_n[lb.node(k)] = k;
  for (Index k = 0; k < lb.edge_map().size(); ++k) lb_inv_e[lb.edge(k)] = k;

  SearchConstraints c;
  c.bijective = true;
  c.node_filter = [&](Index x, Index y) { return ina_n[x] == inb_n[y]; };
  c.edge_filter = [&](Index x, Index y) { return ina_e[x] == inb_e[y]; };
  std::optional<SpanIsomorphism> out;
  search_morphisms(*a.L(), *b.L(), c, [&](std::span<const Index> n, std::span<const Index> e) {
    GraphMorphism iL(a.L(), b.L(), std::vector<Index>(n.begin(), n.end()), std::vector<Index>(e.begin(), e.end()));
    std::vector<Index> kn(a.K()->node_count()), ke(a.K()->edge_count());
    for (Index k = 0; k < kn.size(); ++k) kn[k] = lb_inv_n[iL.node(la.node(k))];
    for (Index k = 0; k < ke.size(); ++k) ke[k] = lb_inv_e[iL.edge(la.edge(k))];
    GraphMorphism iK(a.K(), b.K(), std::move(kn), std::move(ke));
    std::vector<std::optional<Index>> fn(a.R()->node_count()), fe(a.R()->edge_count());
    for (Index k = 0; k < a.r().node_map().size(); ++k) fn[a.r().node(k)] = b.r().node(iK.node(k));
    for (Index k = 0; k < a.r().edge_map().size(); ++k) fe[a.r().edge(k)] = b.r().edge(iK.edge(k));
    auto iR = find_isomorphism(a.R(), b.R(), std::move(fn), std::move(fe));
    if (!iR) return true;
    out = SpanIsomorphism{std::move(iL), std::move(iK), std::move(*iR)};
    return false;
  });
  return out;
}

}  // namespace gcr
