#include "gcr/conditions.hpp"

#include <algorithm>

#include "gcr/error.hpp"
#include "gcr/limits.hpp"
#include "gcr/search.hpp"

namespace gcr {

Condition::Condition(Kind kind, GraphPtr root, std::optional<GraphMorphism> a, std::vector<ConditionPtr> children)
    : kind_(kind), root_(std::move(root)), a_(std::move(a)), children_(std::move(children)) {}

ConditionPtr Condition::make_true(GraphPtr root) {
  return std::make_shared<const Condition>(Kind::True, std::move(root), std::nullopt, std::vector<ConditionPtr>{});
}

ConditionPtr Condition::make_false(GraphPtr root) { return negate(make_true(std::move(root))); }

ConditionPtr Condition::exists(GraphMorphism a, ConditionPtr sub) {
  if (!sub) sub = make_true(a.codomain());
  if (!same_graph(sub->root(), a.codomain())) {
    throw PreconditionError("exists: nested condition is not over the codomain of its morphism");
  }
  GraphPtr root = a.domain();
  return std::make_shared<const Condition>(Kind::Exists, std::move(root), std::move(a),
                                           std::vector<ConditionPtr>{std::move(sub)});
}

ConditionPtr Condition::negate(ConditionPtr sub) {
  GraphPtr root = sub->root();
  return std::make_shared<const Condition>(Kind::Not, std::move(root), std::nullopt,
                                           std::vector<ConditionPtr>{std::move(sub)});
}

ConditionPtr Condition::conj(GraphPtr root, std::vector<ConditionPtr> children) {
  for (const auto& c : children) {
    if (!same_graph(c->root(), root)) throw PreconditionError("and: operand over a different graph");
  }
  return std::make_shared<const Condition>(Kind::And, std::move(root), std::nullopt, std::move(children));
}

ConditionPtr Condition::disj(GraphPtr root, std::vector<ConditionPtr> children) {
  if (children.empty()) return make_false(std::move(root));
  for (const auto& c : children) {
    if (!same_graph(c->root(), root)) throw PreconditionError("or: operand over a different graph");
  }
  return std::make_shared<const Condition>(Kind::Or, std::move(root), std::nullopt, std::move(children));
}

std::string_view to_string(Condition::Kind kind) {
  switch (kind) {
    case Condition::Kind::True: return "true";
    case Condition::Kind::Exists: return "exists";
    case Condition::Kind::Not: return "not";
    case Condition::Kind::And: return "and";
    case Condition::Kind::Or: return "or";
  }
  return "?";
}

bool satisfies(const GraphMorphism& g, const ConditionPtr& c, bool strict) {
  if (!same_graph(c->root(), g.domain())) throw PreconditionError("satisfies: condition is not over the morphism's domain");
  if (strict && !g.is_m()) throw PreconditionError("satisfies: morphism is not injective");
  switch (c->kind()) {
    case Condition::Kind::True:
      return true;
    case Condition::Kind::Not:
      return !satisfies(g, c->sub(), strict);
    case Condition::Kind::And:
      return std::all_of(c->children().begin(), c->children().end(),
                         [&](const ConditionPtr& x) { return satisfies(g, x, strict); });
    case Condition::Kind::Or:
      return std::any_of(c->children().begin(), c->children().end(),
                         [&](const ConditionPtr& x) { return satisfies(g, x, strict); });
    case Condition::Kind::Exists: {
      const GraphMorphism& a = c->morphism();
      SearchConstraints sc;
      sc.injective = true;
      sc.fixed_nodes.assign(a.codomain()->node_count(), std::nullopt);
      sc.fixed_edges.assign(a.codomain()->edge_count(), std::nullopt);
      for (Index x = 0; x < a.node_map().size(); ++x) {
        auto& slot = sc.fixed_nodes[a.node(x)];
        if (slot && *slot != g.node(x)) return false;
        slot = g.node(x);
      }
      for (Index x = 0; x < a.edge_map().size(); ++x) {
        auto& slot = sc.fixed_edges[a.edge(x)];
        if (slot && *slot != g.edge(x)) return false;
        slot = g.edge(x);
      }
      bool found = false;
      const GraphPtr& C = a.codomain();
      const GraphPtr& G = g.codomain();
      search_morphisms(*C, *G, sc, [&](std::span<const Index> n, std::span<const Index> e) {
        GraphMorphism q(C, G, std::vector<Index>(n.begin(), n.end()), std::vector<Index>(e.begin(), e.end()));
        found = satisfies(q, c->sub(), strict);
        return !found;
      });
      return found;
    }
  }
  return false;
}

ConditionPtr shift_along(const GraphMorphism& b, const ConditionPtr& c) {
  if (!same_graph(c->root(), b.domain())) throw PreconditionError("shift_along: condition is not over the morphism's domain");
  if (!b.is_m()) throw PreconditionError("shift_along: morphism is not injective");
  const GraphPtr& P2 = b.codomain();
  switch (c->kind()) {
    case Condition::Kind::True:
      return Condition::make_true(P2);
    case Condition::Kind::Not:
      return Condition::negate(shift_along(b, c->sub()));
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      std::vector<ConditionPtr> kids;
      for (const auto& x : c->children()) kids.push_back(shift_along(b, x));
      if (c->kind() == Condition::Kind::And) return Condition::conj(P2, std::move(kids));
      // Keep the shape: an Or never becomes something else here.
      return std::make_shared<const Condition>(Condition::Kind::Or, P2, std::nullopt, std::move(kids));
    }
    case Condition::Kind::Exists: {
      const GraphMorphism& a = c->morphism();
      if (!a.is_m()) return Condition::make_false(P2);
      OverlapOptions opt;
      opt.naming = PushoutNaming::keep_left("'");
      for (Index x = 0; x < a.node_map().size(); ++x) opt.forced_nodes.push_back({a.node(x), b.node(x)});
      for (Index x = 0; x < a.edge_map().size(); ++x) opt.forced_edges.push_back({a.edge(x), b.edge(x)});
      std::vector<ConditionPtr> branches;
      for (auto& ov : jointly_epic_overlaps(a.codomain(), P2, opt)) {
        // ov.into_a = b': C -> E, ov.into_b = a': P' -> E
        branches.push_back(Condition::exists(ov.into_b, shift_along(ov.into_a, c->sub())));
      }
      return Condition::disj(P2, std::move(branches));
    }
  }
  return nullptr;
}

ConditionPtr shift_over_span(const GraphMorphism& l, const GraphMorphism& r, const ConditionPtr& c) {
  if (!same_graph(c->root(), r.codomain())) throw PreconditionError("shift_over_rule: condition is not over the RHS");
  const GraphPtr& L = l.codomain();
  switch (c->kind()) {
    case Condition::Kind::True:
      return Condition::make_true(L);
    case Condition::Kind::Not:
      return Condition::negate(shift_over_span(l, r, c->sub()));
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      std::vector<ConditionPtr> kids;
      for (const auto& x : c->children()) kids.push_back(shift_over_span(l, r, x));
      if (c->kind() == Condition::Kind::And) return Condition::conj(L, std::move(kids));
      return std::make_shared<const Condition>(Condition::Kind::Or, L, std::nullopt, std::move(kids));
    }
    case Condition::Kind::Exists: {
      const GraphMorphism& a = c->morphism();
      if (!a.is_m()) return Condition::make_false(L);
      // Apply the inverse rule at a: complement of K -r-> R -a-> C, then
      // pushout along l.
      ComplementResult pc = pushout_complement(r, a);
      if (!pc) return Condition::make_false(L);
      CospanPO po = pushout(l, pc.value->d, PushoutNaming::keep_left("*"));
      return Condition::exists(po.left_leg, shift_over_span(po.right_leg, pc.value->g, c->sub()));
    }
  }
  return nullptr;
}

std::size_t depth(const ConditionPtr& c) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return 0;
    case Condition::Kind::Exists:
      return 1 + depth(c->sub());
    case Condition::Kind::Not:
      return depth(c->sub());
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      std::size_t d = 0;
      for (const auto& x : c->children()) d = std::max(d, depth(x));
      return d;
    }
  }
  return 0;
}

bool same_shape(const ConditionPtr& a, const ConditionPtr& b) {
  if (a->kind() != b->kind()) return false;
  if (a->kind() == Condition::Kind::Exists) return true;
  if (a->children().size() != b->children().size()) return false;
  for (std::size_t i = 0; i < a->children().size(); ++i) {
    if (!same_shape(a->children()[i], b->children()[i])) return false;
  }
  return true;
}

bool is_trivially_true(const ConditionPtr& c) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return true;
    case Condition::Kind::And:
      return std::all_of(c->children().begin(), c->children().end(), is_trivially_true);
    case Condition::Kind::Or:
      return std::any_of(c->children().begin(), c->children().end(), is_trivially_true);
    default:
      return false;
  }
}

std::size_t condition_size(const ConditionPtr& c) {
  std::size_t n = 1;
  for (const auto& x : c->children()) n += condition_size(x);
  return n;
}

}  // namespace gcr
