#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcr/conditions.hpp"
#include "gcr/limits.hpp"

namespace gcr {

/// Span L <-l- K -r-> R of injective morphisms with an application
/// condition over L.
class Rule {
 public:
  /// Throws PreconditionError unless l and r are injective with a common
  /// domain and ac (True when null) is over L.
  Rule(std::string name, GraphMorphism l, GraphMorphism r, ConditionPtr ac = nullptr);

  const std::string& name() const { return name_; }
  const GraphPtr& L() const { return l_.codomain(); }
  const GraphPtr& K() const { return l_.domain(); }
  const GraphPtr& R() const { return r_.codomain(); }
  const GraphMorphism& l() const { return l_; }
  const GraphMorphism& r() const { return r_; }
  const ConditionPtr& ac() const { return ac_; }

  bool is_plain() const { return is_trivially_true(ac_); }
  /// Deletes nothing (l is an isomorphism).
  bool is_monotonic() const { return l_.is_isomorphism(); }

  Rule renamed(std::string name) const;
  Rule with_condition(ConditionPtr ac) const;

 private:
  std::string name_;
  GraphMorphism l_;
  GraphMorphism r_;
  ConditionPtr ac_;
};

struct Applicability {
  enum class Kind { Ok, DanglingEdge, ConditionViolated } kind = Kind::Ok;
  std::vector<DanglingWitness> dangling;

  bool ok() const { return kind == Kind::Ok; }
  std::string describe() const;
};

std::string_view to_string(Applicability::Kind kind);

/// Dangling condition first, then the application condition.
Applicability applicable(const Rule& rule, const GraphMorphism& m);

/// Plain applicability through the initial pushout over m: the boundary
/// b_m must factor through l.
bool applicable_via_initial_pushout(const Rule& rule, const GraphMorphism& m);

struct TransformationStep {
  Rule rule;
  GraphMorphism m;       // L -> G
  GraphPtr D;
  GraphMorphism d;       // K -> D
  GraphMorphism g_left;  // D -> G
  GraphPtr H;
  GraphMorphism h;       // D -> H
  GraphMorphism n;       // R -> H, the comatch

  const GraphPtr& G() const { return m.codomain(); }
};

/// Direct transformation at m. D keeps the ids of G and H those of D;
/// created elements are named "<R id>#<tag>" (tag defaults to the rule
/// name), made unique with ".2", ".3", ... Throws NotApplicable.
TransformationStep apply(const Rule& rule, const GraphMorphism& m, const std::string& tag = {});

/// Swaps both sides of a plain rule.
Rule invert(const Rule& rule);

struct MatchInfo {
  GraphMorphism m;
  Applicability verdict;
};

std::vector<MatchInfo> enumerate_matches(const Rule& rule, const GraphPtr& G);

/// Left of a condition over R over the rule's plain span.
ConditionPtr shift_over_rule(const Rule& rule, const ConditionPtr& c);

struct SpanIsomorphism {
  GraphMorphism iL, iK, iR;
};

/// Isomorphisms of the three objects commuting with both legs.
std::optional<SpanIsomorphism> find_span_isomorphism(const Rule& a, const Rule& b);

}  // namespace gcr
