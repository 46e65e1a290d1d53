#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcr/morphism.hpp"

namespace gcr {

class Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

/// Nested condition over a root graph P. Immutable; children are shared.
/// false is represented as Not(True), and an empty Or is turned into it.
class Condition {
 public:
  enum class Kind { True, Exists, Not, And, Or };

  static ConditionPtr make_true(GraphPtr root);
  static ConditionPtr make_false(GraphPtr root);
  /// Exists(a: P -> C, sub) with sub over C (True when omitted).
  static ConditionPtr exists(GraphMorphism a, ConditionPtr sub = nullptr);
  static ConditionPtr negate(ConditionPtr sub);
  static ConditionPtr conj(GraphPtr root, std::vector<ConditionPtr> children);
  static ConditionPtr disj(GraphPtr root, std::vector<ConditionPtr> children);

  Kind kind() const { return kind_; }
  const GraphPtr& root() const { return root_; }
  const GraphMorphism& morphism() const { return *a_; }  // Exists only
  const ConditionPtr& sub() const { return children_.front(); }  // Exists and Not
  const std::vector<ConditionPtr>& children() const { return children_; }

  bool is_false() const { return kind_ == Kind::Not && children_.front()->kind_ == Kind::True; }

  Condition(Kind kind, GraphPtr root, std::optional<GraphMorphism> a, std::vector<ConditionPtr> children);

 private:
  Kind kind_;
  GraphPtr root_;
  std::optional<GraphMorphism> a_;
  std::vector<ConditionPtr> children_;
};

std::string_view to_string(Condition::Kind kind);

/// Does the injective morphism g: P -> G satisfy c? With `strict` a
/// non-injective g is rejected with PreconditionError; otherwise it is
/// evaluated with the same (injective q) semantics.
bool satisfies(const GraphMorphism& g, const ConditionPtr& c, bool strict = true);

/// Shift of c along the M-morphism b: P -> P'.
ConditionPtr shift_along(const GraphMorphism& b, const ConditionPtr& c);

/// Left of c (over R) over the plain span L <-l- K -r-> R. A branch whose
/// morphism is not injective, or whose pushout complement does not exist,
/// becomes false.
ConditionPtr shift_over_span(const GraphMorphism& l, const GraphMorphism& r, const ConditionPtr& c);

/// Nesting depth: number of Exists on the longest root-to-leaf path.
std::size_t depth(const ConditionPtr& c);

/// Same tree shape and kinds (morphisms ignored).
bool same_shape(const ConditionPtr& a, const ConditionPtr& b);

/// Made of True, And and Or only, so satisfied by every morphism.
bool is_trivially_true(const ConditionPtr& c);

/// Number of nodes in the condition tree.
std::size_t condition_size(const ConditionPtr& c);

}  // namespace gcr
