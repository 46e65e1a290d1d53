#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcr/graph.hpp"

namespace gcr {

/// Total, type- and incidence-preserving map between two typed graphs.
///
/// A morphism is flagged M exactly when both the node and the edge component
/// are injective; the flag is computed once at construction.
class GraphMorphism {
 public:
  /// Throws ValidationError if the maps are not total or do not preserve
  /// types, sources and targets.
  GraphMorphism(GraphPtr domain, GraphPtr codomain, std::vector<Index> node_map,
                std::vector<Index> edge_map);

  static GraphMorphism identity(const GraphPtr& g);

  /// The unique morphism out of an empty graph.
  static GraphMorphism from_empty(const GraphPtr& domain, const GraphPtr& codomain);

  /// Builds a morphism from id-to-id tables. Elements whose ids coincide in
  /// domain and codomain may be omitted when `by_id_default` is set.
  static GraphMorphism from_ids(GraphPtr domain, GraphPtr codomain,
                                const std::map<std::string, std::string>& nodes,
                                const std::map<std::string, std::string>& edges,
                                bool by_id_default = false);

  /// Maps every element to the codomain element carrying the same id.
  static GraphMorphism inclusion(GraphPtr domain, GraphPtr codomain);

  const GraphPtr& domain() const { return dom_; }
  const GraphPtr& codomain() const { return cod_; }

  Index node(Index n) const { return nodes_[n]; }
  Index edge(Index e) const { return edges_[e]; }
  const std::vector<Index>& node_map() const { return nodes_; }
  const std::vector<Index>& edge_map() const { return edges_; }

  bool is_injective() const { return injective_; }
  bool is_m() const { return injective_; }
  bool is_surjective() const;
  bool is_isomorphism() const { return injective_ && is_surjective(); }

  std::map<std::string, std::string> node_ids() const;
  std::map<std::string, std::string> edge_ids() const;

  friend bool operator==(const GraphMorphism& a, const GraphMorphism& b);

 private:
  GraphPtr dom_;
  GraphPtr cod_;
  std::vector<Index> nodes_;
  std::vector<Index> edges_;
  bool injective_ = false;
};

/// Sequential composition: returns g ∘ f. Requires codomain(f) == domain(g).
GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g);

/// Inverse of an isomorphism.
GraphMorphism inverse(const GraphMorphism& iso);

/// Square commutation: g1 ∘ f1 == g2 ∘ f2.
bool commutes(const GraphMorphism& f1, const GraphMorphism& g1, const GraphMorphism& f2,
              const GraphMorphism& g2);

}  // namespace gcr
