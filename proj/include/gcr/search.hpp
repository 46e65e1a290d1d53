#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcr/morphism.hpp"

namespace gcr {

/// Restrictions applied by the backtracking morphism search.
struct SearchConstraints {
  bool injective = false;
  /// Only bijections (isomorphisms) are reported; implies `injective`.
  bool bijective = false;
  /// Optional pre-assignment per source node / edge (empty = unconstrained).
  std::vector<std::optional<Index>> fixed_nodes;
  std::vector<std::optional<Index>> fixed_edges;
  /// Extra admissibility predicates (source element, candidate image).
  std::function<bool(Index, Index)> node_filter;
  std::function<bool(Index, Index)> edge_filter;
};

/// Callback receiving each solution; return false to stop the search.
using MorphismVisitor = std::function<bool(std::span<const Index> nodes, std::span<const Index> edges)>;

/// Enumerates every morphism src -> dst satisfying the constraints, in a
/// deterministic order. Pruning uses types, incidences already fixed and,
/// for injective searches, degree and multiplicity bounds.
void search_morphisms(const TypedGraph& src, const TypedGraph& dst, const SearchConstraints& constraints,
                      const MorphismVisitor& visit);

/// All morphisms src -> dst satisfying the constraints.
std::vector<GraphMorphism> find_morphisms(const GraphPtr& src, const GraphPtr& dst,
                                          const SearchConstraints& constraints);

/// First morphism satisfying the constraints, if any.
std::optional<GraphMorphism> find_morphism(const GraphPtr& src, const GraphPtr& dst,
                                           const SearchConstraints& constraints);

/// Number of morphisms satisfying the constraints, stopping at `limit`.
std::size_t count_morphisms(const GraphPtr& src, const GraphPtr& dst, const SearchConstraints& constraints,
                            std::size_t limit = static_cast<std::size_t>(-1));

bool is_isomorphism(const GraphMorphism& f);

/// A witness isomorphism a -> b, or nothing.
std::optional<GraphMorphism> are_isomorphic(const GraphPtr& a, const GraphPtr& b);

/// An isomorphism a -> b that agrees with the given partial assignment.
std::optional<GraphMorphism> find_isomorphism(const GraphPtr& a, const GraphPtr& b,
                                              std::vector<std::optional<Index>> fixed_nodes,
                                              std::vector<std::optional<Index>> fixed_edges);

/// Isomorphic copy with ids "<prefix>_<i>" for nodes and "<prefix>_e<i>" for
/// edges, numbered in (type, original id) order and zero-padded so that the
/// scheme is stable under re-application. Returns the copy and the renaming
/// isomorphism g -> copy.
std::pair<GraphPtr, GraphMorphism> canonical_rename(const GraphPtr& g, const std::string& prefix);

}  // namespace gcr
