#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcr/morphism.hpp"

namespace gcr {

std::vector<GraphMorphism> enumerate_morphisms(const GraphPtr& src, const GraphPtr& dst, bool injective_only);

// ---------------------------------------------------------------------------
// Pushouts and pullbacks
// ---------------------------------------------------------------------------

/// How apex ids of a pushout are chosen.
///   Canonical: tag each class by its representative, then canonical_rename
///              with `prefix`.
///   KeepLeft:  elements hit by the left leg keep the (smallest) left id; the
///              others take their right id followed by `suffix`. Clashes are
///              resolved by appending ".2", ".3", ...
struct PushoutNaming {
  enum class Mode { Canonical, KeepLeft } mode = Mode::KeepLeft;
  std::string prefix = "po";
  std::string suffix;

  static PushoutNaming canonical(std::string prefix) { return {Mode::Canonical, std::move(prefix), {}}; }
  static PushoutNaming keep_left(std::string suffix = {}) { return {Mode::KeepLeft, "po", std::move(suffix)}; }
};

struct Preimage {
  int side;  // 0 = left object B, 1 = right object C
  Index element;
};

struct CospanPO {
  GraphPtr apex;
  GraphMorphism left_leg;   // B -> apex
  GraphMorphism right_leg;  // C -> apex
  std::vector<std::vector<Preimage>> node_provenance;
  std::vector<std::vector<Preimage>> edge_provenance;
};

/// Pushout of the span B <-f- A -g-> C. At least one of f, g must be M.
CospanPO pushout(const GraphMorphism& f, const GraphMorphism& g, const PushoutNaming& naming = {});

struct SpanPB {
  GraphPtr apex;
  GraphMorphism left_leg;   // apex -> B
  GraphMorphism right_leg;  // apex -> C
};

/// Pullback of the cospan B -f-> D <-g- C, built from agreeing pairs. A pair
/// whose two ids coincide keeps that id, others are named "<b>|<c>".
SpanPB pullback(const GraphMorphism& f, const GraphMorphism& g);

// ---------------------------------------------------------------------------
// Pushout complements and initial pushouts
// ---------------------------------------------------------------------------

struct DanglingWitness {
  std::string node;  // node of G scheduled for deletion
  std::string edge;  // edge of G outside m(L) attached to it
  friend bool operator==(const DanglingWitness&, const DanglingWitness&) = default;
};

struct PushoutComplement {
  GraphPtr D;
  GraphMorphism d;  // K -> D
  GraphMorphism g;  // D -> G, an inclusion keeping G's ids
};

struct ComplementResult {
  std::optional<PushoutComplement> value;
  std::vector<DanglingWitness> dangling;

  explicit operator bool() const { return value.has_value(); }
};

/// Pushout complement of K -l-> L -m-> G for M-morphisms l and m. Returns the
/// offending (node, edge) pairs when the dangling condition fails.
ComplementResult pushout_complement(const GraphMorphism& l, const GraphMorphism& m);

struct InitialPushoutResult {
  GraphPtr boundary;  // B_f
  GraphPtr context;   // C_f
  GraphMorphism b;    // B_f -> A
  GraphMorphism x;    // B_f -> C_f
  GraphMorphism c;    // C_f -> B
};

/// Initial pushout over an M-morphism f: A -> B. The boundary is the discrete
/// graph of A-nodes whose image touches an edge outside f(A); the context is
/// B without f(A \ B_f). Boundary ids follow A, context ids follow B.
InitialPushoutResult initial_pushout(const GraphMorphism& f);

// ---------------------------------------------------------------------------
// Overlaps
// ---------------------------------------------------------------------------

struct Overlap {
  GraphMorphism into_a;  // a -> E
  GraphMorphism into_b;  // b -> E
};

struct OverlapOptions {
  /// Skip overlaps whose apex has more nodes than this.
  std::optional<std::size_t> max_nodes;
  /// Node and edge pairs (a-element, b-element) that must be identified.
  std::vector<std::pair<Index, Index>> forced_nodes;
  std::vector<std::pair<Index, Index>> forced_edges;
  PushoutNaming naming = PushoutNaming::canonical("E");
};

/// All jointly surjective pairs of injective morphisms a -> E <- b, one per
/// isomorphism class of cospans. These correspond exactly to injective
/// partial matchings between a and b whose matched edges have matched
/// endpoints, which is what is enumerated here.
std::vector<Overlap> jointly_epic_overlaps(const GraphPtr& a, const GraphPtr& b, const OverlapOptions& options = {});

// ---------------------------------------------------------------------------
// Universal properties
// ---------------------------------------------------------------------------

/// The morphism u: P -> X with u∘i1 = j1 and u∘i2 = j2, where (i1, i2) are
/// jointly surjective into P. Nothing when the data are inconsistent.
std::optional<GraphMorphism> induced_from_pushout(const GraphMorphism& i1, const GraphMorphism& i2,
                                                  const GraphMorphism& j1, const GraphMorphism& j2);

/// The morphism u: X -> P with p1∘u = j1 and p2∘u = j2, where (p1, p2) are
/// jointly injective out of P. Nothing when some element has no partner.
std::optional<GraphMorphism> induced_into_pullback(const GraphMorphism& p1, const GraphMorphism& p2,
                                                   const GraphMorphism& j1, const GraphMorphism& j2);

/// The morphism u with mono∘u = f, where mono is injective. Nothing when the
/// image of f leaves the image of mono.
std::optional<GraphMorphism> factor_through(const GraphMorphism& f, const GraphMorphism& mono);

/// Does B -i1-> P <-i2- C form a pushout of B <-f- A -g-> C?
bool is_pushout(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& i1, const GraphMorphism& i2);

/// Does B <-p1- P -p2-> C form a pullback of B -f-> D <-g- C?
bool is_pullback(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& p1, const GraphMorphism& p2);

/// Induced subgraph-style restriction: the subgraph of g made of the given
/// nodes and edges (edges must have both endpoints kept), with its inclusion.
GraphMorphism subgraph_inclusion(const GraphPtr& g, const std::vector<char>& keep_nodes,
                                 const std::vector<char>& keep_edges);

}  // namespace gcr
