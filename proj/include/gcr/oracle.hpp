#pragma once

#include <string>
#include <vector>

#include "gcr/limits.hpp"

// Brute-force checks of universal properties. Everything here is written
// against definitions, independently of the constructions in limits.cpp,
// and is only meant for small graphs.
namespace gcr::oracle {

/// Every morphism src -> dst by plain enumeration of node assignments
/// followed by edge assignments. No pruning beyond types.
std::vector<GraphMorphism> brute_force_morphisms(const GraphPtr& src, const GraphPtr& dst, bool injective_only);

/// Number of u: P -> X with u∘i1 = j1 and u∘i2 = j2 (stops at `limit`).
std::size_t count_pushout_mediators(const GraphMorphism& i1, const GraphMorphism& i2, const GraphMorphism& j1,
                                    const GraphMorphism& j2, std::size_t limit = 2);

/// Number of u: X -> P with p1∘u = j1 and p2∘u = j2 (stops at `limit`).
std::size_t count_pullback_mediators(const GraphMorphism& p1, const GraphMorphism& p2, const GraphMorphism& j1,
                                     const GraphMorphism& j2, std::size_t limit = 2);

/// Checks that B -i1-> P <-i2- C is a pushout of B <-f- A -g-> C: the square
/// commutes, P is the quotient of B + C by the relation generated from A
/// (computed by fixed-point iteration), and exactly one mediator exists into
/// each competitor (P itself, the type graph, P + type graph, the quotient).
/// On failure `why` receives a short explanation.
bool check_pushout(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& i1, const GraphMorphism& i2,
                   std::string* why = nullptr);

/// Checks that B <-p1- P -p2-> C is a pullback of B -f-> D <-g- C by counting
/// mediators from the empty graph, from every single-node and single-edge
/// competitor and from P itself.
bool check_pullback(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& p1, const GraphMorphism& p2,
                    std::string* why = nullptr);

/// Checks that `ipo` is an initial pushout over f: the square is a pushout
/// with M verticals, and it factors uniquely through every pushout over f
/// with M verticals (enumerated as subgraphs of the codomain).
bool check_initial_pushout(const GraphMorphism& f, const InitialPushoutResult& ipo, std::string* why = nullptr);

/// All pushout complements of K -l-> L -m-> G, found by trying every
/// subgraph D of G that contains m(l(K)).
std::vector<PushoutComplement> brute_force_complements(const GraphMorphism& l, const GraphMorphism& m);

}  // namespace gcr::oracle
