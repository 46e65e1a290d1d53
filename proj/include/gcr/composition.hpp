#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcr/rules.hpp"

namespace gcr {

// ---------------------------------------------------------------------------
// E-dependencies
// ---------------------------------------------------------------------------

/// Jointly surjective pair R1 -e1-> E <-e2- L2 of injective morphisms for
/// which both pushout complements exist:
///   (1a) K1 -e1pp-> C1 -r1p-> E  completes  K1 -r1-> R1 -e1-> E
///   (1b) K2 -e2pp-> C2 -l2p-> E  completes  K2 -l2-> L2 -e2-> E
/// C1 and C2 keep the ids of E.
struct EDependency {
  GraphMorphism e1;
  GraphMorphism e2;
  GraphMorphism e1pp;
  GraphMorphism r1p;
  GraphMorphism e2pp;
  GraphMorphism l2p;

  const GraphPtr& E() const { return e1.codomain(); }
  const GraphPtr& C1() const { return r1p.domain(); }
  const GraphPtr& C2() const { return l2p.domain(); }
};

/// Checks the overlap and builds both complements. Nothing (with a reason in
/// `why`) when the pair is not injective, not jointly surjective or one of
/// the complements dangles.
std::optional<EDependency> make_e_dependency(const Rule& rho1, const Rule& rho2, const GraphMorphism& e1,
                                             const GraphMorphism& e2, std::string* why = nullptr);

/// Every overlap of R1 and L2 (one per cospan isomorphism class) that is an
/// E-dependency, in the order of jointly_epic_overlaps.
std::vector<EDependency> enumerate_e_dependencies(const Rule& rho1, const Rule& rho2,
                                                  std::optional<std::size_t> max_nodes = std::nullopt);

/// The E-dependency of a two-step sequence: E is the union of the images of
/// the first comatch and the second match inside the intermediate graph.
EDependency e_dependency_of(const TransformationStep& step1, const TransformationStep& step2);

// ---------------------------------------------------------------------------
// Common kernels
// ---------------------------------------------------------------------------

/// k: Kcap -> V embedded into l1 (via u1, v1) and r2 (via u2, v2). A relaxed
/// kernel allows non-injective v1, v2; it exists to exercise the embedding
/// characterization and is refused where a proper kernel is required.
struct CommonKernel {
  GraphMorphism k;   // Kcap -> V
  GraphMorphism u1;  // Kcap -> K1
  GraphMorphism u2;  // Kcap -> K2
  GraphMorphism v1;  // V -> L1
  GraphMorphism v2;  // V -> R2
  bool relaxed = false;

  const GraphPtr& Kcap() const { return k.domain(); }
  const GraphPtr& V() const { return k.codomain(); }
};

/// Injectivity requirements plus the two pullback squares
/// (v1∘k = l1∘u1 and v2∘k = r2∘u2).
bool is_common_kernel(const Rule& rho1, const Rule& rho2, const CommonKernel& kernel, std::string* why = nullptr);

/// Is Kcap, with u1 and u2, the pullback of (e1∘r1, e2∘l2)? Throws
/// PreconditionError when kernel and dependency belong to other rules.
bool is_compatible(const Rule& rho1, const Rule& rho2, const CommonKernel& kernel, const EDependency& edep);

/// k = id on the pullback of (e1∘r1, e2∘l2), v1 = l1∘u1, v2 = r2∘u2.
CommonKernel trivial_kernel(const Rule& rho1, const Rule& rho2, const EDependency& edep);

// ---------------------------------------------------------------------------
// Concurrent rules and GCRs
// ---------------------------------------------------------------------------

struct ConcurrentRuleResult {
  Rule rule;  // L <-l- K -r-> R with the computed condition
  Rule rho1;
  Rule rho2;
  EDependency edep;
  GraphMorphism e1p;  // L1 -> L   (2a)
  GraphMorphism l1p;  // C1 -> L
  GraphMorphism e2p;  // R2 -> R   (2b)
  GraphMorphism r2p;  // C2 -> R
  GraphMorphism k1;   // K -> C1   (3)
  GraphMorphism k2;   // K -> C2

  /// L <-l1p- C1 -r1p-> E, used to move the second condition to L.
  Rule intermediate() const;
};

/// Builds (2a), (2b) and (3). The interface takes the ids of E; the rest of
/// L and R keeps the ids of L1 and R2. ac = Sh(e1p, ac1) ∧ Le(p', Sh(e2, ac2))
/// with trivially true conjuncts dropped.
ConcurrentRuleResult concurrent_rule(const Rule& rho1, const Rule& rho2, const EDependency& edep,
                                     std::string name = {});

/// The unique injective p: Kcap -> K with k1∘p = e1pp∘u1 and k2∘p = e2pp∘u2.
/// Throws PreconditionError for an incompatible kernel.
GraphMorphism extension_morphism(const ConcurrentRuleResult& base, const CommonKernel& kernel);

struct GcrResult {
  Rule rule;  // L <-l'- K' -r'-> R, condition of the concurrent rule
  ConcurrentRuleResult base;
  CommonKernel kernel;
  GraphMorphism p;        // Kcap -> K
  GraphMorphism p_prime;  // V -> K'
  GraphMorphism k_prime;  // K -> K', the enhancement morphism
};

/// K' is the pushout of k along p; l' and r' are induced. Throws NotARule
/// naming the non-injective leg, PreconditionError when the kernel is not
/// compatible.
GcrResult gcr(const ConcurrentRuleResult& base, const CommonKernel& kernel, std::string name = {});

/// Short-cut rule of two plain monotonic rules (l an isomorphism) along a
/// kernel whose u_i land in K_i and v_i in R_i. The five pushout steps:
/// Lcup = PO(u1, u2), L = PO(r1, e1), R = PO(r2, e2), K = PO(k, e1∘u1),
/// l and r induced.
Rule shortcut_rule(const Rule& r1, const Rule& r2, const CommonKernel& kernel, std::string name = {});

/// The E-dependency (L1 -> Lcup <- L2) under which the short-cut rule is the
/// GCR of invert(r1) and r2.
EDependency shortcut_dependency(const Rule& r1, const Rule& r2, const CommonKernel& kernel);

// ---------------------------------------------------------------------------
// Enhancements
// ---------------------------------------------------------------------------

/// A candidate interface K' between K and both sides of a concurrent rule.
struct Enhancement {
  GraphMorphism k_prime;  // K -> K'
  GraphMorphism l_prime;  // K' -> L
  GraphMorphism r_prime;  // K' -> R
};

/// Initial-pushout test for l' and r': the boundary and context of k' must
/// factor through those of l1 and r2 as pullbacks. The factorizations are
/// taken to commute with the legs into L and R as well, which pins them
/// down uniquely. Throws PreconditionError unless l'∘k' = l, r'∘k' = r and
/// all three are injective.
bool is_appropriately_enhancing(const ConcurrentRuleResult& base, const Enhancement& enh, std::string* why = nullptr);

/// Rebuilds a compatible kernel from an appropriately enhancing k' and
/// returns its GCR, whose span is isomorphic to (l', K', r').
GcrResult gcr_from_enhancement(const ConcurrentRuleResult& base, const Enhancement& enh, std::string name = {});

/// Enhancements of K by injective partial matchings between the elements of
/// L outside l(K) and the elements of R outside r(K) (edges only when both
/// endpoints agree). With `deleted_and_created_only` the candidates are
/// restricted to e1p(L1 \ K1) and e2p(R2 \ K2).
std::vector<Enhancement> enumerate_enhancements(const ConcurrentRuleResult& base, bool deleted_and_created_only);

/// Every GCR enhancing the concurrent rule, one per enhancement of K inside
/// the fixed L and R. The first is the concurrent rule itself.
std::vector<GcrResult> enumerate_gcrs(const ConcurrentRuleResult& base);

/// Kernels of the GCRs returned by enumerate_gcrs.
std::vector<CommonKernel> enumerate_kernels(const ConcurrentRuleResult& base);

/// Sum over i of i! * C(n1, i) * C(n2, i).
std::uint64_t count_gcrs_discrete(std::uint64_t n1, std::uint64_t n2);

}  // namespace gcr
