#pragma once

#include <optional>
#include <string>

#include "gcr/composition.hpp"

namespace gcr {

/// rho1 at m1 on G0 followed by rho2 at m2 on G1, together with the
/// injective h: E -> G1 with h∘e1 = n1 and h∘e2 = m2.
struct ERelatedPair {
  TransformationStep step1;
  TransformationStep step2;
  EDependency edep;
  GraphMorphism h;
};

/// The witness h, if the sequence is E-related. E is jointly covered by e1
/// and e2, so h is fixed by n1 and m2; nothing when they disagree or h is
/// not injective. Throws PreconditionError when step2 does not start at
/// step1's result or the dependency belongs to other rules.
std::optional<GraphMorphism> is_e_related(const TransformationStep& step1, const TransformationStep& step2,
                                          const EDependency& edep);

/// is_e_related packaged as a pair.
std::optional<ERelatedPair> make_e_related_pair(const TransformationStep& step1, const TransformationStep& step2,
                                                const EDependency& edep);

/// An isomorphism from a's result to b's result that sends a.n∘ea to b.n,
/// where ea: Rb -> Ra relates the right-hand sides.
std::optional<GraphMorphism> result_isomorphism(const TransformationStep& a, const GraphMorphism& ea,
                                                const TransformationStep& b);

/// The one-step transformation of the GCR at the match m: L -> G0 induced
/// by m1 and the context of the first step. Throws PreconditionError when
/// the GCR was built for another dependency, Error when the theorem fails
/// (no step, or a result not isomorphic to G2).
TransformationStep synthesize(const ERelatedPair& pair, const GcrResult& gcr_result);
TransformationStep synthesize(const ERelatedPair& pair, const CommonKernel& kernel);

struct AnalysisOutcome {
  enum class Kind { Decomposed, Blocked } kind = Kind::Blocked;
  std::optional<ERelatedPair> pair;  // set when Decomposed
  Applicability reason;              // why rho1 is not applicable at m∘e1'

  bool decomposed() const { return kind == Kind::Decomposed; }
  std::string describe() const;
};

/// Splits a GCR step into rho1 at m∘e1' and rho2 at the induced m2. Blocked
/// when rho1 is not applicable there. Throws PreconditionError on a rule
/// mismatch and Error if a decomposition does not reproduce the result.
AnalysisOutcome analyze(const TransformationStep& step, const GcrResult& context);

struct PreservationResult {
  TransformationStep gcr_step;
  GraphMorphism k_double_prime;  // D -> D'
};

/// The GCR step at the match of a concurrent-rule step, with D' the
/// pushout of d and k', and the embedding k'': D -> D'.
PreservationResult preservation_embedding(const TransformationStep& cr_step, const GcrResult& gcr_result);

}  // namespace gcr
