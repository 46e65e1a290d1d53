#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gcr/rules.hpp"

// Seeded generator of small graphs, conditions, rules and two-step
// transformation sequences over a signature with node types A, B and edge
// types f: A -> A, g: A -> B. Outputs depend only on the seed.
namespace gcr::corpus {

using Rng = std::mt19937_64;

SignaturePtr signature();

GraphPtr random_graph(Rng& rng, std::size_t max_nodes, std::size_t max_edges, const std::string& prefix = "n");

/// Inclusion of `base` into base plus up to the given number of new nodes
/// and edges. New ids are "<prefix><i>" and "<prefix>e<i>".
GraphMorphism random_extension(Rng& rng, const GraphPtr& base, std::size_t max_new_nodes, std::size_t max_new_edges,
                               const std::string& prefix);

/// Condition over `root` with at most `depth` nested Exists and at most
/// `max_nodes` nodes in any graph it mentions.
ConditionPtr random_condition(Rng& rng, const GraphPtr& root, std::size_t depth, std::size_t max_nodes);

struct RuleOptions {
  std::size_t max_side_nodes = 4;
  std::size_t max_kernel_nodes = 3;
  bool monotonic = false;
  /// Probability in percent of attaching a negative or positive condition.
  unsigned condition_percent = 25;
};

Rule random_rule(Rng& rng, const std::string& name, const RuleOptions& options = {});

/// rho1 at m1 on G0 followed by rho2 at m2 on the result.
struct Sequence {
  TransformationStep step1;
  TransformationStep step2;
};

/// Generates `count` two-step sequences with hosts of at most
/// `max_host_nodes` nodes, drawing fresh rule pairs as needed.
std::vector<Sequence> sequences(std::uint64_t seed, std::size_t count, std::size_t max_host_nodes = 6,
                                const RuleOptions& options = {});

}  // namespace gcr::corpus
