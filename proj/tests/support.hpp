#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gcr/graph.hpp"
#include "gcr/morphism.hpp"

namespace testing {

using namespace gcr;

inline SignaturePtr class_signature() {
  static SignaturePtr sig = make_signature({"Class"}, {{"ref", "Class", "Class"}, {"gen", "Class", "Class"}});
  return sig;
}

inline SignaturePtr ab_signature() {
  static SignaturePtr sig = make_signature({"A", "B"}, {{"f", "A", "A"}, {"g", "A", "B"}});
  return sig;
}

using E = std::tuple<std::string, std::string, std::string, std::string>;  // id, type, source, target

inline GraphPtr graph(const SignaturePtr& sig, std::initializer_list<std::pair<std::string, std::string>> nodes,
                      std::initializer_list<E> edges = {}) {
  GraphData d;
  for (const auto& [id, type] : nodes) d.node(id, type);
  for (const auto& [id, type, s, t] : edges) d.edge(id, type, s, t);
  return make_graph(sig, d);
}

/// Class graph with nodes named by the list and ref edges "s>t".
inline GraphPtr classes(std::initializer_list<std::string> nodes, std::initializer_list<E> edges = {}) {
  GraphData d;
  for (const auto& n : nodes) d.node(n, "Class");
  for (const auto& [id, type, s, t] : edges) d.edge(id, type, s, t);
  return make_graph(class_signature(), d);
}

inline GraphMorphism incl(const GraphPtr& a, const GraphPtr& b) { return GraphMorphism::inclusion(a, b); }

inline GraphMorphism map(const GraphPtr& a, const GraphPtr& b, const std::map<std::string, std::string>& nodes,
                         const std::map<std::string, std::string>& edges = {}) {
  return GraphMorphism::from_ids(a, b, nodes, edges, true);
}

}  // namespace testing
