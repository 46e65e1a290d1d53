#pragma once

#include <map>
#include <optional>
#include <string>

#include "gcr/composition.hpp"
#include "gcr/theorems.hpp"
#include "json.hpp"

namespace gcr::io {

inline constexpr int kFormatVersion = 1;

struct MorphismEntry {
  std::string from;  // graph reference, e.g. "G" or "removeMiddleMan.L"
  std::string to;
  GraphMorphism f;
};

/// With `rho1_inverted` the kernel belongs to (invert(rho1), rho2), so v1
/// lands in R1; that is the form short-cut rules take.
struct KernelEntry {
  std::string rho1;
  std::string rho2;
  CommonKernel kernel;
  bool rho1_inverted = false;
};

struct DependencyEntry {
  std::string rho1;
  std::string rho2;
  EDependency edep;
};

/// Everything one document holds. Graph references in morphisms are either
/// a name from `graphs` or "<rule>.L|K|R", "<kernel>.Kcap|V", "<dep>.E".
struct Workspace {
  std::string kind = "workspace";
  SignaturePtr signature;
  std::map<std::string, GraphPtr> graphs;
  std::map<std::string, Rule> rules;
  std::map<std::string, DependencyEntry> e_dependencies;
  std::map<std::string, KernelEntry> kernels;
  std::map<std::string, MorphismEntry> morphisms;
  nlohmann::json report;  // free-form summary written by the tool, kept verbatim

  GraphPtr graph(const std::string& ref) const;
  const Rule& rule(const std::string& name) const;
};

/// Parses a document. ParseError carries line and column for syntax errors;
/// unresolved references and malformed values raise ValidationError naming
/// the offending id. `signature` is used when the document has none.
Workspace parse(const std::string& text, const SignaturePtr& signature = nullptr);
Workspace load(const std::string& path, const SignaturePtr& signature = nullptr);

/// A "signature" document or any document carrying a signature.
SignaturePtr load_signature(const std::string& path);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Workspace& ws);
void store(const Workspace& ws, const std::string& path);

nlohmann::json graph_json(const TypedGraph& g);
nlohmann::json mapping_json(const GraphMorphism& f);
nlohmann::json condition_json(const ConditionPtr& c);
nlohmann::json rule_json(const Rule& r);

/// Registers a step's graphs (G, D, H), morphisms (m, d, g, h, n) and rule.
void add_step(Workspace& ws, const TransformationStep& step, const std::string& prefix = "");

/// Graphviz text. A rule is drawn in one picture: preserved elements plain,
/// deleted ones red and marked "--", created ones green and marked "++".
std::string to_dot(const Rule& rule);
std::string to_dot(const TypedGraph& g, const std::string& name);

}  // namespace gcr::io
