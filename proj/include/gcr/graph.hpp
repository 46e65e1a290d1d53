#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gcr {

using Index = std::uint32_t;

// ---------------------------------------------------------------------------
// Type signature
// ---------------------------------------------------------------------------

struct EdgeType {
  std::string name;
  std::string source;
  std::string target;

  friend bool operator==(const EdgeType&, const EdgeType&) = default;
};

/// Node and edge types a graph may use. Types are interned by their position
/// in the lexicographically sorted name lists.
class TypeSignature {
 public:
  /// Builds a signature, throwing ValidationError on duplicate names or edge
  /// types whose endpoints are not declared node types.
  TypeSignature(std::vector<std::string> node_types, std::vector<EdgeType> edge_types);

  /// Lists every invariant violation of the given declaration.
  static std::vector<std::string> validate(const std::vector<std::string>& node_types,
                                           const std::vector<EdgeType>& edge_types);

  std::size_t node_type_count() const { return node_types_.size(); }
  std::size_t edge_type_count() const { return edge_types_.size(); }
  const std::string& node_type_name(Index t) const { return node_types_[t]; }
  const EdgeType& edge_type(Index t) const { return edge_types_[t]; }
  Index edge_source_type(Index t) const { return edge_src_[t]; }
  Index edge_target_type(Index t) const { return edge_tgt_[t]; }

  std::optional<Index> find_node_type(std::string_view name) const;
  std::optional<Index> find_edge_type(std::string_view name) const;

  const std::vector<std::string>& node_types() const { return node_types_; }
  const std::vector<EdgeType>& edge_types() const { return edge_types_; }

  friend bool operator==(const TypeSignature& a, const TypeSignature& b) {
    return a.node_types_ == b.node_types_ && a.edge_types_ == b.edge_types_;
  }

 private:
  std::vector<std::string> node_types_;
  std::vector<EdgeType> edge_types_;
  std::vector<Index> edge_src_;
  std::vector<Index> edge_tgt_;
};

using SignaturePtr = std::shared_ptr<const TypeSignature>;

SignaturePtr make_signature(std::vector<std::string> node_types, std::vector<EdgeType> edge_types);

// ---------------------------------------------------------------------------
// Raw graph description and validation
// ---------------------------------------------------------------------------

struct NodeSpec {
  std::string id;
  std::string type;
};

struct EdgeSpec {
  std::string id;
  std::string type;
  std::string source;
  std::string target;
};

/// Unvalidated graph description, as read from a file or assembled by hand.
struct GraphData {
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;

  GraphData& node(std::string id, std::string type);
  GraphData& edge(std::string id, std::string type, std::string source, std::string target);
};

struct Violation {
  enum class Kind {
    DuplicateNodeId,
    DuplicateEdgeId,
    UnknownNodeType,
    UnknownEdgeType,
    DanglingEndpoint,
    EndpointTypeMismatch,
  };
  Kind kind;
  std::string element;  // offending node or edge id
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

/// Reports every invariant violation of `data` against `sig`; an empty result
/// means the description is a well-formed typed graph.
std::vector<Violation> validate_graph(const TypeSignature& sig, const GraphData& data);

// ---------------------------------------------------------------------------
// Typed graph
// ---------------------------------------------------------------------------

/// Immutable finite graph typed over a signature. Nodes and edges are stored
/// sorted by (type name, id), which fixes every index-based enumeration order.
class TypedGraph {
 public:
  struct Edge {
    std::string id;
    Index type;
    Index source;
    Index target;
  };

  /// Throws ValidationError carrying the full report when `data` is malformed.
  TypedGraph(SignaturePtr sig, const GraphData& data);

  const SignaturePtr& signature() const { return sig_; }

  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t size() const { return node_count() + edge_count(); }
  bool empty() const { return size() == 0; }

  const std::string& node_id(Index n) const { return node_ids_[n]; }
  Index node_type(Index n) const { return node_types_[n]; }
  const std::string& node_type_name(Index n) const { return sig_->node_type_name(node_types_[n]); }

  const Edge& edge(Index e) const { return edges_[e]; }
  const std::string& edge_id(Index e) const { return edges_[e].id; }
  Index edge_type(Index e) const { return edges_[e].type; }
  const std::string& edge_type_name(Index e) const { return sig_->edge_type(edges_[e].type).name; }
  Index source(Index e) const { return edges_[e].source; }
  Index target(Index e) const { return edges_[e].target; }

  std::span<const Index> out_edges(Index n) const { return out_[n]; }
  std::span<const Index> in_edges(Index n) const { return in_[n]; }

  std::optional<Index> find_node(std::string_view id) const;
  std::optional<Index> find_edge(std::string_view id) const;

  GraphData data() const;

  friend bool operator==(const TypedGraph& a, const TypedGraph& b);

 private:
  SignaturePtr sig_;
  std::vector<std::string> node_ids_;
  std::vector<Index> node_types_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Index>> out_;
  std::vector<std::vector<Index>> in_;
  std::unordered_map<std::string, Index> node_index_;
  std::unordered_map<std::string, Index> edge_index_;
};

using GraphPtr = std::shared_ptr<const TypedGraph>;

GraphPtr make_graph(SignaturePtr sig, const GraphData& data);
GraphPtr empty_graph(SignaturePtr sig);

/// Structural equality that short-circuits on pointer identity.
bool same_graph(const GraphPtr& a, const GraphPtr& b);

/// The type graph: one node per node type and one edge per edge type. It is
/// the terminal object of the category of graphs typed over `sig`.
GraphPtr type_graph(const SignaturePtr& sig);

/// Disjoint union with ids prefixed by "<left_tag>" and "<right_tag>".
GraphPtr disjoint_union(const TypedGraph& a, const TypedGraph& b, std::string_view left_tag = "a:",
                        std::string_view right_tag = "b:");

}  // namespace gcr
