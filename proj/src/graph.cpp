#include "gcr/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gcr/error.hpp"

namespace gcr {

TypeSignature::TypeSignature(std::vector<std::string> node_types, std::vector<EdgeType> edge_types) {
  if (auto report = validate(node_types, edge_types); !report.empty()) {
    std::ostringstream os;
    os << "invalid type signature:";
    for (const auto& r : report) os << "\n  " << r;
    throw ValidationError(os.str());
  }
  std::sort(node_types.begin(), node_types.end());
  std::sort(edge_types.begin(), edge_types.end(),
            [](const EdgeType& a, const EdgeType& b) { return a.name < b.name; });
  node_types_ = std::move(node_types);
  edge_types_ = std::move(edge_types);
  for (const auto& et : edge_types_) {
    edge_src_.push_back(*find_node_type(et.source));
    edge_tgt_.push_back(*find_node_type(et.target));
  }
}

std::vector<std::string> TypeSignature::validate(const std::vector<std::string>& node_types,
                                                 const std::vector<EdgeType>& edge_types) {
  std::vector<std::string> report;
  std::set<std::string> nodes;
  for (const auto& n : node_types) {
    if (!nodes.insert(n).second) report.push_back("duplicate node type '" + n + "'");
  }
  std::set<std::string> edges;
  for (const auto& e : edge_types) {
    if (!edges.insert(e.name).second) report.push_back("duplicate edge type '" + e.name + "'");
    if (!nodes.count(e.source)) report.push_back("edge type '" + e.name + "' has undeclared source '" + e.source + "'");
    if (!nodes.count(e.target)) report.push_back("edge type '" + e.name + "' has undeclared target '" + e.target + "'");
  }
  return report;
}

std::optional<Index> TypeSignature::find_node_type(std::string_view name) const {
  auto it = std::lower_bound(node_types_.begin(), node_types_.end(), name);
  if (it == node_types_.end() || *it != name) return std::nullopt;
  return static_cast<Index>(it - node_types_.begin());
}

std::optional<Index> TypeSignature::find_edge_type(std::string_view name) const {
  auto it = std::lower_bound(edge_types_.begin(), edge_types_.end(), name,
                             [](const EdgeType& e, std::string_view n) { return e.name < n; });
  if (it == edge_types_.end() || it->name != name) return std::nullopt;
  return static_cast<Index>(it - edge_types_.begin());
}

SignaturePtr make_signature(std::vector<std::string> node_types, std::vector<EdgeType> edge_types) {
  return std::make_shared<const TypeSignature>(std::move(node_types), std::move(edge_types));
}

GraphData& GraphData::node(std::string id, std::string type) {
  nodes.push_back({std::move(id), std::move(type)});
  return *this;
}

GraphData& GraphData::edge(std::string id, std::string type, std::string source, std::string target) {
  edges.push_back({std::move(id), std::move(type), std::move(source), std::move(target)});
  return *this;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::DuplicateNodeId: return "duplicate node id";
    case Violation::Kind::DuplicateEdgeId: return "duplicate edge id";
    case Violation::Kind::UnknownNodeType: return "unknown node type";
    case Violation::Kind::UnknownEdgeType: return "unknown edge type";
    case Violation::Kind::DanglingEndpoint: return "dangling endpoint";
    case Violation::Kind::EndpointTypeMismatch: return "endpoint type mismatch";
  }
  return "?";
}

std::vector<Violation> validate_graph(const TypeSignature& sig, const GraphData& data) {
  std::vector<Violation> report;
  std::unordered_map<std::string, std::string> node_type;
  for (const auto& n : data.nodes) {
    if (!sig.find_node_type(n.type)) {
      report.push_back({Violation::Kind::UnknownNodeType, n.id, "node '" + n.id + "' has unknown type '" + n.type + "'"});
    }
    if (!node_type.emplace(n.id, n.type).second) {
      report.push_back({Violation::Kind::DuplicateNodeId, n.id, "node id '" + n.id + "' is not unique"});
    }
  }
  std::set<std::string> edge_ids;
  for (const auto& e : data.edges) {
    if (!edge_ids.insert(e.id).second) {
      report.push_back({Violation::Kind::DuplicateEdgeId, e.id, "edge id '" + e.id + "' is not unique"});
    }
    auto et = sig.find_edge_type(e.type);
    if (!et) {
      report.push_back({Violation::Kind::UnknownEdgeType, e.id, "edge '" + e.id + "' has unknown type '" + e.type + "'"});
    }
    for (auto [end, role] : {std::pair{&e.source, "source"}, std::pair{&e.target, "target"}}) {
      auto it = node_type.find(*end);
      if (it == node_type.end()) {
        report.push_back({Violation::Kind::DanglingEndpoint, e.id,
                          "edge '" + e.id + "' has " + role + " '" + *end + "' which is not a node"});
      } else if (et) {
        const auto& decl = sig.edge_type(*et);
        const std::string& want = std::string_view(role) == "source" ? decl.source : decl.target;
        if (it->second != want) {
          report.push_back({Violation::Kind::EndpointTypeMismatch, e.id,
                            "edge '" + e.id + "' " + role + " '" + *end + "' has type '" + it->second +
                                "', expected '" + want + "'"});
        }
      }
    }
  }
  return report;
}

TypedGraph::TypedGraph(SignaturePtr sig, const GraphData& data) : sig_(std::move(sig)) {
  if (auto report = validate_graph(*sig_, data); !report.empty()) {
    std::ostringstream os;
    os << "invalid graph:";
    for (const auto& v : report) os << "\n  " << v.message;
    throw ValidationError(os.str());
  }
  std::vector<std::size_t> order(data.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& na = data.nodes[a];
    const auto& nb = data.nodes[b];
    return std::tie(na.type, na.id) < std::tie(nb.type, nb.id);
  });
  for (auto i : order) {
    node_index_.emplace(data.nodes[i].id, static_cast<Index>(node_ids_.size()));
    node_ids_.push_back(data.nodes[i].id);
    node_types_.push_back(*sig_->find_node_type(data.nodes[i].type));
  }
  order.resize(data.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = data.edges[a];
    const auto& eb = data.edges[b];
    return std::tie(ea.type, ea.id) < std::tie(eb.type, eb.id);
  });
  out_.resize(node_ids_.size());
  in_.resize(node_ids_.size());
  for (auto i : order) {
    const auto& e = data.edges[i];
    Index idx = static_cast<Index>(edges_.size());
    Index s = node_index_.at(e.source);
    Index t = node_index_.at(e.target);
    edges_.push_back({e.id, *sig_->find_edge_type(e.type), s, t});
    edge_index_.emplace(e.id, idx);
    out_[s].push_back(idx);
    in_[t].push_back(idx);
  }
}

std::optional<Index> TypedGraph::find_node(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> TypedGraph::find_edge(std::string_view id) const {
  auto it = edge_index_.find(std::string(id));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

GraphData TypedGraph::data() const {
  GraphData d;
  for (Index n = 0; n < node_count(); ++n) d.node(node_ids_[n], node_type_name(n));
  for (const auto& e : edges_) {
    d.edge(e.id, sig_->edge_type(e.type).name, node_ids_[e.source], node_ids_[e.target]);
  }
  return d;
}

bool operator==(const TypedGraph& a, const TypedGraph& b) {
  if (&a == &b) return true;
  if (a.sig_ != b.sig_ && !(*a.sig_ == *b.sig_)) return false;
  if (a.node_ids_ != b.node_ids_ || a.node_types_ != b.node_types_) return false;
  if (a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.id != y.id || x.type != y.type || x.source != y.source || x.target != y.target) return false;
  }
  return true;
}

GraphPtr make_graph(SignaturePtr sig, const GraphData& data) {
  return std::make_shared<const TypedGraph>(std::move(sig), data);
}

GraphPtr empty_graph(SignaturePtr sig) { return make_graph(std::move(sig), GraphData{}); }

bool same_graph(const GraphPtr& a, const GraphPtr& b) { return a == b || *a == *b; }

GraphPtr type_graph(const SignaturePtr& sig) {
  GraphData d;
  for (const auto& t : sig->node_types()) d.node(t, t);
  for (const auto& et : sig->edge_types()) d.edge(et.name, et.name, et.source, et.target);
  return make_graph(sig, d);
}

GraphPtr disjoint_union(const TypedGraph& a, const TypedGraph& b, std::string_view left_tag,
                        std::string_view right_tag) {
  GraphData d;
  auto add = [&d](const TypedGraph& g, std::string_view tag) {
    std::string t(tag);
    for (Index n = 0; n < g.node_count(); ++n) d.node(t + g.node_id(n), g.node_type_name(n));
    for (Index e = 0; e < g.edge_count(); ++e) {
      d.edge(t + g.edge_id(e), g.edge_type_name(e), t + g.node_id(g.source(e)), t + g.node_id(g.target(e)));
    }
  };
  add(a, left_tag);
  add(b, right_tag);
  return make_graph(a.signature(), d);
}

}  // namespace gcr
