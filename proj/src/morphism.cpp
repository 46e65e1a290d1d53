#include "gcr/morphism.hpp"

#include <sstream>

#include "gcr/error.hpp"

namespace gcr {

namespace {

bool injective_map(const std::vector<Index>& m, std::size_t codomain_size) {
  std::vector<char> seen(codomain_size, 0);
  for (Index x : m) {
    if (seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

GraphMorphism::GraphMorphism(GraphPtr domain, GraphPtr codomain, std::vector<Index> node_map,
                             std::vector<Index> edge_map)
    : dom_(std::move(domain)), cod_(std::move(codomain)), nodes_(std::move(node_map)), edges_(std::move(edge_map)) {
  const TypedGraph& d = *dom_;
  const TypedGraph& c = *cod_;
  if (d.signature() != c.signature() && !(*d.signature() == *c.signature())) {
    throw ValidationError("morphism between graphs over different signatures");
  }
  if (nodes_.size() != d.node_count() || edges_.size() != d.edge_count()) {
    throw ValidationError("morphism is not total");
  }
  for (Index n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n] >= c.node_count()) throw ValidationError("morphism maps node '" + d.node_id(n) + "' outside codomain");
    if (d.node_type(n) != c.node_type(nodes_[n])) {
      throw ValidationError("morphism does not preserve the type of node '" + d.node_id(n) + "'");
    }
  }
  for (Index e = 0; e < edges_.size(); ++e) {
    Index img = edges_[e];
    if (img >= c.edge_count()) throw ValidationError("morphism maps edge '" + d.edge_id(e) + "' outside codomain");
    if (d.edge_type(e) != c.edge_type(img)) {
      throw ValidationError("morphism does not preserve the type of edge '" + d.edge_id(e) + "'");
    }
    if (nodes_[d.source(e)] != c.source(img) || nodes_[d.target(e)] != c.target(img)) {
      throw ValidationError("morphism does not preserve the endpoints of edge '" + d.edge_id(e) + "'");
    }
  }
  injective_ = injective_map(nodes_, c.node_count()) && injective_map(edges_, c.edge_count());
}

GraphMorphism GraphMorphism::identity(const GraphPtr& g) {
  std::vector<Index> n(g->node_count()), e(g->edge_count());
  for (Index i = 0; i < n.size(); ++i) n[i] = i;
  for (Index i = 0; i < e.size(); ++i) e[i] = i;
  return GraphMorphism(g, g, std::move(n), std::move(e));
}

GraphMorphism GraphMorphism::from_empty(const GraphPtr& domain, const GraphPtr& codomain) {
  if (!domain->empty()) throw PreconditionError("from_empty: domain is not empty");
  return GraphMorphism(domain, codomain, {}, {});
}

GraphMorphism GraphMorphism::from_ids(GraphPtr domain, GraphPtr codomain,
                                      const std::map<std::string, std::string>& nodes,
                                      const std::map<std::string, std::string>& edges, bool by_id_default) {
  const TypedGraph& d = *domain;
  const TypedGraph& c = *codomain;
  std::vector<Index> nm(d.node_count()), em(d.edge_count());
  for (Index n = 0; n < d.node_count(); ++n) {
    auto it = nodes.find(d.node_id(n));
    const std::string& target = it != nodes.end() ? it->second : d.node_id(n);
    if (it == nodes.end() && !by_id_default) throw ValidationError("morphism leaves node '" + d.node_id(n) + "' unmapped");
    auto idx = c.find_node(target);
    if (!idx) throw ValidationError("morphism maps node '" + d.node_id(n) + "' to unknown node '" + target + "'");
    nm[n] = *idx;
  }
  for (Index e = 0; e < d.edge_count(); ++e) {
    auto it = edges.find(d.edge_id(e));
    const std::string& target = it != edges.end() ? it->second : d.edge_id(e);
    if (it == edges.end() && !by_id_default) throw ValidationError("morphism leaves edge '" + d.edge_id(e) + "' unmapped");
    auto idx = c.find_edge(target);
    if (!idx) throw ValidationError("morphism maps edge '" + d.edge_id(e) + "' to unknown edge '" + target + "'");
    em[e] = *idx;
  }
  for (const auto& [k, v] : nodes) {
    if (!d.find_node(k)) throw ValidationError("morphism mentions unknown domain node '" + k + "'");
  }
  for (const auto& [k, v] : edges) {
    if (!d.find_edge(k)) throw ValidationError("morphism mentions unknown domain edge '" + k + "'");
  }
  return GraphMorphism(std::move(domain), std::move(codomain), std::move(nm), std::move(em));
}

GraphMorphism GraphMorphism::inclusion(GraphPtr domain, GraphPtr codomain) {
  return from_ids(std::move(domain), std::move(codomain), {}, {}, true);
}

bool GraphMorphism::is_surjective() const {
  std::vector<char> hit(cod_->node_count(), 0);
  for (Index x : nodes_) hit[x] = 1;
  for (char h : hit) {
    if (!h) return false;
  }
  std::vector<char> ehit(cod_->edge_count(), 0);
  for (Index x : edges_) ehit[x] = 1;
  for (char h : ehit) {
    if (!h) return false;
  }
  return true;
}

std::map<std::string, std::string> GraphMorphism::node_ids() const {
  std::map<std::string, std::string> out;
  for (Index n = 0; n < nodes_.size(); ++n) out.emplace(dom_->node_id(n), cod_->node_id(nodes_[n]));
  return out;
}

std::map<std::string, std::string> GraphMorphism::edge_ids() const {
  std::map<std::string, std::string> out;
  for (Index e = 0; e < edges_.size(); ++e) out.emplace(dom_->edge_id(e), cod_->edge_id(edges_[e]));
  return out;
}

bool operator==(const GraphMorphism& a, const GraphMorphism& b) {
  return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && same_graph(a.dom_, b.dom_) && same_graph(a.cod_, b.cod_);
}

GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g) {
  if (!same_graph(f.codomain(), g.domain())) {
    throw PreconditionError("compose: codomain of the first morphism differs from domain of the second");
  }
  std::vector<Index> n(f.node_map().size()), e(f.edge_map().size());
  for (Index i = 0; i < n.size(); ++i) n[i] = g.node(f.node(i));
  for (Index i = 0; i < e.size(); ++i) e[i] = g.edge(f.edge(i));
  return GraphMorphism(f.domain(), g.codomain(), std::move(n), std::move(e));
}

GraphMorphism inverse(const GraphMorphism& iso) {
  if (!iso.is_isomorphism()) throw PreconditionError("inverse: morphism is not an isomorphism");
  std::vector<Index> n(iso.node_map().size()), e(iso.edge_map().size());
  for (Index i = 0; i < n.size(); ++i) n[iso.node(i)] = i;
  for (Index i = 0; i < e.size(); ++i) e[iso.edge(i)] = i;
  return GraphMorphism(iso.codomain(), iso.domain(), std::move(n), std::move(e));
}

bool commutes(const GraphMorphism& f1, const GraphMorphism& g1, const GraphMorphism& f2,
              const GraphMorphism& g2) {
  if (!same_graph(f1.domain(), f2.domain()) || !same_graph(g1.codomain(), g2.codomain())) return false;
  return compose(f1, g1) == compose(f2, g2);
}

}  // namespace gcr
