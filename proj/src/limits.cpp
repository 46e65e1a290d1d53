#include "gcr/limits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gcr/error.hpp"
#include "gcr/search.hpp"

namespace gcr {

namespace {

constexpr Index kNone = static_cast<Index>(-1);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<Index> parent_;
};

class Namer {
 public:
  std::string take(const std::string& id) {
    if (used_.insert(id).second) return id;
    for (int i = 2;; ++i) {
      std::string cand = id + "." + std::to_string(i);
      if (used_.insert(cand).second) return cand;
    }
  }
  void reserve(const std::string& id) { used_.insert(id); }

 private:
  std::set<std::string> used_;
};

struct Classes {
  std::vector<std::vector<Preimage>> members;  // per class, sorted B-first
  std::vector<Index> left;                     // B element -> class
  std::vector<Index> right;                    // C element -> class
};

Classes quotient(std::size_t nb, std::size_t nc, std::size_t na, const std::vector<Index>& f,
                 const std::vector<Index>& g) {
  UnionFind uf(nb + nc);
  for (Index a = 0; a < na; ++a) uf.unite(f[a], static_cast<Index>(nb + g[a]));
  Classes out;
  out.left.assign(nb, kNone);
  out.right.assign(nc, kNone);
  std::vector<Index> class_of_root(nb + nc, kNone);
  for (Index x = 0; x < nb + nc; ++x) {
    Index r = uf.find(x);
    if (class_of_root[r] == kNone) {
      class_of_root[r] = static_cast<Index>(out.members.size());
      out.members.emplace_back();
    }
    Index cls = class_of_root[r];
    if (x < nb) {
      out.members[cls].push_back({0, x});
      out.left[x] = cls;
    } else {
      out.members[cls].push_back({1, static_cast<Index>(x - nb)});
      out.right[x - nb] = cls;
    }
  }
  return out;
}

}  // namespace

std::vector<GraphMorphism> enumerate_morphisms(const GraphPtr& src, const GraphPtr& dst, bool injective_only) {
  SearchConstraints c;
  c.injective = injective_only;
  return find_morphisms(src, dst, c);
}

CospanPO pushout(const GraphMorphism& f, const GraphMorphism& g, const PushoutNaming& naming) {
  if (!same_graph(f.domain(), g.domain())) throw PreconditionError("pushout: the span legs have different domains");
  if (!f.is_m() && !g.is_m()) throw PreconditionError("pushout: neither leg is injective");
  const TypedGraph& B = *f.codomain();
  const TypedGraph& C = *g.codomain();
  const TypedGraph& A = *f.domain();

  Classes nodes = quotient(B.node_count(), C.node_count(), A.node_count(), f.node_map(), g.node_map());
  Classes edges = quotient(B.edge_count(), C.edge_count(), A.edge_count(), f.edge_map(), g.edge_map());

  auto elem_id = [&](const Preimage& p, bool node) -> const std::string& {
    const TypedGraph& G = p.side == 0 ? B : C;
    return node ? G.node_id(p.element) : G.edge_id(p.element);
  };
  auto class_names = [&](const Classes& cls, bool node) {
    std::vector<std::string> names(cls.members.size());
    if (naming.mode == PushoutNaming::Mode::Canonical) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& m = cls.members[i];
        int side = m.front().side;
        std::string best;
        for (const auto& p : m) {
          if (p.side != side) continue;
          if (best.empty() || elem_id(p, node) < best) best = elem_id(p, node);
        }
        names[i] = std::to_string(side) + ":" + best;
      }
      return names;
    }
    Namer namer;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& m = cls.members[i];
      if (m.front().side != 0) continue;
      std::string best = elem_id(m.front(), node);
      for (const auto& p : m) {
        if (p.side == 0 && elem_id(p, node) < best) best = elem_id(p, node);
      }
      names[i] = best;
      namer.reserve(best);
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& m = cls.members[i];
      if (m.front().side == 0) continue;
      std::string best = elem_id(m.front(), node);
      for (const auto& p : m) {
        if (elem_id(p, node) < best) best = elem_id(p, node);
      }
      names[i] = namer.take(best + naming.suffix);
    }
    return names;
  };
  std::vector<std::string> node_names = class_names(nodes, true);
  std::vector<std::string> edge_names = class_names(edges, false);

  GraphData d;
  for (std::size_t i = 0; i < node_names.size(); ++i) {
    const Preimage& p = nodes.members[i].front();
    const TypedGraph& G = p.side == 0 ? B : C;
    d.node(node_names[i], G.node_type_name(p.element));
  }
  for (std::size_t i = 0; i < edge_names.size(); ++i) {
    const Preimage& p = edges.members[i].front();
    const TypedGraph& G = p.side == 0 ? B : C;
    Index s = G.source(p.element);
    Index t = G.target(p.element);
    Index sc = p.side == 0 ? nodes.left[s] : nodes.right[s];
    Index tc = p.side == 0 ? nodes.left[t] : nodes.right[t];
    d.edge(edge_names[i], G.edge_type_name(p.element), node_names[sc], node_names[tc]);
  }
  GraphPtr apex = make_graph(B.signature(), d);

  std::vector<Index> node_pos(node_names.size()), edge_pos(edge_names.size());
  for (std::size_t i = 0; i < node_names.size(); ++i) node_pos[i] = *apex->find_node(node_names[i]);
  for (std::size_t i = 0; i < edge_names.size(); ++i) edge_pos[i] = *apex->find_edge(edge_names[i]);

  auto leg = [&](const GraphPtr& src, const std::vector<Index>& ncls, const std::vector<Index>& ecls) {
    std::vector<Index> nm(ncls.size()), em(ecls.size());
    for (std::size_t i = 0; i < nm.size(); ++i) nm[i] = node_pos[ncls[i]];
    for (std::size_t i = 0; i < em.size(); ++i) em[i] = edge_pos[ecls[i]];
    return GraphMorphism(src, apex, std::move(nm), std::move(em));
  };
  GraphMorphism left = leg(f.codomain(), nodes.left, edges.left);
  GraphMorphism right = leg(g.codomain(), nodes.right, edges.right);

  std::vector<std::vector<Preimage>> nprov(node_names.size()), eprov(edge_names.size());
  for (std::size_t i = 0; i < node_names.size(); ++i) nprov[node_pos[i]] = nodes.members[i];
  for (std::size_t i = 0; i < edge_names.size(); ++i) eprov[edge_pos[i]] = edges.members[i];

  if (naming.mode == PushoutNaming::Mode::Canonical) {
    auto [renamed, iso] = canonical_rename(apex, naming.prefix);
    // canonical_rename keeps indices, so provenance stays valid.
    left = compose(left, iso);
    right = compose(right, iso);
    apex = renamed;
  }
  return CospanPO{apex, std::move(left), std::move(right), std::move(nprov), std::move(eprov)};
}

SpanPB pullback(const GraphMorphism& f, const GraphMorphism& g) {
  if (!same_graph(f.codomain(), g.codomain())) throw PreconditionError("pullback: the cospan legs have different codomains");
  const TypedGraph& B = *f.domain();
  const TypedGraph& C = *g.domain();
  const TypedGraph& D = *f.codomain();

  std::vector<std::vector<Index>> c_over_node(D.node_count()), c_over_edge(D.edge_count());
  for (Index c = 0; c < C.node_count(); ++c) c_over_node[g.node(c)].push_back(c);
  for (Index c = 0; c < C.edge_count(); ++c) c_over_edge[g.edge(c)].push_back(c);

  auto pair_name = [](const std::string& b, const std::string& c) { return b == c ? b : b + "|" + c; };

  GraphData d;
  Namer node_namer, edge_namer;
  std::map<std::pair<Index, Index>, std::string> node_pairs;
  std::vector<std::pair<std::string, std::pair<Index, Index>>> node_list, edge_list;
  for (Index b = 0; b < B.node_count(); ++b) {
    for (Index c : c_over_node[f.node(b)]) {
      std::string id = node_namer.take(pair_name(B.node_id(b), C.node_id(c)));
      node_pairs.emplace(std::pair{b, c}, id);
      node_list.push_back({id, {b, c}});
      d.node(id, B.node_type_name(b));
    }
  }
  for (Index b = 0; b < B.edge_count(); ++b) {
    for (Index c : c_over_edge[f.edge(b)]) {
      std::string id = edge_namer.take(pair_name(B.edge_id(b), C.edge_id(c)));
      edge_list.push_back({id, {b, c}});
      d.edge(id, B.edge_type_name(b), node_pairs.at({B.source(b), C.source(c)}),
             node_pairs.at({B.target(b), C.target(c)}));
    }
  }
  GraphPtr apex = make_graph(B.signature(), d);
  std::vector<Index> ln(apex->node_count()), rn(apex->node_count()), le(apex->edge_count()), re(apex->edge_count());
  for (const auto& [id, pr] : node_list) {
    Index i = *apex->find_node(id);
    ln[i] = pr.first;
    rn[i] = pr.second;
  }
  for (const auto& [id, pr] : edge_list) {
    Index i = *apex->find_edge(id);
    le[i] = pr.first;
    re[i] = pr.second;
  }
  return SpanPB{apex, GraphMorphism(apex, f.domain(), std::move(ln), std::move(le)),
                GraphMorphism(apex, g.domain(), std::move(rn), std::move(re))};
}

GraphMorphism subgraph_inclusion(const GraphPtr& g, const std::vector<char>& keep_nodes,
                                 const std::vector<char>& keep_edges) {
  GraphData d;
  std::vector<Index> nm, em;
  for (Index n = 0; n < g->node_count(); ++n) {
    if (!keep_nodes[n]) continue;
    d.node(g->node_id(n), g->node_type_name(n));
    nm.push_back(n);
  }
  for (Index e = 0; e < g->edge_count(); ++e) {
    if (!keep_edges[e]) continue;
    if (!keep_nodes[g->source(e)] || !keep_nodes[g->target(e)]) {
      throw PreconditionError("subgraph keeps edge '" + g->edge_id(e) + "' without its endpoints");
    }
    d.edge(g->edge_id(e), g->edge_type_name(e), g->node_id(g->source(e)), g->node_id(g->target(e)));
    em.push_back(e);
  }
  // Storage order is (type, id), so kept elements appear in the same order.
  return GraphMorphism(make_graph(g->signature(), d), g, std::move(nm), std::move(em));
}

ComplementResult pushout_complement(const GraphMorphism& l, const GraphMorphism& m) {
  if (!l.is_m() || !m.is_m()) throw PreconditionError("pushout_complement: both morphisms must be injective");
  if (!same_graph(l.codomain(), m.domain())) throw PreconditionError("pushout_complement: morphisms are not composable");
  const TypedGraph& L = *m.domain();
  const TypedGraph& G = *m.codomain();

  std::vector<char> kept_l_node(L.node_count(), 0), kept_l_edge(L.edge_count(), 0);
  for (Index i : l.node_map()) kept_l_node[i] = 1;
  for (Index i : l.edge_map()) kept_l_edge[i] = 1;
  std::vector<char> keep_node(G.node_count(), 1), keep_edge(G.edge_count(), 1), in_match(G.edge_count(), 0);
  for (Index e = 0; e < L.edge_count(); ++e) {
    in_match[m.edge(e)] = 1;
    if (!kept_l_edge[e]) keep_edge[m.edge(e)] = 0;
  }
  ComplementResult out;
  for (Index v = 0; v < L.node_count(); ++v) {
    if (kept_l_node[v]) continue;
    Index w = m.node(v);
    keep_node[w] = 0;
    std::set<Index> seen;
    for (auto edges : {G.out_edges(w), G.in_edges(w)}) {
      for (Index e : edges) {
        if (!in_match[e] && seen.insert(e).second) out.dangling.push_back({G.node_id(w), G.edge_id(e)});
      }
    }
  }
  if (!out.dangling.empty()) return out;

  GraphMorphism g = subgraph_inclusion(m.codomain(), keep_node, keep_edge);
  std::vector<Index> node_pos(G.node_count(), kNone), edge_pos(G.edge_count(), kNone);
  for (Index i = 0; i < g.node_map().size(); ++i) node_pos[g.node(i)] = i;
  for (Index i = 0; i < g.edge_map().size(); ++i) edge_pos[g.edge(i)] = i;
  const TypedGraph& K = *l.domain();
  std::vector<Index> dn(K.node_count()), de(K.edge_count());
  for (Index k = 0; k < K.node_count(); ++k) dn[k] = node_pos[m.node(l.node(k))];
  for (Index k = 0; k < K.edge_count(); ++k) de[k] = edge_pos[m.edge(l.edge(k))];
  GraphMorphism d(l.domain(), g.domain(), std::move(dn), std::move(de));
  out.value = PushoutComplement{g.domain(), std::move(d), std::move(g)};
  return out;
}

InitialPushoutResult initial_pushout(const GraphMorphism& f) {
  if (!f.is_m()) throw PreconditionError("initial_pushout: morphism must be injective");
  const TypedGraph& A = *f.domain();
  const TypedGraph& B = *f.codomain();
  std::vector<char> hit_node(B.node_count(), 0), hit_edge(B.edge_count(), 0);
  for (Index i : f.node_map()) hit_node[i] = 1;
  for (Index i : f.edge_map()) hit_edge[i] = 1;

  std::vector<char> boundary(A.node_count(), 0);
  for (Index a = 0; a < A.node_count(); ++a) {
    Index w = f.node(a);
    for (auto edges : {B.out_edges(w), B.in_edges(w)}) {
      for (Index e : edges) {
        if (!hit_edge[e]) boundary[a] = 1;
      }
    }
  }
  GraphMorphism b = subgraph_inclusion(f.domain(), boundary, std::vector<char>(A.edge_count(), 0));

  std::vector<char> ctx_node(B.node_count(), 0), ctx_edge(B.edge_count(), 0);
  for (Index w = 0; w < B.node_count(); ++w) ctx_node[w] = !hit_node[w];
  for (Index a = 0; a < A.node_count(); ++a) {
    if (boundary[a]) ctx_node[f.node(a)] = 1;
  }
  for (Index e = 0; e < B.edge_count(); ++e) ctx_edge[e] = !hit_edge[e];
  GraphMorphism c = subgraph_inclusion(f.codomain(), ctx_node, ctx_edge);

  std::vector<Index> ctx_pos(B.node_count(), kNone);
  for (Index i = 0; i < c.node_map().size(); ++i) ctx_pos[c.node(i)] = i;
  std::vector<Index> xn(b.domain()->node_count());
  for (Index i = 0; i < xn.size(); ++i) xn[i] = ctx_pos[f.node(b.node(i))];
  GraphMorphism x(b.domain(), c.domain(), std::move(xn), {});
  return InitialPushoutResult{b.domain(), c.domain(), std::move(b), std::move(x), std::move(c)};
}

namespace {

class OverlapEnumerator {
 public:
  OverlapEnumerator(const GraphPtr& a, const GraphPtr& b, const OverlapOptions& opt, std::vector<Overlap>& out)
      : a_(a), b_(b), opt_(opt), out_(out) {}

  void run() {
    const TypedGraph& A = *a_;
    const TypedGraph& B = *b_;
    forced_node_.assign(A.node_count(), kNone);
    forced_edge_.assign(A.edge_count(), kNone);
    reserved_node_.assign(B.node_count(), 0);
    reserved_edge_.assign(B.edge_count(), 0);
    for (auto [x, y] : opt_.forced_nodes) {
      if (A.node_type(x) != B.node_type(y)) return;
      if (forced_node_[x] != kNone && forced_node_[x] != y) return;
      if (reserved_node_[y] && forced_node_[x] != y) return;
      forced_node_[x] = y;
      reserved_node_[y] = 1;
    }
    for (auto [x, y] : opt_.forced_edges) {
      if (A.edge_type(x) != B.edge_type(y)) return;
      if (forced_edge_[x] != kNone && forced_edge_[x] != y) return;
      if (reserved_edge_[y] && forced_edge_[x] != y) return;
      forced_edge_[x] = y;
      reserved_edge_[y] = 1;
    }
    node_match_.assign(A.node_count(), kNone);
    edge_match_.assign(A.edge_count(), kNone);
    used_node_.assign(B.node_count(), 0);
    used_edge_.assign(B.edge_count(), 0);
    match_nodes(0, 0);
  }

 private:
  void match_nodes(Index x, std::size_t matched) {
    const TypedGraph& A = *a_;
    const TypedGraph& B = *b_;
    if (x == A.node_count()) {
      if (opt_.max_nodes && A.node_count() + B.node_count() - matched > *opt_.max_nodes) return;
      match_edges(0);
      return;
    }
    if (forced_node_[x] != kNone) {
      take_node(x, forced_node_[x], matched);
      return;
    }
    match_nodes(x + 1, matched);
    for (Index y = 0; y < B.node_count(); ++y) {
      if (used_node_[y] || reserved_node_[y] || A.node_type(x) != B.node_type(y)) continue;
      take_node(x, y, matched);
    }
  }

  void take_node(Index x, Index y, std::size_t matched) {
    node_match_[x] = y;
    used_node_[y] = 1;
    match_nodes(x + 1, matched + 1);
    used_node_[y] = 0;
    node_match_[x] = kNone;
  }

  void match_edges(Index e) {
    const TypedGraph& A = *a_;
    const TypedGraph& B = *b_;
    if (e == A.edge_count()) {
      emit();
      return;
    }
    auto fits = [&](Index f) {
      return A.edge_type(e) == B.edge_type(f) && node_match_[A.source(e)] == B.source(f) &&
             node_match_[A.target(e)] == B.target(f);
    };
    if (forced_edge_[e] != kNone) {
      Index f = forced_edge_[e];
      if (!fits(f)) return;
      edge_match_[e] = f;
      match_edges(e + 1);
      edge_match_[e] = kNone;
      return;
    }
    match_edges(e + 1);
    Index s = node_match_[A.source(e)];
    if (s == kNone || node_match_[A.target(e)] == kNone) return;
    for (Index f : B.out_edges(s)) {
      if (used_edge_[f] || reserved_edge_[f] || !fits(f)) continue;
      edge_match_[e] = f;
      used_edge_[f] = 1;
      match_edges(e + 1);
      used_edge_[f] = 0;
      edge_match_[e] = kNone;
    }
  }

  void emit() {
    const TypedGraph& A = *a_;
    std::vector<char> kn(A.node_count()), ke(A.edge_count());
    for (Index x = 0; x < A.node_count(); ++x) kn[x] = node_match_[x] != kNone;
    for (Index e = 0; e < A.edge_count(); ++e) ke[e] = edge_match_[e] != kNone;
    GraphMorphism to_a = subgraph_inclusion(a_, kn, ke);
    std::vector<Index> nm, em;
    for (Index i : to_a.node_map()) nm.push_back(node_match_[i]);
    for (Index i : to_a.edge_map()) em.push_back(edge_match_[i]);
    GraphMorphism to_b(to_a.domain(), b_, std::move(nm), std::move(em));
    CospanPO po = pushout(to_a, to_b, opt_.naming);
    out_.push_back(Overlap{std::move(po.left_leg), std::move(po.right_leg)});
  }

  const GraphPtr& a_;
  const GraphPtr& b_;
  const OverlapOptions& opt_;
  std::vector<Overlap>& out_;
  std::vector<Index> forced_node_, forced_edge_, node_match_, edge_match_;
  std::vector<char> reserved_node_, reserved_edge_, used_node_, used_edge_;
};

}  // namespace

std::vector<Overlap> jointly_epic_overlaps(const GraphPtr& a, const GraphPtr& b, const OverlapOptions& options) {
  if (!(*a->signature() == *b->signature())) throw PreconditionError("jointly_epic_overlaps: different signatures");
  std::vector<Overlap> out;
  OverlapEnumerator(a, b, options, out).run();
  return out;
}

std::optional<GraphMorphism> induced_from_pushout(const GraphMorphism& i1, const GraphMorphism& i2,
                                                  const GraphMorphism& j1, const GraphMorphism& j2) {
  if (!same_graph(i1.codomain(), i2.codomain()) || !same_graph(j1.codomain(), j2.codomain()) ||
      !same_graph(i1.domain(), j1.domain()) || !same_graph(i2.domain(), j2.domain())) {
    throw PreconditionError("induced_from_pushout: cospans do not match");
  }
  const TypedGraph& P = *i1.codomain();
  std::vector<Index> nm(P.node_count(), kNone), em(P.edge_count(), kNone);
  auto put = [](std::vector<Index>& map, Index at, Index value) {
    if (map[at] != kNone && map[at] != value) return false;
    map[at] = value;
    return true;
  };
  for (Index x = 0; x < i1.node_map().size(); ++x) {
    if (!put(nm, i1.node(x), j1.node(x))) return std::nullopt;
  }
  for (Index x = 0; x < i2.node_map().size(); ++x) {
    if (!put(nm, i2.node(x), j2.node(x))) return std::nullopt;
  }
  for (Index x = 0; x < i1.edge_map().size(); ++x) {
    if (!put(em, i1.edge(x), j1.edge(x))) return std::nullopt;
  }
  for (Index x = 0; x < i2.edge_map().size(); ++x) {
    if (!put(em, i2.edge(x), j2.edge(x))) return std::nullopt;
  }
  if (std::count(nm.begin(), nm.end(), kNone) || std::count(em.begin(), em.end(), kNone)) return std::nullopt;
  try {
    return GraphMorphism(i1.codomain(), j1.codomain(), std::move(nm), std::move(em));
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

std::optional<GraphMorphism> induced_into_pullback(const GraphMorphism& p1, const GraphMorphism& p2,
                                                   const GraphMorphism& j1, const GraphMorphism& j2) {
  if (!same_graph(p1.domain(), p2.domain()) || !same_graph(j1.domain(), j2.domain()) ||
      !same_graph(p1.codomain(), j1.codomain()) || !same_graph(p2.codomain(), j2.codomain())) {
    throw PreconditionError("induced_into_pullback: spans do not match");
  }
  std::map<std::pair<Index, Index>, Index> nodes, edges;
  for (Index y = 0; y < p1.node_map().size(); ++y) nodes.emplace(std::pair{p1.node(y), p2.node(y)}, y);
  for (Index y = 0; y < p1.edge_map().size(); ++y) edges.emplace(std::pair{p1.edge(y), p2.edge(y)}, y);
  std::vector<Index> nm(j1.node_map().size()), em(j1.edge_map().size());
  for (Index x = 0; x < nm.size(); ++x) {
    auto it = nodes.find({j1.node(x), j2.node(x)});
    if (it == nodes.end()) return std::nullopt;
    nm[x] = it->second;
  }
  for (Index x = 0; x < em.size(); ++x) {
    auto it = edges.find({j1.edge(x), j2.edge(x)});
    if (it == edges.end()) return std::nullopt;
    em[x] = it->second;
  }
  try {
    return GraphMorphism(j1.domain(), p1.domain(), std::move(nm), std::move(em));
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

bool is_pushout(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& i1, const GraphMorphism& i2) {
  if (!commutes(f, i1, g, i2)) return false;
  CospanPO po = pushout(f, g);
  auto u = induced_from_pushout(po.left_leg, po.right_leg, i1, i2);
  return u && u->is_isomorphism();
}

bool is_pullback(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& p1, const GraphMorphism& p2) {
  if (!commutes(p1, f, p2, g)) return false;
  SpanPB pb = pullback(f, g);
  auto u = induced_into_pullback(pb.left_leg, pb.right_leg, p1, p2);
  return u && u->is_isomorphism();
}

std::optional<GraphMorphism> factor_through(const GraphMorphism& f, const GraphMorphism& mono) {
  if (!same_graph(f.codomain(), mono.codomain()) || !mono.is_m()) {
    throw PreconditionError("factor_through: expects an injective morphism into the codomain of f");
  }
  std::vector<Index> inv_n(mono.codomain()->node_count(), kNone), inv_e(mono.codomain()->edge_count(), kNone);
  for (Index x = 0; x < mono.node_map().size(); ++x) inv_n[mono.node(x)] = x;
  for (Index x = 0; x < mono.edge_map().size(); ++x) inv_e[mono.edge(x)] = x;
  std::vector<Index> nm(f.node_map().size()), em(f.edge_map().size());
  for (Index x = 0; x < nm.size(); ++x) {
    if ((nm[x] = inv_n[f.node(x)]) == kNone) return std::nullopt;
  }
  for (Index x = 0; x < em.size(); ++x) {
    if ((em[x] = inv_e[f.edge(x)]) == kNone) return std::nullopt;
  }
  return GraphMorphism(f.domain(), mono.domain(), std::move(nm), std::move(em));
}

}  // namespace gcr
