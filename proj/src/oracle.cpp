#include "gcr/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gcr/error.hpp"
#include "gcr/search.hpp"

namespace gcr::oracle {

namespace {

constexpr Index kNone = static_cast<Index>(-1);

void say(std::string* why, const std::string& msg) {
  if (why) *why = msg;
}

// Morphism P -> P + T into the left summand of disjoint_union(P, T).
GraphMorphism into_left_summand(const GraphPtr& p, const GraphPtr& sum) {
  std::vector<Index> nm(p->node_count()), em(p->edge_count());
  for (Index n = 0; n < nm.size(); ++n) nm[n] = *sum->find_node("a:" + p->node_id(n));
  for (Index e = 0; e < em.size(); ++e) em[e] = *sum->find_edge("a:" + p->edge_id(e));
  return GraphMorphism(p, sum, std::move(nm), std::move(em));
}

GraphMorphism to_type_graph(const GraphPtr& g, const GraphPtr& t) {
  std::vector<Index> nm(g->node_count()), em(g->edge_count());
  for (Index n = 0; n < nm.size(); ++n) nm[n] = *t->find_node(g->node_type_name(n));
  for (Index e = 0; e < em.size(); ++e) em[e] = *t->find_edge(g->edge_type_name(e));
  return GraphMorphism(g, t, std::move(nm), std::move(em));
}

// Equivalence on 0..n-1 generated by the given pairs, by repeated relabeling.
std::vector<Index> generated_labels(std::size_t n, const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<Index> label(n);
  for (Index i = 0; i < n; ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [x, y] : pairs) {
      Index lx = label[x], ly = label[y];
      if (lx == ly) continue;
      Index keep = std::min(lx, ly), drop = std::max(lx, ly);
      for (auto& l : label) {
        if (l == drop) l = keep;
      }
      changed = true;
    }
  }
  return label;
}

}  // namespace

std::vector<GraphMorphism> brute_force_morphisms(const GraphPtr& src, const GraphPtr& dst, bool injective_only) {
  const TypedGraph& S = *src;
  const TypedGraph& D = *dst;
  std::vector<GraphMorphism> out;
  std::vector<Index> nm(S.node_count(), 0), em(S.edge_count(), 0);
  std::function<void(Index)> edges = [&](Index e) {
    if (e == S.edge_count()) {
      if (injective_only) {
        std::vector<Index> ns(nm), es(em);
        std::sort(ns.begin(), ns.end());
        std::sort(es.begin(), es.end());
        if (std::adjacent_find(ns.begin(), ns.end()) != ns.end()) return;
        if (std::adjacent_find(es.begin(), es.end()) != es.end()) return;
      }
      out.emplace_back(src, dst, nm, em);
      return;
    }
    for (Index f = 0; f < D.edge_count(); ++f) {
      if (D.edge_type(f) != S.edge_type(e)) continue;
      if (D.source(f) != nm[S.source(e)] || D.target(f) != nm[S.target(e)]) continue;
      em[e] = f;
      edges(e + 1);
    }
  };
  std::function<void(Index)> nodes = [&](Index n) {
    if (n == S.node_count()) {
      edges(0);
      return;
    }
    for (Index w = 0; w < D.node_count(); ++w) {
      if (D.node_type(w) != S.node_type(n)) continue;
      nm[n] = w;
      nodes(n + 1);
    }
  };
  nodes(0);
  return out;
}

std::size_t count_pushout_mediators(const GraphMorphism& i1, const GraphMorphism& i2, const GraphMorphism& j1,
                                    const GraphMorphism& j2, std::size_t limit) {
  const TypedGraph& P = *i1.codomain();
  std::vector<Index> want_n(P.node_count(), kNone), want_e(P.edge_count(), kNone);
  auto put = [](std::vector<Index>& want, Index at, Index v) {
    if (want[at] != kNone && want[at] != v) return false;
    want[at] = v;
    return true;
  };
  for (Index x = 0; x < i1.node_map().size(); ++x) {
    if (!put(want_n, i1.node(x), j1.node(x))) return 0;
  }
  for (Index x = 0; x < i2.node_map().size(); ++x) {
    if (!put(want_n, i2.node(x), j2.node(x))) return 0;
  }
  for (Index x = 0; x < i1.edge_map().size(); ++x) {
    if (!put(want_e, i1.edge(x), j1.edge(x))) return 0;
  }
  for (Index x = 0; x < i2.edge_map().size(); ++x) {
    if (!put(want_e, i2.edge(x), j2.edge(x))) return 0;
  }
  SearchConstraints c;
  c.node_filter = [&](Index p, Index w) { return want_n[p] == kNone || want_n[p] == w; };
  c.edge_filter = [&](Index p, Index w) { return want_e[p] == kNone || want_e[p] == w; };
  return count_morphisms(i1.codomain(), j1.codomain(), c, limit);
}

std::size_t count_pullback_mediators(const GraphMorphism& p1, const GraphMorphism& p2, const GraphMorphism& j1,
                                     const GraphMorphism& j2, std::size_t limit) {
  SearchConstraints c;
  c.node_filter = [&](Index x, Index y) { return p1.node(y) == j1.node(x) && p2.node(y) == j2.node(x); };
  c.edge_filter = [&](Index x, Index y) { return p1.edge(y) == j1.edge(x) && p2.edge(y) == j2.edge(x); };
  return count_morphisms(j1.domain(), p1.domain(), c, limit);
}

bool check_pushout(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& i1, const GraphMorphism& i2,
                   std::string* why) {
  if (!commutes(f, i1, g, i2)) {
    say(why, "square does not commute");
    return false;
  }
  const TypedGraph& B = *f.codomain();
  const TypedGraph& C = *g.codomain();
  const GraphPtr& P = i1.codomain();
  const std::size_t nb = B.node_count(), eb = B.edge_count();

  std::vector<std::pair<Index, Index>> node_pairs, edge_pairs;
  for (Index a = 0; a < f.node_map().size(); ++a) node_pairs.push_back({f.node(a), static_cast<Index>(nb + g.node(a))});
  for (Index a = 0; a < f.edge_map().size(); ++a) edge_pairs.push_back({f.edge(a), static_cast<Index>(eb + g.edge(a))});
  std::vector<Index> nlabel = generated_labels(nb + C.node_count(), node_pairs);
  std::vector<Index> elabel = generated_labels(eb + C.edge_count(), edge_pairs);

  auto node_img = [&](Index x) { return x < nb ? i1.node(x) : i2.node(x - nb); };
  auto edge_img = [&](Index x) { return x < eb ? i1.edge(x) : i2.edge(x - eb); };
  std::vector<char> hit_n(P->node_count(), 0), hit_e(P->edge_count(), 0);
  for (Index x = 0; x < nlabel.size(); ++x) {
    hit_n[node_img(x)] = 1;
    for (Index y = x + 1; y < nlabel.size(); ++y) {
      if ((nlabel[x] == nlabel[y]) != (node_img(x) == node_img(y))) {
        say(why, "apex nodes are not the generated quotient");
        return false;
      }
    }
  }
  for (Index x = 0; x < elabel.size(); ++x) {
    hit_e[edge_img(x)] = 1;
    for (Index y = x + 1; y < elabel.size(); ++y) {
      if ((elabel[x] == elabel[y]) != (edge_img(x) == edge_img(y))) {
        say(why, "apex edges are not the generated quotient");
        return false;
      }
    }
  }
  if (std::count(hit_n.begin(), hit_n.end(), 0) || std::count(hit_e.begin(), hit_e.end(), 0)) {
    say(why, "legs are not jointly surjective");
    return false;
  }

  // Competitor built from the labels alone.
  GraphData q;
  std::map<Index, std::string> qnode;
  for (Index x = 0; x < nlabel.size(); ++x) {
    if (qnode.count(nlabel[x])) continue;
    qnode[nlabel[x]] = "q" + std::to_string(nlabel[x]);
    q.node(qnode[nlabel[x]], x < nb ? B.node_type_name(x) : C.node_type_name(x - nb));
  }
  std::map<Index, std::string> qedge;
  for (Index x = 0; x < elabel.size(); ++x) {
    if (qedge.count(elabel[x])) continue;
    qedge[elabel[x]] = "q" + std::to_string(elabel[x]);
    if (x < eb) {
      q.edge(qedge[elabel[x]], B.edge_type_name(x), qnode[nlabel[B.source(x)]], qnode[nlabel[B.target(x)]]);
    } else {
      Index c = x - eb;
      q.edge(qedge[elabel[x]], C.edge_type_name(c), qnode[nlabel[nb + C.source(c)]], qnode[nlabel[nb + C.target(c)]]);
    }
  }
  GraphPtr Q = make_graph(B.signature(), q);
  auto q_leg = [&](const GraphPtr& src, std::size_t noff, std::size_t eoff) {
    std::vector<Index> nm(src->node_count()), em(src->edge_count());
    for (Index n = 0; n < nm.size(); ++n) nm[n] = *Q->find_node(qnode[nlabel[noff + n]]);
    for (Index e = 0; e < em.size(); ++e) em[e] = *Q->find_edge(qedge[elabel[eoff + e]]);
    return GraphMorphism(src, Q, std::move(nm), std::move(em));
  };
  GraphMorphism q1 = q_leg(f.codomain(), 0, 0);
  GraphMorphism q2 = q_leg(g.codomain(), nb, eb);

  GraphPtr T = type_graph(B.signature());
  GraphPtr PT = disjoint_union(*P, *T);
  GraphMorphism into_pt = into_left_summand(P, PT);

  struct Competitor {
    const char* name;
    GraphMorphism j1, j2;
  };
  std::vector<Competitor> competitors{
      {"itself", i1, i2},
      {"type graph", to_type_graph(f.codomain(), T), to_type_graph(g.codomain(), T)},
      {"apex + type graph", compose(i1, into_pt), compose(i2, into_pt)},
      {"generated quotient", q1, q2},
  };
  for (const auto& c : competitors) {
    std::size_t n = count_pushout_mediators(i1, i2, c.j1, c.j2);
    if (n != 1) {
      say(why, std::string("competitor '") + c.name + "' has " + std::to_string(n) + " mediators");
      return false;
    }
  }
  return true;
}

bool check_pullback(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& p1, const GraphMorphism& p2,
                    std::string* why) {
  if (!commutes(p1, f, p2, g)) {
    say(why, "square does not commute");
    return false;
  }
  const GraphPtr& B = f.domain();
  const GraphPtr& C = g.domain();
  const SignaturePtr& sig = B->signature();
  if (count_pullback_mediators(p1, p2, p1, p2) != 1) {
    say(why, "apex has a non-trivial mediator onto itself");
    return false;
  }
  for (Index b = 0; b < B->node_count(); ++b) {
    for (Index c = 0; c < C->node_count(); ++c) {
      if (f.node(b) != g.node(c)) continue;
      GraphPtr X = make_graph(sig, GraphData{}.node("x", B->node_type_name(b)));
      GraphMorphism j1(X, B, {b}, {}), j2(X, C, {c}, {});
      if (count_pullback_mediators(p1, p2, j1, j2) != 1) {
        say(why, "node pair (" + B->node_id(b) + ", " + C->node_id(c) + ") is not represented exactly once");
        return false;
      }
    }
  }
  for (Index b = 0; b < B->edge_count(); ++b) {
    for (Index c = 0; c < C->edge_count(); ++c) {
      if (f.edge(b) != g.edge(c)) continue;
      const EdgeType& et = sig->edge_type(B->edge_type(b));
      GraphPtr X = make_graph(sig, GraphData{}.node("s", et.source).node("t", et.target).edge("e", et.name, "s", "t"));
      Index xs = *X->find_node("s"), xt = *X->find_node("t");
      std::vector<Index> n1(2), n2(2);
      n1[xs] = B->source(b);
      n1[xt] = B->target(b);
      n2[xs] = C->source(c);
      n2[xt] = C->target(c);
      GraphMorphism j1(X, B, n1, {b}), j2(X, C, n2, {c});
      if (count_pullback_mediators(p1, p2, j1, j2) != 1) {
        say(why, "edge pair (" + B->edge_id(b) + ", " + C->edge_id(c) + ") is not represented exactly once");
        return false;
      }
    }
  }
  return true;
}

bool check_initial_pushout(const GraphMorphism& f, const InitialPushoutResult& ipo, std::string* why) {
  if (!ipo.b.is_m() || !ipo.c.is_m()) {
    say(why, "vertical morphisms are not injective");
    return false;
  }
  std::string inner;
  if (!check_pushout(ipo.b, ipo.x, f, ipo.c, &inner)) {
    say(why, "initial square is not a pushout: " + inner);
    return false;
  }
  const GraphPtr& A = f.domain();
  const GraphPtr& B = f.codomain();
  std::vector<char> img_n(B->node_count(), 0), img_e(B->edge_count(), 0);
  for (Index i : f.node_map()) img_n[i] = 1;
  for (Index i : f.edge_map()) img_e[i] = 1;

  // Pushouts over f with injective verticals are, up to iso, subgraphs C'
  // of B covering everything outside f(A); B' is then the preimage of C'.
  std::vector<char> base_n(B->node_count(), 0), base_e(B->edge_count(), 0);
  for (Index e = 0; e < B->edge_count(); ++e) {
    if (img_e[e]) continue;
    base_e[e] = 1;
    base_n[B->source(e)] = base_n[B->target(e)] = 1;
  }
  for (Index n = 0; n < B->node_count(); ++n) {
    if (!img_n[n]) base_n[n] = 1;
  }
  std::vector<Index> opt_nodes, opt_edges;
  for (Index n = 0; n < B->node_count(); ++n) {
    if (!base_n[n]) opt_nodes.push_back(n);
  }
  for (Index e = 0; e < B->edge_count(); ++e) {
    if (!base_e[e]) opt_edges.push_back(e);
  }
  if (opt_nodes.size() + opt_edges.size() > 20) throw PreconditionError("check_initial_pushout: instance too large");

  for (std::uint32_t nmask = 0; nmask < (1u << opt_nodes.size()); ++nmask) {
    std::vector<char> kn = base_n;
    for (std::size_t i = 0; i < opt_nodes.size(); ++i) {
      if (nmask >> i & 1) kn[opt_nodes[i]] = 1;
    }
    for (std::uint32_t emask = 0; emask < (1u << opt_edges.size()); ++emask) {
      std::vector<char> ke = base_e;
      bool ok = true;
      for (std::size_t i = 0; i < opt_edges.size() && ok; ++i) {
        if (!(emask >> i & 1)) continue;
        Index e = opt_edges[i];
        if (!kn[B->source(e)] || !kn[B->target(e)]) ok = false;
        ke[e] = 1;
      }
      if (!ok) continue;
      GraphMorphism c2 = subgraph_inclusion(B, kn, ke);
      std::vector<char> an(A->node_count()), ae(A->edge_count());
      for (Index a = 0; a < an.size(); ++a) an[a] = kn[f.node(a)];
      for (Index a = 0; a < ae.size(); ++a) ae[a] = ke[f.edge(a)];
      GraphMorphism b2 = subgraph_inclusion(A, an, ae);
      std::vector<Index> fn, fe;
      for (Index a : b2.node_map()) fn.push_back(*c2.domain()->find_node(B->node_id(f.node(a))));
      for (Index a : b2.edge_map()) fe.push_back(*c2.domain()->find_edge(B->edge_id(f.edge(a))));
      GraphMorphism f2(b2.domain(), c2.domain(), fn, fe);
      if (!is_pushout(b2, f2, f, c2)) continue;

      SearchConstraints cb;
      cb.injective = true;
      cb.node_filter = [&](Index y, Index z) { return b2.node(z) == ipo.b.node(y); };
      auto bstar = find_morphisms(ipo.boundary, b2.domain(), cb);
      SearchConstraints cc;
      cc.injective = true;
      cc.node_filter = [&](Index y, Index z) { return c2.node(z) == ipo.c.node(y); };
      cc.edge_filter = [&](Index y, Index z) { return c2.edge(z) == ipo.c.edge(y); };
      auto cstar = find_morphisms(ipo.context, c2.domain(), cc);
      if (bstar.size() != 1 || cstar.size() != 1) {
        say(why, "initial square does not factor uniquely through a pushout over f");
        return false;
      }
      if (!commutes(bstar[0], f2, ipo.x, cstar[0])) {
        say(why, "factorization through a pushout over f does not commute");
        return false;
      }
    }
  }
  return true;
}

std::vector<PushoutComplement> brute_force_complements(const GraphMorphism& l, const GraphMorphism& m) {
  const GraphPtr& G = m.codomain();
  const TypedGraph& L = *m.domain();
  // D together with m(L) has to cover G, so only elements of
  // m(L) \ m(l(K)) are optional.
  std::vector<char> base_n(G->node_count(), 1), base_e(G->edge_count(), 1);
  std::vector<char> kn(L.node_count(), 0), ke(L.edge_count(), 0);
  for (Index i : l.node_map()) kn[i] = 1;
  for (Index i : l.edge_map()) ke[i] = 1;
  std::vector<Index> opt_nodes, opt_edges;
  for (Index v = 0; v < L.node_count(); ++v) {
    if (kn[v]) continue;
    base_n[m.node(v)] = 0;
    opt_nodes.push_back(m.node(v));
  }
  for (Index e = 0; e < L.edge_count(); ++e) {
    if (ke[e]) continue;
    base_e[m.edge(e)] = 0;
    opt_edges.push_back(m.edge(e));
  }
  if (opt_nodes.size() + opt_edges.size() > 20) throw PreconditionError("brute_force_complements: instance too large");
  std::vector<PushoutComplement> out;
  for (std::uint32_t nmask = 0; nmask < (1u << opt_nodes.size()); ++nmask) {
    std::vector<char> dn = base_n;
    for (std::size_t i = 0; i < opt_nodes.size(); ++i) {
      if (nmask >> i & 1) dn[opt_nodes[i]] = 1;
    }
    for (std::uint32_t emask = 0; emask < (1u << opt_edges.size()); ++emask) {
      std::vector<char> de = base_e;
      for (std::size_t i = 0; i < opt_edges.size(); ++i) {
        if (emask >> i & 1) de[opt_edges[i]] = 1;
      }
      bool ok = true;
      for (Index e = 0; e < G->edge_count() && ok; ++e) {
        if (de[e] && (!dn[G->source(e)] || !dn[G->target(e)])) ok = false;
      }
      if (!ok) continue;
      GraphMorphism g = subgraph_inclusion(G, dn, de);
      std::vector<Index> pos_n(G->node_count(), kNone), pos_e(G->edge_count(), kNone);
      for (Index i = 0; i < g.node_map().size(); ++i) pos_n[g.node(i)] = i;
      for (Index i = 0; i < g.edge_map().size(); ++i) pos_e[g.edge(i)] = i;
      std::vector<Index> dnm, dem;
      for (Index k = 0; k < l.node_map().size(); ++k) dnm.push_back(pos_n[m.node(l.node(k))]);
      for (Index k = 0; k < l.edge_map().size(); ++k) dem.push_back(pos_e[m.edge(l.edge(k))]);
      GraphMorphism d(l.domain(), g.domain(), dnm, dem);
      if (check_pushout(l, d, m, g)) out.push_back(PushoutComplement{g.domain(), d, g});
    }
  }
  return out;
}

}  // namespace gcr::oracle
