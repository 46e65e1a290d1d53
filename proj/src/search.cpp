#include "gcr/search.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "gcr/error.hpp"

namespace gcr {

namespace {

constexpr Index kUnset = std::numeric_limits<Index>::max();

std::uint64_t edge_key(Index type, Index s, Index t) {
  return (static_cast<std::uint64_t>(type) << 48) ^ (static_cast<std::uint64_t>(s) << 24) ^ t;
}

// Groups of source edges (same type and endpoints) checked when the last of
// their endpoints gets assigned.
struct EdgeGroup {
  Index type;
  Index source;
  Index target;
  Index multiplicity;
};

class Searcher {
 public:
  Searcher(const TypedGraph& src, const TypedGraph& dst, const SearchConstraints& c, const MorphismVisitor& visit)
      : src_(src), dst_(dst), c_(c), visit_(visit), inj_(c.injective || c.bijective) {}

  void run() {
    if (!prepare()) return;
    assign_node(0);
  }

 private:
  bool prepare() {
    const std::size_t sn = src_.node_count();
    const std::size_t se = src_.edge_count();
    if (src_.signature() != dst_.signature() && !(*src_.signature() == *dst_.signature())) {
      throw PreconditionError("morphism search between graphs over different signatures");
    }
    if (inj_ && (sn > dst_.node_count() || se > dst_.edge_count())) return false;
    if (c_.bijective) {
      if (sn != dst_.node_count() || se != dst_.edge_count()) return false;
      std::vector<int> count(src_.signature()->node_type_count(), 0);
      for (Index n = 0; n < sn; ++n) ++count[src_.node_type(n)];
      for (Index n = 0; n < dst_.node_count(); ++n) --count[dst_.node_type(n)];
      if (std::any_of(count.begin(), count.end(), [](int x) { return x != 0; })) return false;
      std::vector<int> ecount(src_.signature()->edge_type_count(), 0);
      for (Index e = 0; e < se; ++e) ++ecount[src_.edge_type(e)];
      for (Index e = 0; e < dst_.edge_count(); ++e) --ecount[dst_.edge_type(e)];
      if (std::any_of(ecount.begin(), ecount.end(), [](int x) { return x != 0; })) return false;
    }

    fixed_n_.assign(sn, kUnset);
    fixed_e_.assign(se, kUnset);
    if (!c_.fixed_nodes.empty()) {
      if (c_.fixed_nodes.size() != sn) throw PreconditionError("fixed node assignment has wrong size");
      for (Index n = 0; n < sn; ++n) {
        if (!c_.fixed_nodes[n]) continue;
        Index w = *c_.fixed_nodes[n];
        if (w >= dst_.node_count() || dst_.node_type(w) != src_.node_type(n)) return false;
        fixed_n_[n] = w;
      }
    }
    if (!c_.fixed_edges.empty()) {
      if (c_.fixed_edges.size() != se) throw PreconditionError("fixed edge assignment has wrong size");
      for (Index e = 0; e < se; ++e) {
        if (!c_.fixed_edges[e]) continue;
        Index f = *c_.fixed_edges[e];
        if (f >= dst_.edge_count() || dst_.edge_type(f) != src_.edge_type(e)) return false;
        fixed_e_[e] = f;
        for (auto [sv, dv] : {std::pair{src_.source(e), dst_.source(f)}, std::pair{src_.target(e), dst_.target(f)}}) {
          if (fixed_n_[sv] != kUnset && fixed_n_[sv] != dv) return false;
          fixed_n_[sv] = dv;
        }
      }
    }
    if (inj_) {
      std::vector<char> seen(dst_.node_count(), 0);
      for (Index w : fixed_n_) {
        if (w == kUnset) continue;
        if (seen[w]) return false;
        seen[w] = 1;
      }
      std::vector<char> eseen(dst_.edge_count(), 0);
      for (Index f : fixed_e_) {
        if (f == kUnset) continue;
        if (eseen[f]) return false;
        eseen[f] = 1;
      }
    }

    for (Index e = 0; e < dst_.edge_count(); ++e) {
      dst_edges_[edge_key(dst_.edge_type(e), dst_.source(e), dst_.target(e))].push_back(e);
    }

    // Node order: fixed nodes first, then greedily by connectivity to the
    // already ordered prefix.
    std::vector<char> placed(sn, 0);
    for (Index n = 0; n < sn; ++n) {
      if (fixed_n_[n] != kUnset) {
        order_.push_back(n);
        placed[n] = 1;
      }
    }
    while (order_.size() < sn) {
      Index best = kUnset;
      int best_links = -1;
      for (Index n = 0; n < sn; ++n) {
        if (placed[n]) continue;
        int links = 0;
        for (Index e : src_.out_edges(n)) links += placed[src_.target(e)];
        for (Index e : src_.in_edges(n)) links += placed[src_.source(e)];
        if (links > best_links) {
          best = n;
          best_links = links;
        }
      }
      order_.push_back(best);
      placed[best] = 1;
    }
    std::vector<Index> pos(sn);
    for (Index i = 0; i < sn; ++i) pos[order_[i]] = i;
    groups_.resize(sn);
    std::unordered_map<std::uint64_t, Index> mult;
    for (Index e = 0; e < se; ++e) ++mult[edge_key(src_.edge_type(e), src_.source(e), src_.target(e))];
    for (const auto& [key, m] : mult) {
      Index type = static_cast<Index>(key >> 48);
      Index s = static_cast<Index>((key >> 24) & 0xFFFFFF);
      Index t = static_cast<Index>(key & 0xFFFFFF);
      groups_[std::max(pos[s], pos[t])].push_back({type, s, t, m});
    }
    for (auto& g : groups_) {
      std::sort(g.begin(), g.end(), [](const EdgeGroup& a, const EdgeGroup& b) {
        return std::tie(a.type, a.source, a.target) < std::tie(b.type, b.source, b.target);
      });
    }

    nmap_.assign(sn, kUnset);
    emap_.assign(se, kUnset);
    nused_.assign(dst_.node_count(), 0);
    eused_.assign(dst_.edge_count(), 0);
    return true;
  }

  bool node_feasible(Index v, Index w) const {
    if (src_.node_type(v) != dst_.node_type(w)) return false;
    if (c_.node_filter && !c_.node_filter(v, w)) return false;
    if (inj_) {
      if (nused_[w]) return false;
      if (src_.out_edges(v).size() > dst_.out_edges(w).size()) return false;
      if (src_.in_edges(v).size() > dst_.in_edges(w).size()) return false;
    }
    return true;
  }

  bool groups_feasible(Index position) const {
    for (const auto& g : groups_[position]) {
      auto it = dst_edges_.find(edge_key(g.type, nmap_[g.source], nmap_[g.target]));
      std::size_t avail = it == dst_edges_.end() ? 0 : it->second.size();
      if (avail == 0 || (inj_ && avail < g.multiplicity)) return false;
    }
    return true;
  }

  void assign_node(std::size_t position) {
    if (stop_) return;
    if (position == order_.size()) {
      assign_edge(0);
      return;
    }
    Index v = order_[position];
    auto attempt = [&](Index w) {
      if (!node_feasible(v, w)) return;
      nmap_[v] = w;
      if (inj_) nused_[w] = 1;
      if (groups_feasible(static_cast<Index>(position))) assign_node(position + 1);
      if (inj_) nused_[w] = 0;
      nmap_[v] = kUnset;
    };
    if (fixed_n_[v] != kUnset) {
      attempt(fixed_n_[v]);
      return;
    }
    for (Index w = 0; w < dst_.node_count() && !stop_; ++w) attempt(w);
  }

  void assign_edge(Index e) {
    if (stop_) return;
    if (e == src_.edge_count()) {
      if (!visit_(nmap_, emap_)) stop_ = true;
      return;
    }
    auto it = dst_edges_.find(edge_key(src_.edge_type(e), nmap_[src_.source(e)], nmap_[src_.target(e)]));
    if (it == dst_edges_.end()) return;
    for (Index f : it->second) {
      if (stop_) return;
      if (fixed_e_[e] != kUnset && fixed_e_[e] != f) continue;
      if (inj_ && eused_[f]) continue;
      if (c_.edge_filter && !c_.edge_filter(e, f)) continue;
      emap_[e] = f;
      if (inj_) eused_[f] = 1;
      assign_edge(e + 1);
      if (inj_) eused_[f] = 0;
    }
    emap_[e] = kUnset;
  }

  const TypedGraph& src_;
  const TypedGraph& dst_;
  const SearchConstraints& c_;
  const MorphismVisitor& visit_;
  bool inj_;
  bool stop_ = false;
  std::vector<Index> fixed_n_, fixed_e_;
  std::vector<Index> order_;
  std::vector<std::vector<EdgeGroup>> groups_;
  std::unordered_map<std::uint64_t, std::vector<Index>> dst_edges_;
  std::vector<Index> nmap_, emap_;
  std::vector<char> nused_, eused_;
};

}  // namespace

void search_morphisms(const TypedGraph& src, const TypedGraph& dst, const SearchConstraints& constraints,
                      const MorphismVisitor& visit) {
  Searcher(src, dst, constraints, visit).run();
}

std::vector<GraphMorphism> find_morphisms(const GraphPtr& src, const GraphPtr& dst,
                                          const SearchConstraints& constraints) {
  std::vector<GraphMorphism> out;
  search_morphisms(*src, *dst, constraints, [&](std::span<const Index> n, std::span<const Index> e) {
    out.emplace_back(src, dst, std::vector<Index>(n.begin(), n.end()), std::vector<Index>(e.begin(), e.end()));
    return true;
  });
  return out;
}

std::optional<GraphMorphism> find_morphism(const GraphPtr& src, const GraphPtr& dst,
                                           const SearchConstraints& constraints) {
  std::optional<GraphMorphism> out;
  search_morphisms(*src, *dst, constraints, [&](std::span<const Index> n, std::span<const Index> e) {
    out.emplace(src, dst, std::vector<Index>(n.begin(), n.end()), std::vector<Index>(e.begin(), e.end()));
    return false;
  });
  return out;
}

std::size_t count_morphisms(const GraphPtr& src, const GraphPtr& dst, const SearchConstraints& constraints,
                            std::size_t limit) {
  std::size_t count = 0;
  search_morphisms(*src, *dst, constraints, [&](std::span<const Index>, std::span<const Index>) {
    return ++count < limit;
  });
  return count;
}

bool is_isomorphism(const GraphMorphism& f) { return f.is_isomorphism(); }

std::optional<GraphMorphism> are_isomorphic(const GraphPtr& a, const GraphPtr& b) {
  SearchConstraints c;
  c.bijective = true;
  return find_morphism(a, b, c);
}

std::optional<GraphMorphism> find_isomorphism(const GraphPtr& a, const GraphPtr& b,
                                              std::vector<std::optional<Index>> fixed_nodes,
                                              std::vector<std::optional<Index>> fixed_edges) {
  SearchConstraints c;
  c.bijective = true;
  c.fixed_nodes = std::move(fixed_nodes);
  c.fixed_edges = std::move(fixed_edges);
  return find_morphism(a, b, c);
}

namespace {

std::string padded(std::size_t i, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t x = count > 0 ? count - 1 : 0; x >= 10; x /= 10) ++width;
  std::string s = std::to_string(i);
  return std::string(width - std::min(width, s.size()), '0') + s;
}

}  // namespace

std::pair<GraphPtr, GraphMorphism> canonical_rename(const GraphPtr& g, const std::string& prefix) {
  // Storage order already is (type, id) order.
  GraphData d;
  const std::size_t nn = g->node_count();
  const std::size_t ne = g->edge_count();
  std::vector<std::string> names(nn);
  for (Index n = 0; n < nn; ++n) {
    names[n] = prefix + "_" + padded(n, nn);
    d.node(names[n], g->node_type_name(n));
  }
  for (Index e = 0; e < ne; ++e) {
    d.edge(prefix + "_e" + padded(e, ne), g->edge_type_name(e), names[g->source(e)], names[g->target(e)]);
  }
  auto renamed = make_graph(g->signature(), d);
  // Nodes of one type are numbered consecutively, so indices are preserved.
  std::vector<Index> nm(nn), em(ne);
  for (Index i = 0; i < nn; ++i) nm[i] = i;
  for (Index i = 0; i < ne; ++i) em[i] = i;
  GraphMorphism iso(g, renamed, std::move(nm), std::move(em));
  return {renamed, iso};
}

}  // namespace gcr
