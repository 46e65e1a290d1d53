#include "gcr/composition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "gcr/error.hpp"

namespace gcr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

bool fail(std::string* why, const std::string& reason) {
  if (why) *why = reason;
  return false;
}

bool jointly_surjective(const GraphMorphism& a, const GraphMorphism& b) {
  const TypedGraph& E = *a.codomain();
  std::vector<char> hit_n(E.node_count(), 0), hit_e(E.edge_count(), 0);
  for (const GraphMorphism* f : {&a, &b}) {
    for (Index x : f->node_map()) hit_n[x] = 1;
    for (Index x : f->edge_map()) hit_e[x] = 1;
  }
  return std::find(hit_n.begin(), hit_n.end(), 0) == hit_n.end() &&
         std::find(hit_e.begin(), hit_e.end(), 0) == hit_e.end();
}

GraphMorphism must(std::optional<GraphMorphism> f, const char* what) {
  if (!f) throw Error(std::string("internal: ") + what + " does not exist");
  return std::move(*f);
}

ConditionPtr conjunction(const GraphPtr& root, std::vector<ConditionPtr> parts) {
  std::vector<ConditionPtr> kept;
  for (auto& c : parts) {
    if (!is_trivially_true(c)) kept.push_back(std::move(c));
  }
  if (kept.empty()) return Condition::make_true(root);
  if (kept.size() == 1) return kept.front();
  return Condition::conj(root, std::move(kept));
}

struct Factorization {
  InitialPushoutResult ipo, il, ir;
  GraphMorphism sL, tL, sR, tR;
};

std::optional<Factorization> factorize(const ConcurrentRuleResult& base, const Enhancement& enh, std::string* why) {
  const Rule& cr = base.rule;
  require(same_graph(enh.k_prime.domain(), cr.K()), "enhancement: k' does not start at K");
  require(enh.k_prime.is_m() && enh.l_prime.is_m() && enh.r_prime.is_m(), "enhancement: k', l', r' must be injective");
  require(compose(enh.k_prime, enh.l_prime) == cr.l(), "enhancement: l' ∘ k' differs from l");
  require(compose(enh.k_prime, enh.r_prime) == cr.r(), "enhancement: r' ∘ k' differs from r");

  InitialPushoutResult ipo = initial_pushout(enh.k_prime);
  InitialPushoutResult il = initial_pushout(base.rho1.l());
  InitialPushoutResult ir = initial_pushout(base.rho2.r());

  auto side = [&](const InitialPushoutResult& i, const GraphMorphism& kk, const GraphMorphism& epp,
                  const GraphMorphism& leg, const GraphMorphism& ep,
                  const char* tag) -> std::optional<std::pair<GraphMorphism, GraphMorphism>> {
    auto s = factor_through(compose(ipo.b, kk), compose(i.b, epp));
    if (!s) return fail(why, std::string("boundary of k' does not factor through the boundary on the ") + tag + " side"),
                std::nullopt;
    auto t = factor_through(compose(ipo.c, leg), compose(i.c, ep));
    if (!t) return fail(why, std::string("context of k' does not factor through the context on the ") + tag + " side"),
                std::nullopt;
    if (!is_pullback(i.x, *t, *s, ipo.x)) {
      return fail(why, std::string("factorization square on the ") + tag + " side is not a pullback"), std::nullopt;
    }
    return std::make_pair(std::move(*s), std::move(*t));
  };
  auto left = side(il, base.k1, base.edep.e1pp, enh.l_prime, base.e1p, "left");
  if (!left) return std::nullopt;
  auto right = side(ir, base.k2, base.edep.e2pp, enh.r_prime, base.e2p, "right");
  if (!right) return std::nullopt;
  return Factorization{std::move(ipo), std::move(il), std::move(ir), std::move(left->first),
                       std::move(left->second), std::move(right->first), std::move(right->second)};
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<EDependency> make_e_dependency(const Rule& rho1, const Rule& rho2, const GraphMorphism& e1,
                                             const GraphMorphism& e2, std::string* why) {
  require(same_graph(e1.domain(), rho1.R()), "e_dependency: e1 does not start at R1");
  require(same_graph(e2.domain(), rho2.L()), "e_dependency: e2 does not start at L2");
  require(same_graph(e1.codomain(), e2.codomain()), "e_dependency: e1 and e2 have different codomains");
  if (!e1.is_m() || !e2.is_m()) return fail(why, "e1 or e2 is not injective"), std::nullopt;
  if (!jointly_surjective(e1, e2)) return fail(why, "e1 and e2 are not jointly surjective"), std::nullopt;
  ComplementResult c1 = pushout_complement(rho1.r(), e1);
  if (!c1) return fail(why, "no pushout complement for e1 ∘ r1"), std::nullopt;
  ComplementResult c2 = pushout_complement(rho2.l(), e2);
  if (!c2) return fail(why, "no pushout complement for e2 ∘ l2"), std::nullopt;
  return EDependency{e1, e2, c1.value->d, c1.value->g, c2.value->d, c2.value->g};
}

std::vector<EDependency> enumerate_e_dependencies(const Rule& rho1, const Rule& rho2,
                                                  std::optional<std::size_t> max_nodes) {
  OverlapOptions opt;
  opt.max_nodes = max_nodes;
  std::vector<EDependency> out;
  for (const Overlap& o : jointly_epic_overlaps(rho1.R(), rho2.L(), opt)) {
    if (auto d = make_e_dependency(rho1, rho2, o.into_a, o.into_b)) out.push_back(std::move(*d));
  }
  return out;
}

EDependency e_dependency_of(const TransformationStep& step1, const TransformationStep& step2) {
  const GraphPtr& G1 = step1.H;
  require(same_graph(step2.G(), G1), "e_dependency_of: the second step does not start where the first ends");
  std::vector<char> keep_n(G1->node_count(), 0), keep_e(G1->edge_count(), 0);
  for (const GraphMorphism* f : {&step1.n, &step2.m}) {
    for (Index x : f->node_map()) keep_n[x] = 1;
    for (Index x : f->edge_map()) keep_e[x] = 1;
  }
  GraphMorphism inc = subgraph_inclusion(G1, keep_n, keep_e);
  GraphMorphism e1 = must(factor_through(step1.n, inc), "e1");
  GraphMorphism e2 = must(factor_through(step2.m, inc), "e2");
  std::string why;
  auto d = make_e_dependency(step1.rule, step2.rule, e1, e2, &why);
  if (!d) throw Error("e_dependency_of: " + why);
  return *d;
}

// ---------------------------------------------------------------------------

bool is_common_kernel(const Rule& rho1, const Rule& rho2, const CommonKernel& kn, std::string* why) {
  if (!same_graph(kn.u1.codomain(), rho1.K()) || !same_graph(kn.u2.codomain(), rho2.K()) ||
      !same_graph(kn.v1.codomain(), rho1.L()) || !same_graph(kn.v2.codomain(), rho2.R())) {
    return fail(why, "kernel legs do not end at K1, K2, L1, R2");
  }
  if (!same_graph(kn.u1.domain(), kn.Kcap()) || !same_graph(kn.u2.domain(), kn.Kcap()) ||
      !same_graph(kn.v1.domain(), kn.V()) || !same_graph(kn.v2.domain(), kn.V())) {
    return fail(why, "kernel legs do not start at Kcap and V");
  }
  if (!kn.k.is_m() || !kn.u1.is_m() || !kn.u2.is_m()) return fail(why, "k, u1 or u2 is not injective");
  if (!kn.relaxed && (!kn.v1.is_m() || !kn.v2.is_m())) return fail(why, "v1 or v2 is not injective");
  if (!commutes(kn.k, kn.v1, kn.u1, rho1.l())) return fail(why, "v1 ∘ k differs from l1 ∘ u1");
  if (!commutes(kn.k, kn.v2, kn.u2, rho2.r())) return fail(why, "v2 ∘ k differs from r2 ∘ u2");
  if (!is_pullback(kn.v1, rho1.l(), kn.k, kn.u1)) return fail(why, "square over l1 is not a pullback");
  if (!is_pullback(kn.v2, rho2.r(), kn.k, kn.u2)) return fail(why, "square over r2 is not a pullback");
  return true;
}

bool is_compatible(const Rule& rho1, const Rule& rho2, const CommonKernel& kernel, const EDependency& edep) {
  require(same_graph(kernel.u1.codomain(), rho1.K()) && same_graph(kernel.u2.codomain(), rho2.K()),
          "is_compatible: kernel belongs to another rule pair");
  require(same_graph(edep.e1.domain(), rho1.R()) && same_graph(edep.e2.domain(), rho2.L()),
          "is_compatible: E-dependency belongs to another rule pair");
  return is_pullback(compose(rho1.r(), edep.e1), compose(rho2.l(), edep.e2), kernel.u1, kernel.u2);
}

CommonKernel trivial_kernel(const Rule& rho1, const Rule& rho2, const EDependency& edep) {
  SpanPB pb = pullback(compose(rho1.r(), edep.e1), compose(rho2.l(), edep.e2));
  GraphMorphism v1 = compose(pb.left_leg, rho1.l());
  GraphMorphism v2 = compose(pb.right_leg, rho2.r());
  return CommonKernel{GraphMorphism::identity(pb.apex), pb.left_leg, pb.right_leg, std::move(v1), std::move(v2), false};
}

// ---------------------------------------------------------------------------

Rule ConcurrentRuleResult::intermediate() const {
  return Rule(rule.name() + "'", l1p, edep.r1p);
}

ConcurrentRuleResult concurrent_rule(const Rule& rho1, const Rule& rho2, const EDependency& edep, std::string name) {
  require(same_graph(edep.e1.domain(), rho1.R()) && same_graph(edep.e2.domain(), rho2.L()),
          "concurrent_rule: E-dependency belongs to another rule pair");
  if (name.empty()) name = rho1.name() + "*" + rho2.name();
  CospanPO po_l = pushout(edep.e1pp, rho1.l(), PushoutNaming::keep_left());
  CospanPO po_r = pushout(edep.e2pp, rho2.r(), PushoutNaming::keep_left());
  SpanPB pb = pullback(edep.r1p, edep.l2p);
  GraphMorphism l = compose(pb.left_leg, po_l.left_leg);
  GraphMorphism r = compose(pb.right_leg, po_r.left_leg);

  const GraphPtr& L = po_l.apex;
  ConditionPtr first = shift_along(po_l.right_leg, rho1.ac());
  ConditionPtr second = shift_over_span(po_l.left_leg, edep.r1p, shift_along(edep.e2, rho2.ac()));
  ConditionPtr ac = conjunction(L, {first, second});

  return ConcurrentRuleResult{Rule(std::move(name), std::move(l), std::move(r), std::move(ac)),
                              rho1,
                              rho2,
                              edep,
                              po_l.right_leg,
                              po_l.left_leg,
                              po_r.right_leg,
                              po_r.left_leg,
                              pb.left_leg,
                              pb.right_leg};
}

GraphMorphism extension_morphism(const ConcurrentRuleResult& base, const CommonKernel& kernel) {
  require(is_compatible(base.rho1, base.rho2, kernel, base.edep), "extension_morphism: kernel is not compatible");
  GraphMorphism p = must(induced_into_pullback(base.k1, base.k2, compose(kernel.u1, base.edep.e1pp),
                                               compose(kernel.u2, base.edep.e2pp)),
                         "extension morphism");
  if (!p.is_m()) throw Error("internal: extension morphism is not injective");
  return p;
}

GcrResult gcr(const ConcurrentRuleResult& base, const CommonKernel& kernel, std::string name) {
  std::string why;
  require(is_common_kernel(base.rho1, base.rho2, kernel, &why), "gcr: not a common kernel: " + why);
  GraphMorphism p = extension_morphism(base, kernel);
  CospanPO po = pushout(p, kernel.k, PushoutNaming::keep_left());
  const GraphMorphism& k_prime = po.left_leg;
  const GraphMorphism& p_prime = po.right_leg;
  GraphMorphism l = must(induced_from_pushout(k_prime, p_prime, base.rule.l(), compose(kernel.v1, base.e1p)), "l'");
  GraphMorphism r = must(induced_from_pushout(k_prime, p_prime, base.rule.r(), compose(kernel.v2, base.e2p)), "r'");
  if (!l.is_m()) throw NotARule("l' is not injective");
  if (!r.is_m()) throw NotARule("r' is not injective");
  if (name.empty()) name = base.rho1.name() + "*" + base.rho2.name() + "[k]";
  Rule rule(std::move(name), std::move(l), std::move(r), base.rule.ac());
  return GcrResult{std::move(rule), base, kernel, std::move(p), p_prime, k_prime};
}

// ---------------------------------------------------------------------------

namespace {

void check_shortcut_input(const Rule& r1, const Rule& r2, const CommonKernel& kn) {
  require(r1.is_plain() && r2.is_plain(), "shortcut_rule: rules must be plain");
  require(r1.is_monotonic() && r2.is_monotonic(), "shortcut_rule: rules must be monotonic");
  require(same_graph(kn.u1.codomain(), r1.K()) && same_graph(kn.u2.codomain(), r2.K()) &&
              same_graph(kn.v1.codomain(), r1.R()) && same_graph(kn.v2.codomain(), r2.R()),
          "shortcut_rule: kernel does not embed into the given rules");
  require(kn.k.is_m() && kn.u1.is_m() && kn.u2.is_m() && kn.v1.is_m() && kn.v2.is_m(),
          "shortcut_rule: kernel morphisms must be injective");
  require(is_pullback(kn.v1, r1.r(), kn.k, kn.u1) && is_pullback(kn.v2, r2.r(), kn.k, kn.u2),
          "shortcut_rule: kernel squares are not pullbacks");
}

}  // namespace

Rule shortcut_rule(const Rule& r1, const Rule& r2, const CommonKernel& kn, std::string name) {
  check_shortcut_input(r1, r2, kn);
  // K_i stands in for L_i: l_i is an isomorphism.
  CospanPO cup = pushout(kn.u1, kn.u2, PushoutNaming::keep_left());
  CospanPO lhs = pushout(cup.left_leg, r1.r(), PushoutNaming::keep_left());
  CospanPO rhs = pushout(cup.right_leg, r2.r(), PushoutNaming::keep_left());
  CospanPO itf = pushout(compose(kn.u1, cup.left_leg), kn.k, PushoutNaming::keep_left());
  GraphMorphism l = must(induced_from_pushout(itf.left_leg, itf.right_leg, lhs.left_leg, compose(kn.v1, lhs.right_leg)), "l");
  GraphMorphism r = must(induced_from_pushout(itf.left_leg, itf.right_leg, rhs.left_leg, compose(kn.v2, rhs.right_leg)), "r");
  if (!l.is_m()) throw NotARule("l is not injective");
  if (!r.is_m()) throw NotARule("r is not injective");
  if (name.empty()) name = r1.name() + "^-1*" + r2.name() + "[k]";
  return Rule(std::move(name), std::move(l), std::move(r));
}

EDependency shortcut_dependency(const Rule& r1, const Rule& r2, const CommonKernel& kn) {
  check_shortcut_input(r1, r2, kn);
  CospanPO cup = pushout(kn.u1, kn.u2, PushoutNaming::keep_left());
  GraphMorphism e1 = compose(inverse(r1.l()), cup.left_leg);
  GraphMorphism e2 = compose(inverse(r2.l()), cup.right_leg);
  std::string why;
  auto d = make_e_dependency(invert(r1), r2, e1, e2, &why);
  if (!d) throw Error("shortcut_dependency: " + why);
  return *d;
}

// ---------------------------------------------------------------------------

bool is_appropriately_enhancing(const ConcurrentRuleResult& base, const Enhancement& enh, std::string* why) {
  return factorize(base, enh, why).has_value();
}

GcrResult gcr_from_enhancement(const ConcurrentRuleResult& base, const Enhancement& enh, std::string name) {
  std::string why;
  auto f = factorize(base, enh, &why);
  require(f.has_value(), "gcr_from_enhancement: not appropriately enhancing: " + why);
  const Rule& rho1 = base.rho1;
  const Rule& rho2 = base.rho2;
  SpanPB cap = pullback(compose(rho1.r(), base.edep.e1), compose(rho2.l(), base.edep.e2));
  GraphMorphism b = must(induced_into_pullback(cap.left_leg, cap.right_leg, compose(f->sL, f->il.b),
                                               compose(f->sR, f->ir.b)),
                         "boundary morphism into Kcap");
  CospanPO po = pushout(b, f->ipo.x, PushoutNaming::keep_left());
  GraphMorphism v1 = must(induced_from_pushout(po.left_leg, po.right_leg, compose(cap.left_leg, rho1.l()),
                                               compose(f->tL, f->il.c)),
                          "v1");
  GraphMorphism v2 = must(induced_from_pushout(po.left_leg, po.right_leg, compose(cap.right_leg, rho2.r()),
                                               compose(f->tR, f->ir.c)),
                          "v2");
  CommonKernel kernel{po.left_leg, cap.left_leg, cap.right_leg, std::move(v1), std::move(v2), false};
  return gcr(base, kernel, std::move(name));
}

std::vector<Enhancement> enumerate_enhancements(const ConcurrentRuleResult& base, bool deleted_and_created_only) {
  const Rule& cr = base.rule;
  const TypedGraph& L = *cr.L();
  const TypedGraph& R = *cr.R();
  const TypedGraph& K = *cr.K();

  // Free elements: outside the image of K, optionally restricted further.
  auto free_set = [](const TypedGraph& G, const GraphMorphism& from_k, const GraphMorphism* side,
                     const GraphMorphism* side_k) {
    std::vector<char> fn(G.node_count(), 1), fe(G.edge_count(), 1);
    for (Index x : from_k.node_map()) fn[x] = 0;
    for (Index x : from_k.edge_map()) fe[x] = 0;
    if (side) {
      std::vector<char> rn(G.node_count(), 0), re(G.edge_count(), 0);
      std::vector<char> kn(side->domain()->node_count(), 0), ke(side->domain()->edge_count(), 0);
      for (Index x : side_k->node_map()) kn[x] = 1;
      for (Index x : side_k->edge_map()) ke[x] = 1;
      for (Index x = 0; x < kn.size(); ++x) rn[side->node(x)] = !kn[x];
      for (Index x = 0; x < ke.size(); ++x) re[side->edge(x)] = !ke[x];
      for (Index x = 0; x < fn.size(); ++x) fn[x] = fn[x] && rn[x];
      for (Index x = 0; x < fe.size(); ++x) fe[x] = fe[x] && re[x];
    }
    return std::make_pair(fn, fe);
  };
  auto [lfn, lfe] = free_set(L, cr.l(), deleted_and_created_only ? &base.e1p : nullptr, &base.rho1.l());
  auto [rfn, rfe] = free_set(R, cr.r(), deleted_and_created_only ? &base.e2p : nullptr, &base.rho2.r());

  constexpr Index none = static_cast<Index>(-1);
  // Images of K nodes on both sides, to check edge endpoints.
  std::vector<Index> l_to_k(L.node_count(), none);
  for (Index k = 0; k < K.node_count(); ++k) l_to_k[cr.l().node(k)] = k;
  std::vector<Index> node_match(L.node_count(), none), edge_match(L.edge_count(), none);
  std::vector<char> r_used_n(R.node_count(), 0), r_used_e(R.edge_count(), 0);

  std::vector<Index> lnodes, ledges;
  for (Index x = 0; x < L.node_count(); ++x) {
    if (lfn[x]) lnodes.push_back(x);
  }
  for (Index x = 0; x < L.edge_count(); ++x) {
    if (lfe[x]) ledges.push_back(x);
  }

  auto endpoint_ok = [&](Index ln, Index rn) {
    if (l_to_k[ln] != none) return cr.r().node(l_to_k[ln]) == rn;
    return node_match[ln] == rn;
  };

  std::vector<Enhancement> out;
  auto emit = [&]() {
    GraphData d = K.data();
    std::map<std::string, std::string> ln, le, rn, re;
    for (Index k = 0; k < K.node_count(); ++k) {
      ln[K.node_id(k)] = L.node_id(cr.l().node(k));
      rn[K.node_id(k)] = R.node_id(cr.r().node(k));
    }
    for (Index k = 0; k < K.edge_count(); ++k) {
      le[K.edge_id(k)] = L.edge_id(cr.l().edge(k));
      re[K.edge_id(k)] = R.edge_id(cr.r().edge(k));
    }
    std::set<std::string> taken;
    for (Index k = 0; k < K.node_count(); ++k) taken.insert(K.node_id(k));
    for (Index k = 0; k < K.edge_count(); ++k) taken.insert(K.edge_id(k));
    auto fresh = [&](std::string id) {
      std::string base_id = id;
      for (int i = 2; taken.count(id); ++i) id = base_id + "." + std::to_string(i);
      taken.insert(id);
      return id;
    };
    std::vector<std::string> new_node(L.node_count());
    auto k_prime_node = [&](Index x) { return l_to_k[x] != none ? K.node_id(l_to_k[x]) : new_node[x]; };
    for (Index x : lnodes) {
      if (node_match[x] == none) continue;
      std::string id = fresh(L.node_id(x) + "|" + R.node_id(node_match[x]));
      new_node[x] = id;
      d.node(id, L.node_type_name(x));
      ln[id] = L.node_id(x);
      rn[id] = R.node_id(node_match[x]);
    }
    for (Index x : ledges) {
      if (edge_match[x] == none) continue;
      std::string id = fresh(L.edge_id(x) + "|" + R.edge_id(edge_match[x]));
      d.edge(id, L.edge_type_name(x), k_prime_node(L.source(x)), k_prime_node(L.target(x)));
      le[id] = L.edge_id(x);
      re[id] = R.edge_id(edge_match[x]);
    }
    GraphPtr Kp = make_graph(K.signature(), d);
    out.push_back(Enhancement{GraphMorphism::inclusion(cr.K(), Kp), GraphMorphism::from_ids(Kp, cr.L(), ln, le),
                              GraphMorphism::from_ids(Kp, cr.R(), rn, re)});
  };

  std::function<void(std::size_t)> edges = [&](std::size_t i) {
    if (i == ledges.size()) return emit();
    Index x = ledges[i];
    edges(i + 1);
    for (Index y = 0; y < R.edge_count(); ++y) {
      if (!rfe[y] || r_used_e[y] || R.edge_type(y) != L.edge_type(x)) continue;
      if (!endpoint_ok(L.source(x), R.source(y)) || !endpoint_ok(L.target(x), R.target(y))) continue;
      r_used_e[y] = 1;
      edge_match[x] = y;
      edges(i + 1);
      edge_match[x] = none;
      r_used_e[y] = 0;
    }
  };
  std::function<void(std::size_t)> nodes = [&](std::size_t i) {
    if (i == lnodes.size()) return edges(0);
    Index x = lnodes[i];
    nodes(i + 1);
    for (Index y = 0; y < R.node_count(); ++y) {
      if (!rfn[y] || r_used_n[y] || R.node_type(y) != L.node_type(x)) continue;
      r_used_n[y] = 1;
      node_match[x] = y;
      nodes(i + 1);
      node_match[x] = none;
      r_used_n[y] = 0;
    }
  };
  nodes(0);
  return out;
}

std::vector<GcrResult> enumerate_gcrs(const ConcurrentRuleResult& base) {
  std::vector<GcrResult> out;
  std::string stem = base.rho1.name() + "*" + base.rho2.name() + "[k]";
  for (const Enhancement& e : enumerate_enhancements(base, true)) {
    std::string name = out.empty() ? stem : stem + "_" + std::to_string(out.size());
    out.push_back(gcr_from_enhancement(base, e, std::move(name)));
  }
  return out;
}

std::vector<CommonKernel> enumerate_kernels(const ConcurrentRuleResult& base) {
  std::vector<CommonKernel> out;
  for (GcrResult& g : enumerate_gcrs(base)) out.push_back(std::move(g.kernel));
  return out;
}

std::uint64_t count_gcrs_discrete(std::uint64_t n1, std::uint64_t n2) {
  auto choose = [](std::uint64_t n, std::uint64_t k) {
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
  };
  std::uint64_t total = 0, fact = 1;
  for (std::uint64_t i = 0; i <= std::min(n1, n2); ++i) {
    if (i > 0) fact *= i;
    total += fact * choose(n1, i) * choose(n2, i);
  }
  return total;
}

}  // namespace gcr
