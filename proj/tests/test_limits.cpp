#include <functional>
#include <set>

#include "doctest.h"
#include "gcr/corpus.hpp"
#include "gcr/error.hpp"
#include "gcr/limits.hpp"
#include "gcr/oracle.hpp"
#include "gcr/search.hpp"
#include "checks.hpp"
#include "support.hpp"

using namespace testing;
using corpus::Rng;


TEST_CASE("pushout examples") {
  auto A = classes({"n"});
  auto B = classes({"n", "b"}, {{"e1", "ref", "n", "b"}});
  auto C = classes({"n", "c"}, {{"e2", "ref", "c", "n"}});
  auto f = incl(A, B);
  auto g = incl(A, C);
  auto po = pushout(f, g);
  CHECK(po.apex->node_count() == 3);
  CHECK(po.apex->edge_count() == 2);
  CHECK(oracle::check_pushout(f, g, po.left_leg, po.right_leg));
  CHECK(po.node_provenance[po.left_leg.node(*B->find_node("n"))].size() == 2);

  auto id = pushout(f, GraphMorphism::identity(A));
  CHECK(are_isomorphic(id.apex, B));
  CHECK(id.left_leg.is_isomorphism());

  auto canon = pushout(f, g, PushoutNaming::canonical("P"));
  CHECK(canon.apex->node_id(0) == "P_0");
  CHECK(oracle::check_pushout(f, g, canon.left_leg, canon.right_leg));

  auto loop = classes({"x"}, {{"l", "ref", "x", "x"}});
  auto edge = classes({"a", "b"}, {{"e", "ref", "a", "b"}});
  auto collapse = map(edge, loop, {{"a", "x"}, {"b", "x"}}, {{"e", "l"}});
  CHECK_THROWS_AS(pushout(collapse, collapse), PreconditionError);
  // One M leg suffices; the other may merge.
  auto merged = pushout(GraphMorphism::identity(edge), collapse);
  CHECK(merged.apex->node_count() == 1);
  CHECK(oracle::check_pushout(GraphMorphism::identity(edge), collapse, merged.left_leg, merged.right_leg));
}

TEST_CASE("pullback examples") {
  auto B = classes({"1", "2"});
  auto one = classes({"1"});
  auto two = classes({"2"});
  auto pb = pullback(incl(one, B), incl(two, B));
  CHECK(pb.apex->empty());

  auto same = pullback(incl(one, B), GraphMorphism::identity(B));
  CHECK(are_isomorphic(same.apex, one));

  // Two embeddings of an edge 1->3 into removeMiddleMan's LHS agreeing on 1, 3.
  auto L1 = classes({"1", "2", "3"}, {{"a", "ref", "1", "2"}, {"b", "ref", "2", "3"}});
  auto ext = classes({"1", "2", "3", "x"}, {{"a", "ref", "1", "2"}, {"b", "ref", "2", "3"}, {"c", "ref", "1", "3"}});
  auto e13 = classes({"1", "3"}, {{"c", "ref", "1", "3"}});
  auto e13b = classes({"p", "q"}, {{"d", "ref", "p", "q"}});
  auto f = incl(e13, ext);
  auto g = map(e13b, ext, {{"p", "1"}, {"q", "3"}}, {{"d", "c"}});
  auto pb2 = pullback(f, g);
  CHECK(pb2.apex->node_count() == 2);
  CHECK(pb2.apex->edge_count() == 1);
  CHECK(oracle::check_pullback(f, g, pb2.left_leg, pb2.right_leg));
  CHECK(pb2.left_leg.is_m());
  CHECK(pb2.right_leg.is_m());
  (void)L1;
}

TEST_CASE("pushout complement examples") {
  auto L = classes({"1", "2", "3"}, {{"a", "ref", "1", "2"}, {"b", "ref", "2", "3"}});
  auto K = classes({"1", "3"});
  auto l = incl(K, L);
  auto G = classes({"1", "2", "3", "4"}, {{"a", "ref", "1", "2"}, {"b", "ref", "2", "3"}, {"c", "ref", "3", "4"}});
  auto m = incl(L, G);
  auto pc = pushout_complement(l, m);
  REQUIRE(pc);
  CHECK(pc.value->D->node_count() == 3);
  CHECK(pc.value->D->edge_count() == 1);
  CHECK_FALSE(pc.value->D->find_node("2"));
  CHECK(oracle::check_pushout(l, pc.value->d, m, pc.value->g));

  auto same = pushout_complement(GraphMorphism::identity(L), m);
  REQUIRE(same);
  CHECK(*same.value->D == *G);

  auto v = classes({"v"});
  auto vloop = classes({"v"}, {{"loop", "ref", "v", "v"}});
  auto dang = pushout_complement(GraphMorphism::from_empty(empty_graph(class_signature()), v), incl(v, vloop));
  CHECK_FALSE(dang);
  REQUIRE(dang.dangling.size() == 1);
  CHECK(dang.dangling[0] == DanglingWitness{"v", "loop"});

  auto loop_edge = classes({"a", "b"}, {{"e", "ref", "a", "b"}});
  auto collapse = map(loop_edge, vloop, {{"a", "v"}, {"b", "v"}}, {{"e", "loop"}});
  CHECK_THROWS_AS(pushout_complement(incl(classes({"a"}), loop_edge), collapse), PreconditionError);
}

TEST_CASE("initial pushout examples") {
  auto A = classes({"n"});
  auto B = classes({"n", "m"}, {{"e", "ref", "n", "m"}});
  auto ipo = initial_pushout(incl(A, B));
  CHECK(ipo.boundary->node_count() == 1);
  CHECK(ipo.boundary->node_id(0) == "n");
  CHECK(*ipo.context == *B);
  CHECK(oracle::check_initial_pushout(incl(A, B), ipo));

  auto iso = initial_pushout(GraphMorphism::identity(B));
  CHECK(iso.boundary->empty());
  CHECK(iso.context->empty());
  CHECK(oracle::check_initial_pushout(GraphMorphism::identity(B), iso));
}

TEST_CASE("jointly epic overlaps") {
  auto node = classes({"x"});
  CHECK(jointly_epic_overlaps(node, classes({"y"})).size() == 2);
  CHECK(jointly_epic_overlaps(empty_graph(class_signature()), node).size() == 1);
  auto e1 = classes({"a", "b"}, {{"e", "ref", "a", "b"}});
  auto e2 = classes({"c", "d"}, {{"f", "ref", "c", "d"}});
  auto ovs = jointly_epic_overlaps(e1, e2);
  // Frozen from the partition oracle below: 7 node matchings plus the one
  // that also identifies the edges.
  CHECK(ovs.size() == 8);
  for (const auto& ov : ovs) {
    CHECK(ov.into_a.is_m());
    CHECK(ov.into_b.is_m());
  }
  OverlapOptions cap;
  cap.max_nodes = 2;
  CHECK(jointly_epic_overlaps(e1, e2, cap).size() == 3);
}

namespace {

// Counts jointly surjective injective cospans a -> E <- b by enumerating
// set partitions of the disjoint union directly.
std::size_t partition_count(const GraphPtr& a, const GraphPtr& b) {
  const std::size_t na = a->node_count(), nb = b->node_count();
  const std::size_t ea = a->edge_count(), eb = b->edge_count();
  std::vector<Index> nblock(na + nb), eblock(ea + eb);
  std::size_t count = 0;
  auto node_type = [&](Index x) { return x < na ? a->node_type(x) : b->node_type(x - na); };
  auto edge_type = [&](Index x) { return x < ea ? a->edge_type(x) : b->edge_type(x - ea); };
  auto src = [&](Index x) { return x < ea ? nblock[a->source(x)] : nblock[na + b->source(x - ea)]; };
  auto tgt = [&](Index x) { return x < ea ? nblock[a->target(x)] : nblock[na + b->target(x - ea)]; };
  std::function<void(Index, Index)> edges = [&](Index x, Index blocks) {
    if (x == ea + eb) {
      ++count;
      return;
    }
    for (Index k = 0; k <= blocks; ++k) {
      bool ok = true;
      for (Index y = 0; y < x && ok; ++y) {
        if (eblock[y] != k) continue;
        if ((y < ea) == (x < ea)) ok = false;  // two edges from the same side
        if (edge_type(y) != edge_type(x) || src(y) != src(x) || tgt(y) != tgt(x)) ok = false;
      }
      if (!ok) continue;
      eblock[x] = k;
      edges(x + 1, k == blocks ? blocks + 1 : blocks);
    }
  };
  std::function<void(Index, Index)> nodes = [&](Index x, Index blocks) {
    if (x == na + nb) {
      edges(0, 0);
      return;
    }
    for (Index k = 0; k <= blocks; ++k) {
      bool ok = true;
      for (Index y = 0; y < x && ok; ++y) {
        if (nblock[y] != k) continue;
        if ((y < na) == (x < na) || node_type(y) != node_type(x)) ok = false;
      }
      if (!ok) continue;
      nblock[x] = k;
      nodes(x + 1, k == blocks ? blocks + 1 : blocks);
    }
  };
  nodes(0, 0);
  return count;
}

bool cospan_iso(const Overlap& x, const GraphMorphism& fa, const GraphMorphism& fb) {
  // fa, fb are jointly surjective onto their common codomain.
  auto u = induced_from_pushout(x.into_a, x.into_b, fa, fb);
  return u && u->is_isomorphism();
}

}  // namespace

TEST_CASE("overlap enumeration against partitions and factorizations") {
  Rng rng(101);
  auto e1 = classes({"a", "b"}, {{"e", "ref", "a", "b"}});
  auto e2 = classes({"c", "d"}, {{"f", "ref", "c", "d"}});
  CHECK(partition_count(e1, e2) == 8);
  for (int round = 0; round < 60; ++round) {
    auto a = corpus::random_graph(rng, 3, 3, "a");
    auto b = corpus::random_graph(rng, 3, 3, "b");
    auto ovs = jointly_epic_overlaps(a, b);
    REQUIRE(ovs.size() == partition_count(a, b));
    // Pairwise non-isomorphic as cospans.
    for (std::size_t i = 0; i < ovs.size() && ovs.size() < 60; ++i) {
      for (std::size_t j = i + 1; j < ovs.size(); ++j) {
        CHECK_FALSE(cospan_iso(ovs[i], ovs[j].into_a, ovs[j].into_b));
      }
    }
    // Every injective cospan into a host factors through one of them.
    auto G = corpus::random_graph(rng, 6, 8, "g");
    auto fas = enumerate_morphisms(a, G, true);
    auto fbs = enumerate_morphisms(b, G, true);
    for (int k = 0; k < 4 && !fas.empty() && !fbs.empty(); ++k) {
      const auto& fa = fas[rng() % fas.size()];
      const auto& fb = fbs[rng() % fbs.size()];
      std::vector<char> kn(G->node_count(), 0), ke(G->edge_count(), 0);
      for (Index x : fa.node_map()) kn[x] = 1;
      for (Index x : fb.node_map()) kn[x] = 1;
      for (Index x : fa.edge_map()) ke[x] = 1;
      for (Index x : fb.edge_map()) ke[x] = 1;
      auto image = subgraph_inclusion(G, kn, ke);
      auto ea = corestrict(fa, image), eb = corestrict(fb, image);
      int hits = 0;
      for (const auto& ov : ovs) hits += cospan_iso(ov, ea, eb);
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("pushout and pullback oracles on random instances") {
  Rng rng(202);
  int pushouts = 0, pullbacks = 0;
  for (int round = 0; round < 200; ++round) {
    auto A = corpus::random_graph(rng, 3, 2, "a");
    auto f = corpus::random_extension(rng, A, 2, 2, "b");
    auto C = corpus::random_graph(rng, 4, 4, "c");
    auto gs = enumerate_morphisms(A, C, false);
    if (gs.empty()) continue;
    const auto& g = gs[rng() % gs.size()];
    auto po = pushout(f, g);
    std::string why;
    CHECK_MESSAGE(oracle::check_pushout(f, g, po.left_leg, po.right_leg, &why), why);
    CHECK(is_pushout(f, g, po.left_leg, po.right_leg));
    // Pushouts along M are pullbacks.
    CHECK_MESSAGE(oracle::check_pullback(po.left_leg, po.right_leg, f, g, &why), why);
    for (std::size_t i = 0; i < po.node_provenance.size(); ++i) CHECK_FALSE(po.node_provenance[i].empty());
    for (std::size_t i = 0; i < po.edge_provenance.size(); ++i) CHECK_FALSE(po.edge_provenance[i].empty());
    ++pushouts;

    auto D = corpus::random_graph(rng, 4, 5, "d");
    auto B2 = corpus::random_graph(rng, 3, 3, "x");
    auto C2 = corpus::random_graph(rng, 3, 3, "y");
    auto fs = enumerate_morphisms(B2, D, false);
    auto hs = enumerate_morphisms(C2, D, false);
    if (fs.empty() || hs.empty()) continue;
    const auto& fb = fs[rng() % fs.size()];
    const auto& hc = hs[rng() % hs.size()];
    auto pb = pullback(fb, hc);
    CHECK_MESSAGE(oracle::check_pullback(fb, hc, pb.left_leg, pb.right_leg, &why), why);
    CHECK(is_pullback(fb, hc, pb.left_leg, pb.right_leg));
    if (fb.is_m()) CHECK(pb.right_leg.is_m());
    if (hc.is_m()) CHECK(pb.left_leg.is_m());
    ++pullbacks;
  }
  CHECK(pushouts >= 60);
  CHECK(pullbacks >= 40);
}

TEST_CASE("oracles reject wrong squares") {
  auto A = classes({"n"});
  auto B = classes({"n", "b"}, {{"e1", "ref", "n", "b"}});
  auto f = incl(A, B);
  // B itself with two copies glued wrongly: P = B + extra node is not a pushout.
  auto P = classes({"n", "b", "z"}, {{"e1", "ref", "n", "b"}});
  CHECK_FALSE(oracle::check_pushout(f, GraphMorphism::identity(A), incl(B, P), incl(A, P)));
  CHECK_FALSE(is_pushout(f, GraphMorphism::identity(A), incl(B, P), incl(A, P)));
  auto two = classes({"1", "2"});
  auto pb = pullback(GraphMorphism::identity(two), GraphMorphism::identity(two));
  auto one = classes({"1"});
  CHECK_FALSE(oracle::check_pullback(GraphMorphism::identity(two), GraphMorphism::identity(two), incl(one, two),
                                     incl(one, two)));
  CHECK(oracle::check_pullback(GraphMorphism::identity(two), GraphMorphism::identity(two), pb.left_leg, pb.right_leg));
}

TEST_CASE("pushout complements: existence, oracle and uniqueness") {
  Rng rng(303);
  int existing = 0, dangling = 0;
  for (int round = 0; round < 120; ++round) {
    auto K = corpus::random_graph(rng, 2, 1, "k");
    auto l = corpus::random_extension(rng, K, 2, 2, "l");
    auto m = corpus::random_extension(rng, l.codomain(), 2, 3, "g");
    auto pc = pushout_complement(l, m);
    auto brute = oracle::brute_force_complements(l, m);
    CHECK(brute.empty() == !pc.value.has_value());
    if (pc) {
      ++existing;
      CHECK(oracle::check_pushout(l, pc.value->d, m, pc.value->g));
      for (const auto& other : brute) CHECK(are_isomorphic(other.D, pc.value->D));
    } else {
      ++dangling;
      CHECK_FALSE(pc.dangling.empty());
    }
  }
  CHECK(existing >= 30);
  CHECK(dangling >= 10);
}

TEST_CASE("initial pushouts: initiality and closure") {
  Rng rng(404);
  for (int round = 0; round < 60; ++round) {
    auto A = corpus::random_graph(rng, 3, 2, "a");
    auto a = corpus::random_extension(rng, A, 2, 3, "b");
    auto ipo = initial_pushout(a);
    std::string why;
    REQUIRE_MESSAGE(oracle::check_initial_pushout(a, ipo, &why), why);

    // Closure: compose with a pushout along a and an M-morphism m.
    auto m = corpus::random_extension(rng, A, 1, 2, "d");
    auto po = pushout(m, a);  // left leg d: D -> B', right leg m': B -> B'
    const GraphMorphism& d = po.left_leg;
    InitialPushoutResult composed{ipo.boundary, ipo.context, compose(ipo.b, m), ipo.x, compose(ipo.c, po.right_leg)};
    CHECK_MESSAGE(oracle::check_initial_pushout(d, composed, &why), why);
    auto direct = initial_pushout(d);
    CHECK(are_isomorphic(direct.boundary, ipo.boundary));
    CHECK(are_isomorphic(direct.context, ipo.context));
  }
}

TEST_CASE("M pushout-pullback decomposition") {
  Rng rng(505);
  int checked = 0;
  for (int round = 0; round < 80; ++round) {
    auto A = corpus::random_graph(rng, 2, 1, "a");
    auto rk = corpus::random_extension(rng, A, 2, 2, "e");  // A -> E
    auto l = corpus::random_extension(rng, A, 2, 2, "c");   // A -> C, in M
    auto outer = pushout(rk, l);                            // v: E -> F, u': C -> F
    const GraphMorphism& v = outer.left_leg;
    const GraphMorphism& u2 = outer.right_leg;
    auto w = random_subgraph_containing(rng, u2);           // D -> F, contains u'(C)
    auto u = corestrict(u2, w);                             // C -> D
    // B = preimage of D in E, so that square (2) is a pullback.
    auto pb = pullback(v, w);
    const GraphMorphism& r = pb.left_leg;                   // B -> E
    const GraphMorphism& s = pb.right_leg;                  // B -> D
    auto k = *induced_into_pullback(r, s, rk, compose(l, u));
    REQUIRE(oracle::check_pushout(compose(k, r), l, v, compose(u, w)));
    CHECK(oracle::check_pushout(k, l, s, u));
    CHECK(oracle::check_pullback(s, u, k, l));
    CHECK(oracle::check_pushout(r, s, v, w));
    CHECK(oracle::check_pullback(v, w, r, s));
    ++checked;
  }
  CHECK(checked >= 60);
}

TEST_CASE("M pullback-pushout decomposition") {
  Rng rng(606);
  int checked = 0;
  for (int round = 0; round < 200 && checked < 40; ++round) {
    auto A = corpus::random_graph(rng, 2, 1, "a");
    auto k = corpus::random_extension(rng, A, 2, 2, "b");
    auto l = corpus::random_extension(rng, A, 1, 1, "c");
    auto inner = pushout(k, l);  // s: B -> D, u: C -> D
    const GraphMorphism& s = inner.left_leg;
    const GraphMorphism& u = inner.right_leg;
    auto w = corpus::random_extension(rng, s.codomain(), 1, 2, "f");  // D -> F
    // E: a subgraph of F containing w(s(B)), v its inclusion.
    auto ws = compose(s, w);
    auto v = random_subgraph_containing(rng, ws);
    auto r = corestrict(ws, v);
    // Keep only instances where (1)+(2) is a pullback.
    if (!is_pullback(v, compose(u, w), compose(k, r), l)) continue;
    CHECK(oracle::check_pullback(v, w, r, s));
    ++checked;
  }
  CHECK(checked >= 20);
}
