#include "doctest.h"
#include "gcr/corpus.hpp"
#include "gcr/error.hpp"
#include "gcr/search.hpp"
#include "running_example.hpp"

using namespace testing;
using corpus::Rng;

namespace {

// Structural recursion check: Not/And/Or map to the same connective, an
// Exists maps to an Exists, an Or, or false.
bool follows_shape(const ConditionPtr& in, const ConditionPtr& out) {
  using K = Condition::Kind;
  if (in->kind() == K::Exists) {
    return out->kind() == K::Exists || out->kind() == K::Or || out->is_false();
  }
  if (in->kind() != out->kind() || in->children().size() != out->children().size()) return false;
  for (std::size_t i = 0; i < in->children().size(); ++i) {
    if (!follows_shape(in->children()[i], out->children()[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("satisfaction examples") {
  auto sig = class_signature();
  auto empty = empty_graph(sig);
  auto node = classes({"x"});
  CHECK(satisfies(GraphMorphism::identity(node), Condition::make_true(node)));

  auto has_node = Condition::exists(GraphMorphism::from_empty(empty, node));
  CHECK(satisfies(GraphMorphism::from_empty(empty, classes({"h"})), has_node));
  CHECK_FALSE(satisfies(GraphMorphism::identity(empty), has_node));
  CHECK_FALSE(satisfies(GraphMorphism::identity(empty), Condition::make_false(empty)));

  auto ex = running_example();
  const auto& L = ex.ref2gen_gcr.L();
  auto Lplus = classes({"1", "2", "3", "x"},
                       {{"r12", "ref", "1", "2"}, {"r23", "ref", "2", "3"}, {"out", "ref", "2", "x"}});
  auto nac = Condition::negate(Condition::exists(incl(L, Lplus)));
  auto clean = chain_host(false);
  auto busy = classes({"a", "b", "c", "d"}, {{"ab", "ref", "a", "b"}, {"bc", "ref", "b", "c"}, {"bd", "ref", "b", "d"}});
  auto m = map(L, busy, {{"1", "a"}, {"2", "b"}, {"3", "c"}}, {{"r12", "ab"}, {"r23", "bc"}});
  CHECK_FALSE(satisfies(m, nac));
  auto m2 = map(L, clean, {{"1", "a"}, {"2", "b"}, {"3", "c"}}, {{"r12", "ab"}, {"r23", "bc"}});
  CHECK(satisfies(m2, nac));

  // Root mismatch and strictness.
  CHECK_THROWS_AS(satisfies(m2, Condition::make_true(node)), PreconditionError);
  auto edge = classes({"a", "b"}, {{"e", "ref", "a", "b"}});
  auto loop = classes({"x"}, {{"l", "ref", "x", "x"}});
  auto collapse = map(edge, loop, {{"a", "x"}, {"b", "x"}}, {{"e", "l"}});
  CHECK_THROWS_AS(satisfies(collapse, Condition::make_true(edge)), PreconditionError);
  CHECK(satisfies(collapse, Condition::make_true(edge), false));
}

TEST_CASE("condition structure") {
  auto node = classes({"x"});
  auto two = classes({"x", "y"});
  CHECK_THROWS_AS(Condition::exists(incl(node, two), Condition::make_true(node)), PreconditionError);
  CHECK_THROWS_AS(Condition::conj(node, {Condition::make_true(two)}), PreconditionError);
  CHECK(Condition::disj(node, {})->is_false());
  auto c = Condition::exists(incl(node, two), Condition::negate(Condition::make_true(two)));
  CHECK(depth(c) == 1);
  CHECK(depth(Condition::conj(node, {c, Condition::make_true(node)})) == 1);
  CHECK(is_trivially_true(Condition::conj(node, {Condition::make_true(node), Condition::make_true(node)})));
  CHECK_FALSE(is_trivially_true(c));
}

TEST_CASE("shift along morphism examples") {
  auto node = classes({"x"});
  auto two = classes({"x", "y"});
  auto b = incl(node, two);
  CHECK(shift_along(b, Condition::make_true(node))->kind() == Condition::Kind::True);

  auto looped = classes({"x"}, {{"l", "ref", "x", "x"}});
  auto c = Condition::exists(incl(node, looped));
  auto s = shift_along(b, c);
  // The loop can only sit on the image of x.
  REQUIRE(s->kind() == Condition::Kind::Or);
  CHECK(s->children().size() == 1);

  auto empty = empty_graph(class_signature());
  auto c0 = Condition::exists(GraphMorphism::from_empty(empty, looped));
  auto s0 = shift_along(GraphMorphism::from_empty(empty, two), c0);
  // Loop on x, loop on y, or on a third node.
  REQUIRE(s0->kind() == Condition::Kind::Or);
  CHECK(s0->children().size() == 3);

  for (const auto& host : {two, classes({"x", "y"}, {{"l", "ref", "y", "y"}}), classes({"x", "y", "z"}, {{"l", "ref", "z", "z"}})}) {
    for (const auto& g : enumerate_morphisms(two, host, true)) {
      CHECK(satisfies(g, s0) == satisfies(compose(GraphMorphism::from_empty(empty, two), g), c0));
      CHECK(satisfies(g, s) == satisfies(compose(b, g), c));
    }
  }
}

TEST_CASE("shift correctness on the corpus") {
  Rng rng(4242);
  std::size_t pairs = 0, evaluations = 0, nontrivial = 0;
  for (int round = 0; round < 260; ++round) {
    auto P = corpus::random_graph(rng, 2, 1, "p");
    auto c = corpus::random_condition(rng, P, 2, 4);
    auto b = corpus::random_extension(rng, P, 2, 2, "q");
    auto s = shift_along(b, c);
    CHECK(follows_shape(c, s));
    CHECK(depth(s) <= depth(c));
    ++pairs;
    for (int h = 0; h < 3; ++h) {
      auto G = corpus::random_extension(rng, b.codomain(), 6 - std::min<std::size_t>(6, b.codomain()->node_count()), 4, "g")
                   .codomain();
      for (const auto& g : enumerate_morphisms(b.codomain(), G, true)) {
        bool lhs = satisfies(g, s);
        bool rhs = satisfies(compose(b, g), c);
        CHECK(lhs == rhs);
        nontrivial += lhs ? 0 : 1;
        ++evaluations;
      }
    }
  }
  CHECK(pairs >= 200);
  CHECK(evaluations >= 1000);
  CHECK(nontrivial >= 50);
}

TEST_CASE("left over rule examples") {
  auto ex = running_example();
  const Rule& cr = ex.ref2gen_cr;
  CHECK(shift_over_rule(cr, Condition::make_true(cr.R()))->kind() == Condition::Kind::True);

  // A loop on the created class can never hold after the step.
  auto Rloop6 = classes({"1", "3", "6"}, {{"r16", "ref", "1", "6"}, {"g63", "gen", "6", "3"}, {"x", "ref", "6", "6"}});
  auto on_created = shift_over_rule(cr, Condition::exists(incl(cr.R(), Rloop6)));
  CHECK(on_created->is_false());
  // A loop on a preserved class is transported to L.
  auto Rloop1 = classes({"1", "3", "6"}, {{"r16", "ref", "1", "6"}, {"g63", "gen", "6", "3"}, {"x", "ref", "1", "1"}});
  auto on_kept = shift_over_rule(cr, Condition::exists(incl(cr.R(), Rloop1)));
  REQUIRE(on_kept->kind() == Condition::Kind::Exists);
  CHECK(on_kept->morphism().codomain()->edge_count() == 3);

  // Identity rule: Left is equivalent to the condition itself.
  auto X = classes({"1", "2"}, {{"e", "ref", "1", "2"}});
  Rule id("id", GraphMorphism::identity(X), GraphMorphism::identity(X));
  auto Xp = classes({"1", "2", "3"}, {{"e", "ref", "1", "2"}, {"f", "ref", "2", "3"}});
  auto c = Condition::negate(Condition::exists(incl(X, Xp)));
  auto left = shift_over_rule(id, c);
  for (const auto& host : {X, Xp, classes({"1", "2", "3"}, {{"e", "ref", "1", "2"}, {"f", "ref", "3", "2"}})}) {
    for (const auto& m : enumerate_morphisms(X, host, true)) CHECK(satisfies(m, left) == satisfies(m, c));
  }
}

TEST_CASE("left correctness on the corpus") {
  Rng rng(777);
  std::size_t steps = 0, conditions = 0;
  for (int round = 0; round < 150; ++round) {
    corpus::RuleOptions opt;
    opt.condition_percent = 0;
    Rule p = corpus::random_rule(rng, "p", opt);
    auto c = corpus::random_condition(rng, p.R(), 2, 5);
    auto left = shift_over_rule(p, c);
    CHECK(follows_shape(c, left));
    CHECK(depth(left) <= depth(c));
    ++conditions;
    for (int h = 0; h < 3; ++h) {
      std::size_t room = p.L()->node_count() >= 5 ? 0 : 5 - p.L()->node_count();
      auto G = corpus::random_extension(rng, p.L(), room, 3, "g").codomain();
      for (const auto& mi : enumerate_matches(p, G)) {
        if (!mi.verdict.ok()) continue;
        auto step = apply(p, mi.m);
        CHECK(satisfies(mi.m, left) == satisfies(step.n, c));
        ++steps;
      }
    }
  }
  CHECK(conditions >= 150);
  CHECK(steps >= 300);
}
