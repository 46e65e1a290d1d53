#pragma once

// The refactoring example: removeMiddleMan followed by extractSubclass,
// with the overlap and the kernel that turn it into Ref2Gen_GCR. Built in
// code here; tests/fixtures/running_example.json holds the same data.

#include "gcr/rules.hpp"
#include "support.hpp"

namespace testing {

struct RunningExample {
  Rule remove_middle_man;
  Rule extract_subclass;
  GraphPtr E;
  GraphMorphism e1;  // R1 -> E
  GraphMorphism e2;  // L2 -> E
  // Kernel
  GraphPtr Kcap, V;
  GraphMorphism k, u1, u2, v1, v2;
  // Expected results
  Rule ref2gen_cr;
  Rule ref2gen_gcr;
};

inline RunningExample running_example() {
  auto L1 = classes({"1", "2", "3"}, {{"r12", "ref", "1", "2"}, {"r23", "ref", "2", "3"}});
  auto K1 = classes({"1", "3"});
  auto R1 = classes({"1", "3"}, {{"r13", "ref", "1", "3"}});
  Rule rmm("removeMiddleMan", incl(K1, L1), incl(K1, R1));

  auto L2 = classes({"4", "5"}, {{"r54", "ref", "5", "4"}});
  auto K2 = classes({"4", "5"});
  auto R2 = classes({"4", "5", "6"}, {{"r56", "ref", "5", "6"}, {"g64", "gen", "6", "4"}});
  Rule es("extractSubclass", incl(K2, L2), incl(K2, R2));

  auto E = classes({"1", "3"}, {{"r13", "ref", "1", "3"}});
  auto e1 = incl(R1, E);
  auto e2 = map(L2, E, {{"5", "1"}, {"4", "3"}}, {{"r54", "r13"}});

  auto Kcap = classes({"1_5", "3_4"});
  auto V = classes({"1_5", "3_4", "2_6"}, {{"r12_r56", "ref", "1_5", "2_6"}});
  auto k = incl(Kcap, V);
  auto u1 = map(Kcap, K1, {{"1_5", "1"}, {"3_4", "3"}});
  auto u2 = map(Kcap, K2, {{"1_5", "5"}, {"3_4", "4"}});
  auto v1 = map(V, L1, {{"1_5", "1"}, {"3_4", "3"}, {"2_6", "2"}}, {{"r12_r56", "r12"}});
  auto v2 = map(V, R2, {{"1_5", "5"}, {"3_4", "4"}, {"2_6", "6"}}, {{"r12_r56", "r56"}});

  auto crL = classes({"1", "2", "3"}, {{"r12", "ref", "1", "2"}, {"r23", "ref", "2", "3"}});
  auto crK = classes({"1", "3"});
  auto crR = classes({"1", "3", "6"}, {{"r16", "ref", "1", "6"}, {"g63", "gen", "6", "3"}});
  Rule cr("Ref2Gen_CR", incl(crK, crL), incl(crK, crR));

  auto gL = classes({"1", "2", "3"}, {{"r12", "ref", "1", "2"}, {"r23", "ref", "2", "3"}});
  auto gK = classes({"1", "2", "3"}, {{"r12", "ref", "1", "2"}});
  auto gR = classes({"1", "2", "3"}, {{"r12", "ref", "1", "2"}, {"g23", "gen", "2", "3"}});
  Rule gcr("Ref2Gen_GCR", incl(gK, gL), incl(gK, gR));

  return RunningExample{rmm, es, E, e1, e2, Kcap, V, k, u1, u2, v1, v2, cr, gcr};
}

/// Chain 1 -> 2 -> 3 of references, optionally with an extra reference
/// 4 -> 2 into the middle class.
inline GraphPtr chain_host(bool extra_edge) {
  if (extra_edge) {
    return classes({"a", "b", "c", "d"}, {{"ab", "ref", "a", "b"}, {"bc", "ref", "b", "c"}, {"db", "ref", "d", "b"}});
  }
  return classes({"a", "b", "c"}, {{"ab", "ref", "a", "b"}, {"bc", "ref", "b", "c"}});
}

}  // namespace testing
