#pragma once

// Shared fixtures: the small lattices, models, and towers the tests keep
// coming back to, plus brute-force oracles that recompute the interesting
// quantities straight from the definitions.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stratlat/enumerate.hpp"
#include "stratlat/inverse_limit.hpp"
#include "stratlat/stratified.hpp"

namespace fixtures {

using namespace stratlat;

inline LatticePtr chain_lattice(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> below;
  for (int i = 0; i < n; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i > 0) below.emplace_back(i - 1, i);
  }
  return FiniteLattice::make(std::move(labels), below);
}

// bot < {0, 1} < top, with 0 and 1 incomparable.
inline LatticePtr diamond_lattice() {
  return FiniteLattice::make_by_label(
      {"bot", "0", "1", "top"},
      {{"bot", "0"}, {"bot", "1"}, {"0", "top"}, {"1", "top"}});
}

// bot < 0 < {1, 2} < top: one atom under an incomparable pair.
inline LatticePtr kite_lattice() {
  return FiniteLattice::make_by_label(
      {"bot", "0", "1", "2", "top"},
      {{"bot", "0"}, {"0", "1"}, {"0", "2"}, {"1", "top"}, {"2", "top"}});
}

struct LevelSpec {
  std::vector<std::pair<std::string, std::string>> pairs;
  bool include_leq = false;
};

inline StratifiedPtr build_stratified(const LatticePtr& lat,
                                      const std::vector<LevelSpec>& levels) {
  std::vector<std::vector<Mask>> rows;
  for (const LevelSpec& spec : levels) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [a, b] : spec.pairs)
      pairs.emplace_back(lat->index_of(a), lat->index_of(b));
    rows.push_back(
        StratifiedLattice::level_from_pairs(lat, pairs, spec.include_leq));
  }
  return StratifiedLattice::make(lat, std::move(rows));
}

// Depth-2 strong model on the kite: level 0 collapses bot with 0 (on top
// of the order), level 1 keeps only the pair that collapse forces.
// Restriction at level 0 sends bot and 0 to bot and fixes the rest, so
// the level-0 carrier is {bot, 1, 2, top}.
inline StratifiedPtr strong_model_5() {
  return build_stratified(
      kite_lattice(),
      {{{{"0", "bot"}}, true}, {{{"bot", "0"}}, false}});
}

// Depth-2 model on the diamond that is not strong: level 0 collapses bot
// with 1, which breaks A4* (joining the class pair with 0 lands on 0 on
// one side and top on the other) and leaves { z : z below_0 0 } without
// a greatest element, so no corestriction of 0 exists at level 0.
inline StratifiedPtr model_not_strong_4() {
  return build_stratified(
      diamond_lattice(),
      {{{{"bot", "1"}, {"1", "bot"}}, true}, {{{"bot", "1"}}, false}});
}

// Multisets over {a, b} of size at most two plus an artificial top,
// ordered by multiset inclusion.
inline LatticePtr multiset_lattice7() {
  return FiniteLattice::make_by_label(
      {"{}", "{a}", "{b}", "{a,a}", "{a,b}", "{b,b}", "top"},
      {{"{}", "{a}"},
       {"{}", "{b}"},
       {"{a}", "{a,a}"},
       {"{a}", "{a,b}"},
       {"{b}", "{a,b}"},
       {"{b}", "{b,b}"},
       {"{a,a}", "top"},
       {"{a,b}", "top"},
       {"{b,b}", "top"}});
}

// Plain subsets of {a, b} plus the same artificial top.
inline LatticePtr subset_lattice5() {
  return FiniteLattice::make_by_label(
      {"{}", "{a}", "{b}", "{a,b}", "top"},
      {{"{}", "{a}"}, {"{}", "{b}"}, {"{a}", "{a,b}"}, {"{b}", "{a,b}"},
       {"{a,b}", "top"}});
}

// The step that flattens repeated elements: {a,a} -> {a}, {b,b} -> {b},
// identity otherwise.  Locally completely additive but not completely
// additive: {a,a} v {b,b} = top upstairs while {a} v {b} = {a,b}.
inline LatticeMap multiset_step() {
  LatticeMap h;
  h.source = multiset_lattice7();
  h.target = subset_lattice5();
  h.table.resize(7);
  for (int x = 0; x < 7; ++x) {
    std::string l = h.source->label(x);
    if (l == "{a,a}") l = "{a}";
    if (l == "{b,b}") l = "{b}";
    h.table[x] = h.target->index_of(l);
  }
  return h;
}

inline InverseSystem multiset_system() {
  LatticeMap h = multiset_step();
  ConnectingMap cm{1, 0, h};
  return validate_system({h.target, h.source}, {cm});
}

// Crushes the diamond onto the 2-chain: everything but top goes to
// bottom.  A projection, but the bottom fiber {bot, 0, 1} misses its own
// join, so the step is not locally completely additive.
inline InverseSystem diamond_crush_system() {
  LatticeMap h;
  h.source = diamond_lattice();
  h.target = chain_lattice(2);
  h.table = {0, 0, 0, 1};
  ConnectingMap cm{1, 0, h};
  return validate_system({h.target, h.source}, {cm});
}

// Every stratification passing the model axioms with at most max_elems
// elements and the exact stored depth.
inline std::vector<StratifiedPtr> all_models(int max_elems, int depth) {
  std::vector<StratifiedPtr> out;
  for (int n = 1; n <= max_elems; ++n)
    for (const LatticePtr& lat : enumerate_lattices(n))
      for (StratifiedPtr& S : enumerate_stratifications(lat, depth))
        out.push_back(std::move(S));
  return out;
}

// Label-free isomorphism search: a bijection preserving order and every
// level relation in both directions (levels compared through the
// identity-tail convention, so differing stored depths still match when
// the relations agree).  Exhaustive over permutations; for the small
// fixtures only.
inline std::optional<std::vector<int>> find_stratified_isomorphism(
    const StratifiedLattice& A, const StratifiedLattice& B) {
  if (A.size() != B.size()) return std::nullopt;
  const int n = A.size();
  const int top_level = std::max(A.depth(), B.depth());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        if (A.lattice().leq(x, y) != B.lattice().leq(perm[x], perm[y]))
          ok = false;
        for (int alpha = 0; alpha <= top_level && ok; ++alpha)
          if (A.below_at(alpha, x, y) !=
              B.below_at(alpha, perm[x], perm[y]))
            ok = false;
      }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Least upper bound of xs in the derived order, found by scanning all
// elements; nullopt when no least bound exists.
inline std::optional<int> oracle_lex_least_upper(const StratifiedLattice& S,
                                                 Mask xs) {
  const int n = S.size();
  std::vector<int> bounds;
  for (int z = 0; z < n; ++z) {
    bool upper = true;
    for_each_bit(xs, [&](int x) {
      if (!lex_leq(S, x, z)) upper = false;
    });
    if (upper) bounds.push_back(z);
  }
  for (int b : bounds) {
    bool least = true;
    for (int other : bounds)
      if (!lex_leq(S, b, other)) least = false;
    if (least) return b;
  }
  return std::nullopt;
}

inline std::optional<int> oracle_lex_greatest_lower(const StratifiedLattice& S,
                                                    Mask xs) {
  const int n = S.size();
  std::vector<int> bounds;
  for (int z = 0; z < n; ++z) {
    bool lower = true;
    for_each_bit(xs, [&](int x) {
      if (!lex_leq(S, z, x)) lower = false;
    });
    if (lower) bounds.push_back(z);
  }
  for (int b : bounds) {
    bool greatest = true;
    for (int other : bounds)
      if (!lex_leq(S, other, b)) greatest = false;
    if (greatest) return b;
  }
  return std::nullopt;
}

}  // namespace fixtures
