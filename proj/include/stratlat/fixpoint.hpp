#ifndef STRATLAT_FIXPOINT_HPP
#define STRATLAT_FIXPOINT_HPP

#include <utility>
#include <vector>

#include "stratlat/stratified.hpp"

namespace stratlat {

// A self-map on the elements of a stratified lattice, given as a table.
// Totality is enforced by the callers that need it; level monotonicity
// is always checked, never assumed.
struct EndoFunction {
  StratifiedPtr model;
  std::vector<int> table;

  int operator()(int x) const { return table[x]; }
};

struct MonotoneCheck {
  bool ok = true;
  int alpha = -1;
  std::pair<int, int> witness{-1, -1};  // x below_alpha y, images not
};

// f is alpha-monotone when x below_alpha y forces f(x) below_alpha f(y);
// weakly monotone when that holds for every alpha up to the depth.
MonotoneCheck is_alpha_monotone(const EndoFunction& f, int alpha);
MonotoneCheck weak_monotonicity_check(const EndoFunction& f);
bool is_weakly_monotone(const EndoFunction& f);

// The level components f_alpha(u) = f(u)|_alpha of a weakly monotone f,
// each living on the restriction image carrier of its level.  The three
// bundled facts (conditional monotonicity, commutation with restriction,
// and reassembly of f from the components) are consequences of weak
// monotonicity; their verification failing is a bug, not an input error.
struct LevelFamily {
  StratifiedPtr model;
  std::vector<Mask> carriers;            // carriers[alpha] = image of |_alpha
  std::vector<std::vector<int>> tables;  // tables[alpha][u], -1 off carrier
  bool conditionally_monotone = false;
  bool compatible = false;
  bool reassembles = false;

  int apply(int alpha, int u) const { return tables[alpha][u]; }
};

LevelFamily level_components(const EndoFunction& f);

struct LevelTrace {
  int alpha = -1;
  int start = -1;
  std::vector<int> iterates;  // successive values after the start
  int value = -1;             // the level fixed point
};

struct LfpResult {
  int value = -1;
  std::vector<LevelTrace> levels;
};

// Level-by-level least fixed point above a set of post-fixed points:
// at each level the iteration runs inside the sublattice of carrier
// elements whose restrictions reproduce the already-fixed prefix, and
// ascends from the join of the surviving components of the seed set.
// The result is the least element under the lexicographic order among
// {z : seeds lex-below z, f(z) lex-below z}, and is a fixed point.
LfpResult stratified_lfp_above_trace(const EndoFunction& f, Mask post_fixed);
int stratified_lfp_above(const EndoFunction& f, Mask post_fixed);

// Dual construction: greatest fixed point lex-below a set of pre-fixed
// points, descending inside each level's prefix sublattice.
LfpResult stratified_gfp_below_trace(const EndoFunction& f, Mask pre_fixed);
int stratified_gfp_below(const EndoFunction& f, Mask pre_fixed);

// The least fixed point outright: the above construction with no seeds.
LfpResult stratified_lfp_trace(const EndoFunction& f);
int stratified_lfp(const EndoFunction& f);

// Fix(f) with its lexicographic-order lattice structure verified subset
// by subset: every subset must have a lex-sup and a lex-inf inside
// Fix(f).  Exhaustive through 12 fixed points; beyond that a fixed
// sample of subsets drawn from an internally seeded generator.
struct FixedPointLattice {
  std::vector<int> fixed_points;
  bool exhaustive = false;
  long long subsets_checked = 0;
};

FixedPointLattice fixed_point_lattice(const EndoFunction& f);

// The lex-sup of a set of points below f stays below f, and dually.
bool check_supp_post_fixed(const EndoFunction& f, Mask post_fixed);
bool check_inf_pre_fixed(const EndoFunction& f, Mask pre_fixed);

}  // namespace stratlat

#endif  // STRATLAT_FIXPOINT_HPP
