#pragma once

#include <string>
#include <vector>

#include "stratlat/stratified.hpp"

namespace stratlat {

// One connecting map of an inverse system, read "from level `from` down
// to level `to`".
struct ConnectingMap {
  int from = 0;
  int to = 0;
  LatticeMap map;
};

// A finite tower L_0 .. L_D with one verified projection per consecutive
// pair, plus the matching embeddings (the upper adjoints, materialized
// during validation).  Produce through validate_system or decompose.
struct InverseSystem {
  std::vector<LatticePtr> levels;  // L_0 .. L_D
  std::vector<LatticeMap> steps;   // steps[a] : L_{a+1} -> L_a
  std::vector<LatticeMap> lifts;   // lifts[a] : L_a -> L_{a+1}

  int top_level() const { return static_cast<int>(levels.size()) - 1; }
};

// Shape-checks the tower, verifies each consecutive map is a monotone
// projection (its upper adjoint exists and satisfies both laws), and
// cross-checks any non-consecutive maps in the input against the derived
// composites.  Throws SchemaError on shape problems, NotMonotoneError or
// NotProjectionError per offending map, NotCoherentError when a supplied
// composite disagrees with the derived one.
InverseSystem validate_system(std::vector<LatticePtr> levels,
                              const std::vector<ConnectingMap>& maps);

// Derived downward composite from level `from` to level `to` <= `from`
// (identity when equal), and its upward counterpart through the lifts.
LatticeMap composite(const InverseSystem& sys, int from, int to);
LatticeMap composite_lift(const InverseSystem& sys, int from, int to);

// The limit: one element per compatible tuple (x_0, .., x_D) with
// steps[a](x_{a+1}) = x_a, ordered pointwise, with the level-alpha
// relation "equal components below alpha, ordered components at alpha".
// Tuples are determined by their top component, so the element order
// follows L_D's and labels spell the tuple out.
struct LimitModel {
  StratifiedPtr model;
  std::vector<std::vector<int>> tuples;  // tuples[i][a]: component in L_a
  std::vector<LatticeMap> projections;   // limit -> L_a, component pick
  std::vector<LatticeMap> embeddings;    // L_a -> limit, adjoint section

  int index_of_tuple(const std::vector<int>& t) const;  // -1 if absent
};

// Materializes the limit of a validated system.  Verifies that each
// projection/embedding pair obeys the adjoint laws (InternalError
// otherwise: the construction guarantees them).
LimitModel build_limit(const InverseSystem& sys);

// Additivity verdicts for one derived composite map.
struct MapAdditivity {
  int from = 0;
  int to = 0;
  MapCheck locally;  // every fiber contains its own join
  MapCheck fully;    // preserves bottom and binary joins
};

struct LimitClassification {
  std::string verdict;  // "model" | "strong" | "neither"
  bool all_locally = true;
  bool all_fully = true;
  std::vector<MapAdditivity> maps;  // all pairs to < from, from ascending
};

// Classifies by map additivity, then independently runs the axiom
// checker on the built limit and requires the two routes to agree in
// both directions (InternalError on disagreement): limit passes the base
// suite iff all maps are locally completely additive, and the strong
// suite iff all maps are completely additive.
LimitClassification classify_limit(const InverseSystem& sys);

// Splits a model into its restriction tower: level a carries the image
// of x -> x|_a as a sublattice (ambient order, ambient labels) and the
// consecutive maps restrict one level down.  The result is revalidated
// through validate_system.  Throws NotAModelError when M fails the base
// suite.
InverseSystem decompose(const StratifiedLattice& M);

// The representation round trip M -> build_limit(decompose(M)).
struct RepresentationCheck {
  InverseSystem system;
  LimitModel limit;
  std::vector<int> forward;   // M element -> limit element
  std::vector<int> backward;  // limit element -> M element
};

// Verifies x -> (x|_0, .., x|_D) is a bijection preserving and
// reflecting the order and every level relation (level comparisons use
// the identity-tail convention, which absorbs the one-level depth
// difference between M and the limit).  For strong M additionally
// requires every tower map completely additive.  Throws NotAModelError
// for non-models and IsoFailureError when any verification fails - the
// latter cannot happen for a correct implementation.
RepresentationCheck representation_isomorphism(const StratifiedLattice& M);

}  // namespace stratlat
