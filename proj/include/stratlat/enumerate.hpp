#ifndef STRATLAT_ENUMERATE_HPP
#define STRATLAT_ENUMERATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "stratlat/fixpoint.hpp"
#include "stratlat/stratified.hpp"

namespace stratlat {

// Bounds for the generators: exhaustive below the caps, seeded sampling
// where a cap would be exceeded and a seed is supplied.
struct EnumerationBudget {
  int max_elements = 7;
  int max_depth = 3;
  std::optional<std::uint64_t> seed;
  int sample_count = 0;
};

// All lattices on n elements up to isomorphism, each emitted in its
// canonical indexing (minimal relation encoding over permutations that
// fix bottom and top), sorted by that encoding.  Labels are e0..e{n-1}.
std::vector<LatticePtr> enumerate_lattices(int n);

// All level families of the given stored depth on the lattice that pass
// the model axioms.  Families are generated from refinement chains of
// partitions (the level equivalences) and the order rule that a model's
// level relation is determined by class membership and class minima.
std::vector<StratifiedPtr> enumerate_stratifications(const LatticePtr& lat,
                                                     int depth);

// Every table passing the level monotonicity check, in ascending
// table-as-number order for models of at most 5 elements; larger models
// need a seed and yield a filtered sample of `sample_count` draws.
std::vector<EndoFunction> enumerate_weakly_monotone(
    const StratifiedPtr& model, const EnumerationBudget& budget);

}  // namespace stratlat

#endif  // STRATLAT_ENUMERATE_HPP
