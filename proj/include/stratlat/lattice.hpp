#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stratlat/errors.hpp"

namespace stratlat {

// Element subsets are bitmasks over element indices; everything here is sized
// for desk scale (n <= 64).
using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1; }

class FiniteLattice;
using LatticePtr = std::shared_ptr<const FiniteLattice>;

// A finite complete lattice: labeled elements, the full order relation, and
// precomputed pairwise meet/join tables. Instances are immutable after
// construction; every constructor path validates the order (reflexive and
// transitive closure, antisymmetry, existence of all bounds).
class FiniteLattice {
 public:
  static constexpr int kMaxElements = 64;

  // `below` is a generating set of (x, y) index pairs meaning x <= y; it is
  // closed reflexively and transitively. Throws CycleError if antisymmetry
  // fails, NotALatticeError if some pair lacks a meet or join.
  static LatticePtr make(std::vector<std::string> labels,
                         const std::vector<std::pair<int, int>>& below);

  static LatticePtr make_by_label(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::string, std::string>>& below);

  int size() const { return n_; }
  bool leq(int x, int y) const { return has_bit(up_[x], y); }
  bool lt(int x, int y) const { return x != y && leq(x, y); }
  int meet(int x, int y) const { return meet_[x * n_ + y]; }
  int join(int x, int y) const { return join_[x * n_ + y]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  Mask up_set(int x) const { return up_[x]; }      // {y : x <= y}
  Mask down_set(int x) const { return down_[x]; }  // {y : y <= x}
  Mask all_mask() const { return all_; }

  // Fold of the binary tables; empty join is bottom, empty meet is top.
  int join_all(Mask s) const;
  int meet_all(Mask s) const;

  // Least/greatest element of the subset itself, if one exists.
  std::optional<int> least_of(Mask s) const;
  std::optional<int> greatest_of(Mask s) const;

  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(std::string_view label) const;  // -1 when absent

  LatticePtr dual() const;  // reversed order

  // Same labels in the same positions and the same order relation.
  bool same_structure(const FiniteLattice& other) const;

 private:
  FiniteLattice() = default;

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Mask> up_;
  std::vector<Mask> down_;
  std::vector<int> meet_;
  std::vector<int> join_;
  Mask all_ = 0;
  int bottom_ = -1;
  int top_ = -1;
};

// Iterates set bits low to high.
template <typename F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    int i = __builtin_ctzll(m);
    f(i);
    m &= m - 1;
  }
}

inline int popcount(Mask m) { return __builtin_popcountll(m); }

// A function between two lattices given by an explicit table.
struct LatticeMap {
  LatticePtr source;
  LatticePtr target;
  std::vector<int> table;

  int operator()(int x) const { return table[x]; }

  bool is_monotone() const;
  // First (x, y) in index order with x <= y but f(x) !<= f(y).
  std::optional<std::pair<int, int>> monotonicity_witness() const;
  Mask image() const;

  static LatticeMap identity(LatticePtr lat);
};

// outer(inner(x)); the inner target and outer source must agree structurally.
LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner);

bool same_map(const LatticeMap& a, const LatticeMap& b);

// Adjoint pair: upper(lower(x)) = x and lower(upper(y)) <= y. `upper` goes
// from the bigger lattice down (the projection), `lower` embeds back.
struct GaloisPair {
  LatticeMap upper;
  LatticeMap lower;
};

// Computes the candidate lower adjoint k(x) = meet{y : x <= h(y)} and checks
// both projection laws. Throws NotMonotoneError or NotProjectionError with a
// witness element in the message.
GaloisPair projection_adjoint(const LatticeMap& h);

// Result of a structural check on a map; `witness` holds element indices
// whose meaning depends on the check (documented per function).
struct MapCheck {
  bool ok = true;
  std::vector<int> witness;
  std::string detail;
};

// Every fiber of h contains its own join. Witness: {target point, fiber join}.
MapCheck is_locally_completely_additive(const LatticeMap& h);

// h preserves bottom and binary joins; by fold induction over finite sets this
// is equivalent to preserving arbitrary suprema. Witness: offending pair.
MapCheck is_completely_additive(const LatticeMap& h);

// Dual of the above: top and binary meets.
MapCheck preserves_all_infima(const LatticeMap& h);

}  // namespace stratlat
