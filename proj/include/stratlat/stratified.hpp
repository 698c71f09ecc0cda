#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stratlat/errors.hpp"
#include "stratlat/lattice.hpp"

namespace stratlat {

class StratifiedLattice;
using StratifiedPtr = std::shared_ptr<const StratifiedLattice>;

// A finite complete lattice together with a tower of preorders, one per
// level.  Levels 0 .. depth-1 are stored explicitly; every level at or
// beyond depth is the identity relation.  All axiom checks quantify over
// levels 0 .. depth inclusive, so the first identity level is examined
// like any other.
class StratifiedLattice {
 public:
  // rows[alpha][x] = bitmask of { y : x below_alpha y } at level alpha.
  // Rows are closed reflexively and transitively here, so generator
  // relations are accepted.
  static StratifiedPtr make(LatticePtr lat, std::vector<std::vector<Mask>> rows);

  // Builds one level from generator pairs.  When include_leq is set the
  // lattice order is added to the generators before closing.
  static std::vector<Mask> level_from_pairs(
      const LatticePtr& lat, const std::vector<std::pair<int, int>>& pairs,
      bool include_leq);

  // Depth-1 stratification whose single stored level equals the lattice
  // order.  Satisfies the full axiom set on every lattice.
  static StratifiedPtr discrete(LatticePtr lat);

  const FiniteLattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  int size() const { return lat_->size(); }
  int depth() const { return depth_; }

  // x below_alpha y.  Levels >= depth are the identity.
  bool below_at(int alpha, int x, int y) const {
    if (alpha >= depth_) return x == y;
    return has_bit(up_[alpha][x], y);
  }
  bool eq_at(int alpha, int x, int y) const {
    return below_at(alpha, x, y) && below_at(alpha, y, x);
  }

  Mask above_mask(int alpha, int x) const {   // { y : x below_alpha y }
    if (alpha >= depth_) return bit(x);
    return up_[alpha][x];
  }
  Mask below_set_mask(int alpha, int x) const {  // { z : z below_alpha x }
    if (alpha >= depth_) return bit(x);
    return down_[alpha][x];
  }
  Mask class_mask(int alpha, int x) const {   // { y : x eq_alpha y }
    if (alpha >= depth_) return bit(x);
    return up_[alpha][x] & down_[alpha][x];
  }

  // Meet of { z : x below_alpha z }.  Equal to the level-alpha restriction
  // of x whenever the axioms make that restriction exist.
  int restrict(int x, int alpha) const {
    return lat_->meet_all(above_mask(alpha, x));
  }
  // Join of { z : z below_alpha x }: the corestriction candidate.
  int corestrict(int x, int alpha) const {
    return lat_->join_all(below_set_mask(alpha, x));
  }

  // { x : restrict(x, beta) == prefix[beta] for all beta < prefix.size() }
  Mask cell_mask(const std::vector<int>& prefix) const;

  // Image of restrict(., alpha).
  Mask restriction_image(int alpha) const;

  bool same_structure(const StratifiedLattice& other) const {
    return lat_->same_structure(*other.lat_) && depth_ == other.depth_ &&
           up_ == other.up_;
  }

 private:
  LatticePtr lat_;
  int depth_ = 0;
  std::vector<std::vector<Mask>> up_;    // up_[alpha][x]
  std::vector<std::vector<Mask>> down_;  // down_[alpha][y]
};

// Drops trailing stored levels that equal the identity relation.
StratifiedPtr trim_identity_tail(const StratifiedLattice& S);

// ---------------------------------------------------------------------------
// Axioms.
//
// The checked properties, with their witness conventions (element indices in
// AxiomResult::witness, levels in alpha / beta):
//
//   A1   alpha < beta and x below_beta y must give x eq_alpha y.
//        witness {x, y}, alpha, beta.
//   A2   the intersection of all eq_alpha is the identity.  witness {x, y}.
//   A3   meet of the below_alpha-up-set of x is eq_alpha to x.
//        witness {x, that meet}, alpha.
//   A4   every eq_alpha class is closed under binary joins.  Closure
//        under joins of arbitrary nonempty subsets follows by induction,
//        the lattice being finite.  witness {x1, x2, join}, alpha.
//   A4*  x1 eq_alpha y1 and x2 eq_alpha y2 give x1 v x2 eq_alpha y1 v y2.
//        witness {x1, y1, x2, y2}, alpha.
//   A5   x <= y gives restrict(x, alpha) <= restrict(y, alpha).
//        witness {x, y}, alpha.
//   A6   x <= y and x eq_beta y for all beta < alpha give x below_alpha y.
//        witness {x, y}, alpha.
//   A3d, A4d, A4*d, A5d: order duals of A3, A4, A4*, A5, stated with
//        corestrict and meets.  Same witness shapes.
//
//   B1   restrict(restrict(x, alpha), beta) == restrict(x, beta) for
//        beta <= alpha.  witness {x}, alpha, beta.
//   B2   same property as A5, reported under this name in the B suite.
//   B2*  restrict(bottom, alpha) == bottom, witness {bottom}; and
//        restrict(x v y, alpha) == restrict(x, alpha) v restrict(y, alpha),
//        witness {x, y}; both with alpha.
//   B3   the join of restrict(x, alpha) over all levels is x.  witness {x}.
//   B4   fibers of restrict(., alpha) are closed under binary joins.
//        witness {x1, x2, join}, alpha.
//   D    x below_alpha y holds exactly when restrict(x, alpha) <=
//        restrict(y, alpha) and restrict(x, beta) == restrict(y, beta) for
//        all beta < alpha.  witness {x, y}, alpha.
//   C    restrict(x, alpha) is eq_alpha to x (it is a lower bound of the
//        up-set by construction, so this makes it the A3 witness).
//        witness {x, restrict(x, alpha)}, alpha.
//
// Each check scans levels in increasing order, then elements in increasing
// index order (tuples lexicographically), and stops at the first violation,
// so witnesses are replayable.
// ---------------------------------------------------------------------------

enum class AxiomSuite { Model, Strong, Dual, StrongDual, Symmetric, B };

struct AxiomResult {
  std::string name;
  bool ok = true;
  int alpha = -1;
  int beta = -1;
  std::vector<int> witness;
  std::string detail;
};

std::vector<AxiomResult> check_axioms(const StratifiedLattice& S,
                                      AxiomSuite suite);

bool all_ok(const std::vector<AxiomResult>& results);
bool passes(const StratifiedLattice& S, AxiomSuite suite);

struct Classification {
  bool model = false;
  bool strong = false;
  bool dual_model = false;
  bool strong_dual = false;
  bool symmetric = false;
  bool strong_symmetric = false;

  // "strong-symmetric" > "symmetric" > "strong" > "model" > "not-model":
  // the most specific class that applies.  A structure passing only the
  // dual suite still reads "not-model" here; the flags carry the detail.
  std::string name() const;
};

// Runs every suite independently; never infers one flag from another, so
// the documented equivalences between them stay observable.
Classification classify(const StratifiedLattice& S);

// Checked restriction: the meet of the eq_alpha class of x, verified to
// land inside the class.  Identity for alpha >= depth.  Throws
// NotAModelError when the meet escapes the class, which certifies that no
// level-alpha restriction of x exists.
int restrict_checked(const StratifiedLattice& S, int x, int alpha);

// Checked corestriction x|^alpha: the join of { z : z below_alpha x },
// which succeeds iff that join is still eq_alpha to x (then it is the
// greatest element of the down-set).  Throws CorestrictError with the
// witness otherwise.  Identity for alpha >= depth.
int corestrict_checked(const StratifiedLattice& S, int x, int alpha);

// Order dual: the reversed lattice carrying each level's reversed
// relation.  Involutive up to same_structure.  A structure satisfies the
// dual suite exactly when its dual satisfies the primal one, and the
// checkers are kept independent so tests can confirm that.
StratifiedPtr dualize(const StratifiedLattice& S);

// ---------------------------------------------------------------------------
// The derived order: x lex_leq y iff x == y or there is a level alpha
// with x below_alpha y but not y below_alpha x.  On models this is a
// partial order refining <=.
// ---------------------------------------------------------------------------

bool lex_leq(const StratifiedLattice& S, int x, int y);

// Supremum and infimum for lex_leq, computed level by level.  Both
// require S to be a model; they verify the computed element is a bound of
// xs and throw InternalError otherwise instead of returning a wrong
// answer.  lex_sup({}) is bottom and lex_inf({}) is top, the extremes of
// the derived order.
int lex_sup(const StratifiedLattice& S, Mask xs);
int lex_inf(const StratifiedLattice& S, Mask xs);

// Level-alpha supremum x1 sqcup_alpha x2 ... of a set X drawn from
// (ref]_alpha = { z : z eq_beta ref for all beta < alpha }: the join of
// X's level-alpha restrictions and the least element of (ref]_alpha.
// ref anchors the prefix and is what makes the empty set well-defined.
// Throws PreconditionError when X leaves (ref]_alpha, InternalError when
// the result fails either defining property of the level supremum.
int sqcup_alpha(const StratifiedLattice& S, Mask xs, int alpha, int ref);

// For families of below_alpha-increasing chains in a strong model:
// checks that the join of the per-chain level suprema is eq_alpha to the
// level supremum of the pointwise joins.  Chains of different lengths
// are padded with their last element.  Throws PreconditionError when S
// is not strong, a chain is empty, or a chain fails to increase.
bool check_prop_p3(const StratifiedLattice& S,
                   const std::vector<std::vector<int>>& chains, int alpha);

// Round trip through the restriction-map axiomatization: extracts the
// family x -> x|_alpha (validated by C), checks B1 through B4 plus B2*
// when S is strong, and rebuilds every level relation from the
// restrictions to compare against the stored ones (the D report).
// Requires a model; throws PreconditionError otherwise.
std::vector<AxiomResult> b_axiomatization_round_trip(
    const StratifiedLattice& S);

}  // namespace stratlat
