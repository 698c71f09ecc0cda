#ifndef STRATLAT_LP_HPP
#define STRATLAT_LP_HPP

#include <string>
#include <string_view>
#include <vector>

#include "stratlat/fixpoint.hpp"
#include "stratlat/stratified.hpp"

namespace stratlat {

// One point of the truth chain F_0 < F_1 < ... < 0 < ... < T_1 < T_0.
// Deeper levels sit closer to the middle; T-values invert.
struct TruthValue {
  enum class Kind { False, Zero, True };
  Kind kind = Kind::Zero;
  int level = 0;  // meaningful for False/True only; kept 0 for Zero

  static TruthValue f(int level) { return {Kind::False, level}; }
  static TruthValue t(int level) { return {Kind::True, level}; }
  static TruthValue zero() { return {Kind::Zero, 0}; }

  // Position along the chain: F ascends with level, T descends.
  std::pair<int, long long> key() const {
    switch (kind) {
      case Kind::False:
        return {0, level};
      case Kind::Zero:
        return {1, 0};
      default:
        return {2, -static_cast<long long>(level)};
    }
  }

  std::string to_string() const;

  friend bool operator==(const TruthValue& a, const TruthValue& b) {
    return a.key() == b.key();
  }
  friend bool operator!=(const TruthValue& a, const TruthValue& b) {
    return !(a == b);
  }
  friend bool operator<(const TruthValue& a, const TruthValue& b) {
    return a.key() < b.key();
  }
  friend bool operator<=(const TruthValue& a, const TruthValue& b) {
    return a.key() <= b.key();
  }
};

// Negation-as-failure transform: F_a -> T_{a+1}, T_a -> F_{a+1}, 0 -> 0.
TruthValue negate(TruthValue v);

// Truth-side restriction: values of level <= alpha survive, everything
// else (including 0) becomes the level placeholder F_{alpha+1}.
TruthValue value_restrict(TruthValue v, int alpha);

// x below_alpha y on the full chain: equal values, or both of level >=
// alpha (or 0) with T_alpha fixed upward and F_alpha fixed downward.
bool tv_below_at(TruthValue x, TruthValue y, int alpha);

struct Literal {
  int atom = -1;
  bool positive = true;
};

struct Rule {
  int head = -1;
  std::vector<Literal> body;
};

struct Program {
  std::vector<std::string> atoms;  // first-appearance order
  std::vector<Rule> rules;

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int index_of(std::string_view name) const;
};

// Grammar: statement = atom [":-" literal {"," literal}] "."; literals
// may carry a `not` prefix; `%` starts a line comment; atom names match
// [A-Za-z_][A-Za-z0-9_]*.  Malformed input raises ParseError with the
// 1-based line and column of the offending token.
Program parse_program(const std::string& text);

// One interpretation: a truth value per atom, indexed like Program::atoms.
using Interpretation = std::vector<TruthValue>;

// The immediate-consequence step: bodies are chain-minima (empty body is
// T_0), heads chain-maxima over their rules (ruleless atoms fall to F_0).
Interpretation tp_step(const Program& P, const Interpretation& I);

// Lexicographic order on interpretations induced by the level relations.
bool interp_below_at(const Interpretation& I, const Interpretation& J,
                     int alpha);
bool interp_lex_leq(const Interpretation& I, const Interpretation& J);

struct SolveResult {
  Interpretation values;
  std::vector<int> level_of;  // freeze level per atom, -1 when settled to 0
  std::vector<std::vector<int>> frozen_at;  // atom indices frozen per level
  int zero_level = -1;  // level whose stall sent the leftovers to 0
};

// The infinite-valued minimum model, computed level by level: unfrozen
// atoms range over the three-point sublattice F_a < F_{a+1} < T_a while
// the step operator is iterated to its least fixed point there; atoms
// landing on F_a or T_a freeze, and a level freezing nothing sends every
// remaining atom to 0.  The result is verified to be a fixed point of
// tp_step and lexicographically below sampled pre-fixed interpretations.
SolveResult rw_minimum_model(const Program& P);

enum class Truth3 { False, Undef, True };

std::string to_string(Truth3 v);
Truth3 collapse3(TruthValue v);
std::vector<Truth3> collapse3(const Interpretation& I);

// Independent well-founded-model computation by the alternating least
// models of positive reducts; the regression ground truth.
std::vector<Truth3> wfs_oracle(const Program& P);

// The truth chain truncated to levels below `depth` plus 0, as a lattice
// and as a stratified model; products materialize interpretations over
// small atom sets so the generic machinery can run on them.
LatticePtr make_v_chain(int depth);

struct VModel {
  StratifiedPtr model;
  int depth = 0;
  std::vector<std::string> atoms;
  std::vector<Interpretation> tuples;  // element index -> per-atom values

  int index_of(const Interpretation& I) const;
};

VModel make_v_model(const std::vector<std::string>& atoms, int depth);

// Values of level >= depth collapse to 0, the truncation projection.
TruthValue truncate_value(TruthValue v, int depth);

// f_P as an explicit table on the truncated product model.
EndoFunction materialize_tp(const Program& P, const VModel& vm);

// Materializes the program's step operator on the truncated product
// model and checks every level monotonicity exhaustively.
bool verify_fp_weak_monotone(const Program& P, int depth);

}  // namespace stratlat

#endif  // STRATLAT_LP_HPP
