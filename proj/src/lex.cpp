#include <algorithm>

#include "stratlat/stratified.hpp"

namespace stratlat {

bool lex_leq(const StratifiedLattice& S, int x, int y) {
  if (x == y) return true;
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    if (S.below_at(alpha, x, y) && !S.below_at(alpha, y, x)) return true;
  return false;
}

namespace {

void require_prefix_coherent(const StratifiedLattice& S,
                             const std::vector<int>& prefix, int value,
                             int alpha) {
  for (int beta = 0; beta < alpha; ++beta)
    if (S.restrict(value, beta) != prefix[beta])
      throw InternalError(
          "level-wise bound construction produced an incompatible prefix at "
          "level " +
          std::to_string(beta));
}

void require_upper_bound(const StratifiedLattice& S, Mask xs, int bound) {
  for_each_bit(xs, [&](int x) {
    if (!lex_leq(S, x, bound))
      throw InternalError("computed element is not an upper bound of " +
                          S.lattice().label(x) + " in the derived order");
  });
}

void require_lower_bound(const StratifiedLattice& S, Mask xs, int bound) {
  for_each_bit(xs, [&](int x) {
    if (!lex_leq(S, bound, x))
      throw InternalError("computed element is not a lower bound of " +
                          S.lattice().label(x) + " in the derived order");
  });
}

}  // namespace

int lex_sup(const StratifiedLattice& S, Mask xs) {
  const FiniteLattice& L = S.lattice();
  std::vector<int> prefix;
  Mask survivors = xs;
  int result = L.bottom();
  for (int alpha = 0; alpha <= S.depth(); ++alpha) {
    // The least component compatible with the prefix is the previous
    // level's value, so the level join starts from it.
    int r = result;
    for_each_bit(survivors, [&](int x) { r = L.join(r, S.restrict(x, alpha)); });
    require_prefix_coherent(S, prefix, r, alpha);
    Mask keep = 0;
    for_each_bit(survivors, [&](int x) {
      if (S.restrict(x, alpha) == r) keep |= bit(x);
    });
    survivors = keep;
    prefix.push_back(r);
    result = r;
  }
  require_upper_bound(S, xs, result);
  return result;
}

int lex_inf(const StratifiedLattice& S, Mask xs) {
  const FiniteLattice& L = S.lattice();
  std::vector<int> prefix;
  Mask survivors = xs;
  int result = L.top();
  for (int alpha = 0; alpha <= S.depth(); ++alpha) {
    // Meets at a level are ambient meets pushed back through restriction.
    // Once no input constrains the level any more, the bound continues
    // with the largest element compatible with the prefix.
    int r;
    if (survivors != 0) {
      int acc = L.top();
      for_each_bit(survivors,
                   [&](int x) { acc = L.meet(acc, S.restrict(x, alpha)); });
      r = S.restrict(acc, alpha);
    } else {
      Mask cell = S.cell_mask(prefix);
      if (cell == 0)
        throw InternalError("prefix cell emptied during bound construction");
      r = S.restrict(L.join_all(cell), alpha);
    }
    require_prefix_coherent(S, prefix, r, alpha);
    Mask keep = 0;
    for_each_bit(survivors, [&](int x) {
      if (S.restrict(x, alpha) == r) keep |= bit(x);
    });
    survivors = keep;
    prefix.push_back(r);
    result = r;
  }
  require_lower_bound(S, xs, result);
  return result;
}

int sqcup_alpha(const StratifiedLattice& S, Mask xs, int alpha, int ref) {
  const FiniteLattice& L = S.lattice();
  for_each_bit(xs, [&](int x) {
    for (int beta = 0; beta < alpha; ++beta)
      if (!S.eq_at(beta, x, ref))
        throw PreconditionError(L.label(x) + " is not eq_" +
                                std::to_string(beta) +
                                " to the reference element " + L.label(ref));
  });

  // The anchor set { z : z eq_beta ref for all beta < alpha } and its least
  // element, which is bottom at level 0 and ref's previous restriction
  // otherwise.
  Mask anchor = 0;
  for (int z = 0; z < S.size(); ++z) {
    bool in = true;
    for (int beta = 0; beta < alpha && in; ++beta) in = S.eq_at(beta, z, ref);
    if (in) anchor |= bit(z);
  }
  int least = alpha == 0 ? L.bottom() : S.restrict(ref, alpha - 1);
  if (!has_bit(anchor, least) || (anchor & ~L.up_set(least)) != 0)
    throw InternalError(
        "the anchor set has no least element; the input is not a model");

  int y = least;
  for_each_bit(xs, [&](int x) { y = L.join(y, S.restrict(x, alpha)); });

  // Defining properties of the level supremum: it bounds the input, and
  // every level upper bound inside the anchor set dominates it both ways.
  for_each_bit(xs, [&](int x) {
    if (!S.below_at(alpha, x, y))
      throw InternalError("level supremum does not bound " + L.label(x) +
                          " at level " + std::to_string(alpha));
  });
  for_each_bit(anchor, [&](int z) {
    bool upper = true;
    for_each_bit(xs, [&](int x) {
      if (!S.below_at(alpha, x, z)) upper = false;
    });
    if (upper && (!L.leq(y, z) || !S.below_at(alpha, y, z)))
      throw InternalError("level supremum is not least among the bounds: " +
                          L.label(z) + " at level " + std::to_string(alpha));
  });
  return y;
}

bool check_prop_p3(const StratifiedLattice& S,
                   const std::vector<std::vector<int>>& chains, int alpha) {
  const FiniteLattice& L = S.lattice();
  if (!passes(S, AxiomSuite::Strong))
    throw PreconditionError(
        "the level supremum exchange needs the strong axiom set");
  if (chains.empty()) throw PreconditionError("need at least one chain");
  size_t len = 0;
  for (const auto& c : chains) {
    if (c.empty()) throw PreconditionError("chains must be nonempty");
    for (size_t i = 0; i + 1 < c.size(); ++i)
      if (!S.below_at(alpha, c[i], c[i + 1]))
        throw PreconditionError("chain entries must increase at level " +
                                std::to_string(alpha));
    len = std::max(len, c.size());
  }

  int lhs = L.bottom();
  for (const auto& c : chains) {
    Mask xs = 0;
    for (int x : c) xs |= bit(x);
    lhs = L.join(lhs, sqcup_alpha(S, xs, alpha, c.front()));
  }

  // Shorter chains are padded with their last element, which changes no
  // set of members and keeps the pointwise joins defined.
  auto at = [&](const std::vector<int>& c, size_t i) {
    return i < c.size() ? c[i] : c.back();
  };
  std::vector<int> joined(len);
  for (size_t i = 0; i < len; ++i) {
    int j = L.bottom();
    for (const auto& c : chains) j = L.join(j, at(c, i));
    joined[i] = j;
  }
  for (size_t i = 0; i + 1 < len; ++i)
    if (!S.below_at(alpha, joined[i], joined[i + 1]))
      throw InternalError(
          "pointwise joins of increasing chains failed to increase in a "
          "strong model");
  Mask ys = 0;
  for (int y : joined) ys |= bit(y);
  int rhs = sqcup_alpha(S, ys, alpha, joined.front());
  return S.eq_at(alpha, lhs, rhs);
}

}  // namespace stratlat
