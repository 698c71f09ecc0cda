#include "stratlat/fixpoint.hpp"

#include <random>
#include <string>

#include "stratlat/errors.hpp"

namespace stratlat {

namespace {

void validate_endo(const EndoFunction& f) {
  if (!f.model) throw PreconditionError("endofunction has no model");
  const int n = f.model->size();
  if (static_cast<int>(f.table.size()) != n)
    throw PreconditionError("function table is not total");
  for (int v : f.table)
    if (v < 0 || v >= n)
      throw PreconditionError("function table leaves the lattice");
}

void require_weakly_monotone(const EndoFunction& f) {
  MonotoneCheck mc = weak_monotonicity_check(f);
  if (!mc.ok) {
    const FiniteLattice& L = f.model->lattice();
    throw NotWeaklyMonotoneError(
        "level " + std::to_string(mc.alpha) + " monotonicity fails at (" +
        L.label(mc.witness.first) + ", " + L.label(mc.witness.second) + ")");
  }
}

void require_model(const StratifiedLattice& S) {
  for (const auto& r : check_axioms(S, AxiomSuite::Model))
    if (!r.ok)
      throw NotAModelError("fixed-point construction needs a model: " +
                           r.name + " fails (" + r.detail + ")");
}

}  // namespace

MonotoneCheck is_alpha_monotone(const EndoFunction& f, int alpha) {
  validate_endo(f);
  const StratifiedLattice& S = *f.model;
  MonotoneCheck mc;
  mc.alpha = alpha;
  for (int x = 0; x < S.size(); ++x)
    for (int y = 0; y < S.size(); ++y)
      if (S.below_at(alpha, x, y) && !S.below_at(alpha, f(x), f(y))) {
        mc.ok = false;
        mc.witness = {x, y};
        return mc;
      }
  return mc;
}

MonotoneCheck weak_monotonicity_check(const EndoFunction& f) {
  validate_endo(f);
  for (int alpha = 0; alpha <= f.model->depth(); ++alpha) {
    MonotoneCheck mc = is_alpha_monotone(f, alpha);
    if (!mc.ok) return mc;
  }
  return {};
}

bool is_weakly_monotone(const EndoFunction& f) {
  return weak_monotonicity_check(f).ok;
}

LevelFamily level_components(const EndoFunction& f) {
  validate_endo(f);
  require_weakly_monotone(f);
  const StratifiedLattice& S = *f.model;
  require_model(S);
  const FiniteLattice& L = S.lattice();
  const int D = S.depth();

  LevelFamily fam;
  fam.model = f.model;
  for (int alpha = 0; alpha <= D; ++alpha) {
    Mask carrier = S.restriction_image(alpha);
    std::vector<int> table(S.size(), -1);
    for_each_bit(carrier,
                 [&](int u) { table[u] = S.restrict(f(u), alpha); });
    fam.carriers.push_back(carrier);
    fam.tables.push_back(std::move(table));
  }

  // Everything below is a consequence of weak monotonicity on a model;
  // a failure indicates a bug in the factorization, not bad input.
  for (int alpha = 0; alpha <= D; ++alpha) {
    for_each_bit(fam.carriers[alpha], [&](int u) {
      for_each_bit(fam.carriers[alpha], [&](int v) {
        if (!L.leq(u, v)) return;
        for (int beta = 0; beta < alpha; ++beta)
          if (S.restrict(u, beta) != S.restrict(v, beta)) return;
        if (!L.leq(fam.apply(alpha, u), fam.apply(alpha, v)))
          throw InternalError("level " + std::to_string(alpha) +
                              " component is not conditionally monotone at (" +
                              L.label(u) + ", " + L.label(v) + ")");
      });
    });
  }
  fam.conditionally_monotone = true;

  for (int alpha = 0; alpha <= D; ++alpha)
    for (int beta = 0; beta < alpha; ++beta)
      for_each_bit(fam.carriers[alpha], [&](int u) {
        if (S.restrict(fam.apply(alpha, u), beta) !=
            fam.apply(beta, S.restrict(u, beta)))
          throw InternalError(
              "components at levels " + std::to_string(alpha) + " and " +
              std::to_string(beta) + " do not commute with restriction at " +
              L.label(u));
      });
  fam.compatible = true;

  for (int x = 0; x < S.size(); ++x)
    for (int alpha = 0; alpha <= D; ++alpha)
      if (S.restrict(f(x), alpha) != fam.apply(alpha, S.restrict(x, alpha)))
        throw InternalError("components do not reassemble f at " + L.label(x) +
                            ", level " + std::to_string(alpha));
  fam.reassembles = true;
  return fam;
}

namespace {

// Shared scaffolding for the two directed constructions.  Per level the
// working sublattice K is the carrier cut down to the elements whose
// restrictions reproduce the prefix fixed so far; K is a closed interval,
// so its joins are ambient joins and its meets are restricted ambient
// meets.  Escape from K or non-convergence within |K| steps contradicts
// the underlying theorem and is reported as an internal failure.
struct LevelContext {
  Mask carrier = 0;
  Mask cell = 0;
  Mask K = 0;
  Mask survivors = 0;  // components of the seeds whose prefix still matches
};

LevelContext level_context(const StratifiedLattice& S, const LevelFamily& fam,
                           int alpha, const std::vector<int>& prefix,
                           Mask seeds) {
  LevelContext ctx;
  ctx.carrier = fam.carriers[alpha];
  ctx.cell = S.cell_mask(prefix);
  ctx.K = ctx.carrier & ctx.cell;
  if (ctx.K == 0)
    throw InternalError("empty working sublattice at level " +
                        std::to_string(alpha));
  for_each_bit(seeds, [&](int x) {
    if (has_bit(ctx.cell, x)) ctx.survivors |= bit(S.restrict(x, alpha));
  });
  return ctx;
}

LfpResult run_lfp_above(const EndoFunction& f, Mask post_fixed) {
  validate_endo(f);
  require_weakly_monotone(f);
  const StratifiedLattice& S = *f.model;
  const FiniteLattice& L = S.lattice();
  for_each_bit(post_fixed, [&](int x) {
    if (!L.leq(x, f(x)))
      throw PreconditionError("seed " + L.label(x) +
                              " is not a post-fixed point");
  });
  LevelFamily fam = level_components(f);

  LfpResult out;
  std::vector<int> prefix;
  for (int alpha = 0; alpha <= S.depth(); ++alpha) {
    LevelContext ctx = level_context(S, fam, alpha, prefix, post_fixed);
    int least = alpha == 0 ? L.bottom() : prefix.back();
    if (!has_bit(ctx.K, least) || (ctx.K & ~L.up_set(least)) != 0)
      throw InternalError("prefix is not the least element of its level " +
                          std::to_string(alpha) + " sublattice");

    LevelTrace tr;
    tr.alpha = alpha;
    int u = L.join_all(ctx.survivors | bit(least));
    tr.start = u;
    if (!has_bit(ctx.K, u))
      throw InternalError("seed join escapes the level " +
                          std::to_string(alpha) + " sublattice");
    bool converged = false;
    for (int step = 0; step <= popcount(ctx.K); ++step) {
      int next = L.join(u, fam.apply(alpha, u));
      if (next == u) {
        converged = true;
        break;
      }
      if (!has_bit(ctx.K, next))
        throw InternalError("ascending iteration escapes the level " +
                            std::to_string(alpha) + " sublattice at " +
                            L.label(next));
      u = next;
      tr.iterates.push_back(u);
    }
    if (!converged)
      throw InternalError("ascending iteration does not converge at level " +
                          std::to_string(alpha));
    if (fam.apply(alpha, u) != u)
      throw InternalError("ascending iteration stalled on a non-fixed point "
                          "at level " +
                          std::to_string(alpha));
    tr.value = u;
    out.levels.push_back(std::move(tr));
    prefix.push_back(u);
  }

  const int y = prefix.back();
  if (f(y) != y)
    throw InternalError("assembled value " + L.label(y) +
                        " is not a fixed point");
  for_each_bit(post_fixed, [&](int x) {
    if (!lex_leq(S, x, y))
      throw InternalError("assembled value does not dominate seed " +
                          L.label(x));
  });
  for (int z = 0; z < S.size(); ++z) {
    if (!lex_leq(S, f(z), z)) continue;
    bool above_seeds = true;
    for_each_bit(post_fixed, [&](int x) {
      if (!lex_leq(S, x, z)) above_seeds = false;
    });
    if (above_seeds && !lex_leq(S, y, z))
      throw InternalError("assembled value is not least below " + L.label(z));
  }
  out.value = y;
  return out;
}

LfpResult run_gfp_below(const EndoFunction& f, Mask pre_fixed) {
  validate_endo(f);
  require_weakly_monotone(f);
  const StratifiedLattice& S = *f.model;
  const FiniteLattice& L = S.lattice();
  for_each_bit(pre_fixed, [&](int x) {
    if (!L.leq(f(x), x))
      throw PreconditionError("seed " + L.label(x) +
                              " is not a pre-fixed point");
  });
  LevelFamily fam = level_components(f);

  LfpResult out;
  std::vector<int> prefix;
  for (int alpha = 0; alpha <= S.depth(); ++alpha) {
    LevelContext ctx = level_context(S, fam, alpha, prefix, pre_fixed);
    int cap = S.restrict(L.join_all(ctx.cell), alpha);
    if (!has_bit(ctx.K, cap) || (ctx.K & ~L.down_set(cap)) != 0)
      throw InternalError("no greatest element in the level " +
                          std::to_string(alpha) + " sublattice");

    LevelTrace tr;
    tr.alpha = alpha;
    int u = S.restrict(L.meet_all(ctx.survivors | bit(cap)), alpha);
    tr.start = u;
    if (!has_bit(ctx.K, u))
      throw InternalError("seed meet escapes the level " +
                          std::to_string(alpha) + " sublattice");
    bool converged = false;
    for (int step = 0; step <= popcount(ctx.K); ++step) {
      int next = S.restrict(L.meet(u, fam.apply(alpha, u)), alpha);
      if (next == u) {
        converged = true;
        break;
      }
      if (!has_bit(ctx.K, next))
        throw InternalError("descending iteration escapes the level " +
                            std::to_string(alpha) + " sublattice at " +
                            L.label(next));
      u = next;
      tr.iterates.push_back(u);
    }
    if (!converged)
      throw InternalError("descending iteration does not converge at level " +
                          std::to_string(alpha));
    if (fam.apply(alpha, u) != u)
      throw InternalError("descending iteration stalled on a non-fixed point "
                          "at level " +
                          std::to_string(alpha));
    tr.value = u;
    out.levels.push_back(std::move(tr));
    prefix.push_back(u);
  }

  const int y = prefix.back();
  if (f(y) != y)
    throw InternalError("assembled value " + L.label(y) +
                        " is not a fixed point");
  for_each_bit(pre_fixed, [&](int x) {
    if (!lex_leq(S, y, x))
      throw InternalError("assembled value does not stay below seed " +
                          L.label(x));
  });
  for (int z = 0; z < S.size(); ++z) {
    if (!lex_leq(S, z, f(z))) continue;
    bool below_seeds = true;
    for_each_bit(pre_fixed, [&](int x) {
      if (!lex_leq(S, z, x)) below_seeds = false;
    });
    if (below_seeds && !lex_leq(S, z, y))
      throw InternalError("assembled value is not greatest above " +
                          L.label(z));
  }
  out.value = y;
  return out;
}

}  // namespace

LfpResult stratified_lfp_above_trace(const EndoFunction& f, Mask post_fixed) {
  return run_lfp_above(f, post_fixed);
}

int stratified_lfp_above(const EndoFunction& f, Mask post_fixed) {
  return run_lfp_above(f, post_fixed).value;
}

LfpResult stratified_gfp_below_trace(const EndoFunction& f, Mask pre_fixed) {
  return run_gfp_below(f, pre_fixed);
}

int stratified_gfp_below(const EndoFunction& f, Mask pre_fixed) {
  return run_gfp_below(f, pre_fixed).value;
}

LfpResult stratified_lfp_trace(const EndoFunction& f) {
  return run_lfp_above(f, 0);
}

int stratified_lfp(const EndoFunction& f) { return run_lfp_above(f, 0).value; }

namespace {

// Fixed sampling parameters so a sampled run is reproducible; there is
// deliberately no seed parameter on the public call.
constexpr int kSubsetSamples = 4096;
constexpr std::uint64_t kSubsetSeed = 0x51a7f1ed;

void verify_subset_bounds(const StratifiedLattice& S,
                          const std::vector<int>& fix, Mask chosen) {
  // chosen selects positions in fix, not lattice elements.
  const int k = static_cast<int>(fix.size());
  auto bound_exists = [&](bool upper) {
    int best = -1;
    for (int c = 0; c < k; ++c) {
      bool bounds_all = true;
      for (int s = 0; s < k && bounds_all; ++s)
        if (has_bit(chosen, s))
          bounds_all = upper ? lex_leq(S, fix[s], fix[c])
                             : lex_leq(S, fix[c], fix[s]);
      if (!bounds_all) continue;
      if (best == -1)
        best = c;
      else if (upper ? lex_leq(S, fix[c], fix[best])
                     : lex_leq(S, fix[best], fix[c]))
        best = c;
    }
    if (best == -1) return false;
    // The running best only tracked comparable improvements; confirm it
    // really bounds every other candidate.
    for (int c = 0; c < k; ++c) {
      bool bounds_all = true;
      for (int s = 0; s < k && bounds_all; ++s)
        if (has_bit(chosen, s))
          bounds_all = upper ? lex_leq(S, fix[s], fix[c])
                             : lex_leq(S, fix[c], fix[s]);
      if (!bounds_all) continue;
      if (upper ? !lex_leq(S, fix[best], fix[c])
                : !lex_leq(S, fix[c], fix[best]))
        return false;
    }
    return true;
  };
  if (!bound_exists(true))
    throw InternalError("a subset of the fixed points has no least upper "
                        "bound among the fixed points");
  if (!bound_exists(false))
    throw InternalError("a subset of the fixed points has no greatest lower "
                        "bound among the fixed points");
}

}  // namespace

FixedPointLattice fixed_point_lattice(const EndoFunction& f) {
  validate_endo(f);
  require_weakly_monotone(f);
  const StratifiedLattice& S = *f.model;
  require_model(S);

  FixedPointLattice out;
  for (int x = 0; x < S.size(); ++x)
    if (f(x) == x) out.fixed_points.push_back(x);

  const int k = static_cast<int>(out.fixed_points.size());
  if (k <= 12) {
    out.exhaustive = true;
    for (Mask chosen = 0; chosen < (Mask{1} << k); ++chosen) {
      verify_subset_bounds(S, out.fixed_points, chosen);
      ++out.subsets_checked;
    }
  } else {
    out.exhaustive = false;
    std::mt19937_64 gen(kSubsetSeed);
    const Mask all = k == 64 ? ~Mask{0} : (Mask{1} << k) - 1;
    for (int i = 0; i < kSubsetSamples; ++i) {
      verify_subset_bounds(S, out.fixed_points, gen() & all);
      ++out.subsets_checked;
    }
  }
  return out;
}

bool check_supp_post_fixed(const EndoFunction& f, Mask post_fixed) {
  validate_endo(f);
  require_weakly_monotone(f);
  const StratifiedLattice& S = *f.model;
  const FiniteLattice& L = S.lattice();
  for_each_bit(post_fixed, [&](int x) {
    if (!L.leq(x, f(x)))
      throw PreconditionError(L.label(x) + " is not a post-fixed point");
  });
  const int s = lex_sup(S, post_fixed);
  return L.leq(s, f(s));
}

bool check_inf_pre_fixed(const EndoFunction& f, Mask pre_fixed) {
  validate_endo(f);
  require_weakly_monotone(f);
  const StratifiedLattice& S = *f.model;
  const FiniteLattice& L = S.lattice();
  for_each_bit(pre_fixed, [&](int x) {
    if (!L.leq(f(x), x))
      throw PreconditionError(L.label(x) + " is not a pre-fixed point");
  });
  const int i = lex_inf(S, pre_fixed);
  return L.leq(f(i), i);
}

}  // namespace stratlat
