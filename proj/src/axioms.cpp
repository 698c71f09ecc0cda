#include "stratlat/stratified.hpp"

namespace stratlat {

namespace {

std::string lv(int alpha) { return std::to_string(alpha); }

AxiomResult passed(const char* name) {
  AxiomResult r;
  r.name = name;
  return r;
}

AxiomResult check_a1(const StratifiedLattice& S) {
  AxiomResult r = passed("A1");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha < S.depth(); ++alpha)
    for (int beta = alpha + 1; beta <= S.depth(); ++beta)
      for (int x = 0; x < S.size(); ++x)
        for (int y = 0; y < S.size(); ++y)
          if (S.below_at(beta, x, y) && !S.eq_at(alpha, x, y)) {
            r.ok = false;
            r.alpha = alpha;
            r.beta = beta;
            r.witness = {x, y};
            r.detail = L.label(x) + " below_" + lv(beta) + " " + L.label(y) +
                       " but the two are not eq_" + lv(alpha);
            return r;
          }
  return r;
}

AxiomResult check_a2(const StratifiedLattice& S) {
  AxiomResult r = passed("A2");
  const auto& L = S.lattice();
  for (int x = 0; x < S.size(); ++x)
    for (int y = x + 1; y < S.size(); ++y) {
      bool all_eq = true;
      for (int alpha = 0; alpha <= S.depth() && all_eq; ++alpha)
        all_eq = S.eq_at(alpha, x, y);
      if (all_eq) {
        r.ok = false;
        r.witness = {x, y};
        r.detail = L.label(x) + " and " + L.label(y) +
                   " are eq at every level but distinct";
        return r;
      }
    }
  return r;
}

AxiomResult check_restriction_witness(const StratifiedLattice& S,
                                      const char* name) {
  AxiomResult r = passed(name);
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x = 0; x < S.size(); ++x) {
      int m = S.restrict(x, alpha);
      if (!S.eq_at(alpha, m, x)) {
        r.ok = false;
        r.alpha = alpha;
        r.witness = {x, m};
        r.detail = "the meet of the below_" + lv(alpha) + " up-set of " +
                   L.label(x) + " is " + L.label(m) +
                   ", which is not eq_" + lv(alpha) + " to it";
        return r;
      }
    }
  return r;
}

AxiomResult check_a3(const StratifiedLattice& S) {
  return check_restriction_witness(S, "A3");
}

AxiomResult check_a3d(const StratifiedLattice& S) {
  AxiomResult r = passed("A3d");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x = 0; x < S.size(); ++x) {
      int j = S.corestrict(x, alpha);
      if (!S.eq_at(alpha, j, x)) {
        r.ok = false;
        r.alpha = alpha;
        r.witness = {x, j};
        r.detail = "the join of the below_" + lv(alpha) + " down-set of " +
                   L.label(x) + " is " + L.label(j) +
                   ", which is not eq_" + lv(alpha) + " to it";
        return r;
      }
    }
  return r;
}

AxiomResult check_a4(const StratifiedLattice& S) {
  AxiomResult r = passed("A4");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x1 = 0; x1 < S.size(); ++x1)
      for (int x2 = x1 + 1; x2 < S.size(); ++x2) {
        if (!S.eq_at(alpha, x1, x2)) continue;
        int j = L.join(x1, x2);
        if (!S.eq_at(alpha, j, x1)) {
          r.ok = false;
          r.alpha = alpha;
          r.witness = {x1, x2, j};
          r.detail = "eq_" + lv(alpha) + " class of " + L.label(x1) +
                     " is not closed under join: " + L.label(x1) + " v " +
                     L.label(x2) + " = " + L.label(j);
          return r;
        }
      }
  return r;
}

AxiomResult check_a4d(const StratifiedLattice& S) {
  AxiomResult r = passed("A4d");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x1 = 0; x1 < S.size(); ++x1)
      for (int x2 = x1 + 1; x2 < S.size(); ++x2) {
        if (!S.eq_at(alpha, x1, x2)) continue;
        int m = L.meet(x1, x2);
        if (!S.eq_at(alpha, m, x1)) {
          r.ok = false;
          r.alpha = alpha;
          r.witness = {x1, x2, m};
          r.detail = "eq_" + lv(alpha) + " class of " + L.label(x1) +
                     " is not closed under meet: " + L.label(x1) + " ^ " +
                     L.label(x2) + " = " + L.label(m);
          return r;
        }
      }
  return r;
}

AxiomResult check_a4star(const StratifiedLattice& S) {
  AxiomResult r = passed("A4*");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x1 = 0; x1 < S.size(); ++x1)
      for (int y1 = 0; y1 < S.size(); ++y1) {
        if (!S.eq_at(alpha, x1, y1)) continue;
        for (int x2 = 0; x2 < S.size(); ++x2)
          for (int y2 = 0; y2 < S.size(); ++y2) {
            if (!S.eq_at(alpha, x2, y2)) continue;
            if (!S.eq_at(alpha, L.join(x1, x2), L.join(y1, y2))) {
              r.ok = false;
              r.alpha = alpha;
              r.witness = {x1, y1, x2, y2};
              r.detail = L.label(x1) + " eq_" + lv(alpha) + " " + L.label(y1) +
                         " and " + L.label(x2) + " eq_" + lv(alpha) + " " +
                         L.label(y2) + " but " + L.label(L.join(x1, x2)) +
                         " is not eq_" + lv(alpha) + " " +
                         L.label(L.join(y1, y2));
              return r;
            }
          }
      }
  return r;
}

AxiomResult check_a4stard(const StratifiedLattice& S) {
  AxiomResult r = passed("A4*d");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x1 = 0; x1 < S.size(); ++x1)
      for (int y1 = 0; y1 < S.size(); ++y1) {
        if (!S.eq_at(alpha, x1, y1)) continue;
        for (int x2 = 0; x2 < S.size(); ++x2)
          for (int y2 = 0; y2 < S.size(); ++y2) {
            if (!S.eq_at(alpha, x2, y2)) continue;
            if (!S.eq_at(alpha, L.meet(x1, x2), L.meet(y1, y2))) {
              r.ok = false;
              r.alpha = alpha;
              r.witness = {x1, y1, x2, y2};
              r.detail = L.label(x1) + " eq_" + lv(alpha) + " " + L.label(y1) +
                         " and " + L.label(x2) + " eq_" + lv(alpha) + " " +
                         L.label(y2) + " but " + L.label(L.meet(x1, x2)) +
                         " is not eq_" + lv(alpha) + " " +
                         L.label(L.meet(y1, y2));
              return r;
            }
          }
      }
  return r;
}

AxiomResult check_restrict_monotone(const StratifiedLattice& S,
                                    const char* name) {
  AxiomResult r = passed(name);
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        if (!L.leq(x, y)) continue;
        if (!L.leq(S.restrict(x, alpha), S.restrict(y, alpha))) {
          r.ok = false;
          r.alpha = alpha;
          r.witness = {x, y};
          r.detail = L.label(x) + " <= " + L.label(y) +
                     " but their level-" + lv(alpha) +
                     " restrictions are not ordered";
          return r;
        }
      }
  return r;
}

AxiomResult check_a5(const StratifiedLattice& S) {
  return check_restrict_monotone(S, "A5");
}

AxiomResult check_a5d(const StratifiedLattice& S) {
  AxiomResult r = passed("A5d");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        if (!L.leq(x, y)) continue;
        if (!L.leq(S.corestrict(x, alpha), S.corestrict(y, alpha))) {
          r.ok = false;
          r.alpha = alpha;
          r.witness = {x, y};
          r.detail = L.label(x) + " <= " + L.label(y) +
                     " but their level-" + lv(alpha) +
                     " corestrictions are not ordered";
          return r;
        }
      }
  return r;
}

AxiomResult check_a6(const StratifiedLattice& S) {
  AxiomResult r = passed("A6");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        if (!L.leq(x, y)) continue;
        bool agree_below = true;
        for (int beta = 0; beta < alpha && agree_below; ++beta)
          agree_below = S.eq_at(beta, x, y);
        if (agree_below && !S.below_at(alpha, x, y)) {
          r.ok = false;
          r.alpha = alpha;
          r.witness = {x, y};
          r.detail = L.label(x) + " <= " + L.label(y) +
                     " and the two are eq below level " + lv(alpha) +
                     " but not below_" + lv(alpha);
          return r;
        }
      }
  return r;
}

AxiomResult check_b1(const StratifiedLattice& S) {
  AxiomResult r = passed("B1");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int beta = 0; beta <= alpha; ++beta)
      for (int x = 0; x < S.size(); ++x) {
        if (S.restrict(S.restrict(x, alpha), beta) != S.restrict(x, beta)) {
          r.ok = false;
          r.alpha = alpha;
          r.beta = beta;
          r.witness = {x};
          r.detail = "restricting " + L.label(x) + " to level " + lv(alpha) +
                     " then to level " + lv(beta) +
                     " differs from restricting to level " + lv(beta);
          return r;
        }
      }
  return r;
}

AxiomResult check_b2star(const StratifiedLattice& S) {
  AxiomResult r = passed("B2*");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha) {
    if (S.restrict(L.bottom(), alpha) != L.bottom()) {
      r.ok = false;
      r.alpha = alpha;
      r.witness = {L.bottom()};
      r.detail = "the level-" + lv(alpha) + " restriction of bottom is " +
                 L.label(S.restrict(L.bottom(), alpha));
      return r;
    }
    for (int x = 0; x < S.size(); ++x)
      for (int y = x + 1; y < S.size(); ++y) {
        int lhs = S.restrict(L.join(x, y), alpha);
        int rhs = L.join(S.restrict(x, alpha), S.restrict(y, alpha));
        if (lhs != rhs) {
          r.ok = false;
          r.alpha = alpha;
          r.witness = {x, y};
          r.detail = "restriction to level " + lv(alpha) +
                     " does not distribute over " + L.label(x) + " v " +
                     L.label(y) + ": " + L.label(lhs) + " vs " + L.label(rhs);
          return r;
        }
      }
  }
  return r;
}

AxiomResult check_b3(const StratifiedLattice& S) {
  AxiomResult r = passed("B3");
  const auto& L = S.lattice();
  for (int x = 0; x < S.size(); ++x) {
    int acc = L.bottom();
    for (int alpha = 0; alpha <= S.depth(); ++alpha)
      acc = L.join(acc, S.restrict(x, alpha));
    if (acc != x) {
      r.ok = false;
      r.witness = {x};
      r.detail = "the joined restrictions of " + L.label(x) + " give " +
                 L.label(acc);
      return r;
    }
  }
  return r;
}

AxiomResult check_b4(const StratifiedLattice& S) {
  AxiomResult r = passed("B4");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x1 = 0; x1 < S.size(); ++x1)
      for (int x2 = x1 + 1; x2 < S.size(); ++x2) {
        if (S.restrict(x1, alpha) != S.restrict(x2, alpha)) continue;
        int j = L.join(x1, x2);
        if (S.restrict(j, alpha) != S.restrict(x1, alpha)) {
          r.ok = false;
          r.alpha = alpha;
          r.witness = {x1, x2, j};
          r.detail = "the level-" + lv(alpha) + " fiber of " +
                     L.label(S.restrict(x1, alpha)) +
                     " is not closed under join: " + L.label(x1) + " v " +
                     L.label(x2) + " = " + L.label(j);
          return r;
        }
      }
  return r;
}

AxiomResult check_d(const StratifiedLattice& S) {
  AxiomResult r = passed("D");
  const auto& L = S.lattice();
  for (int alpha = 0; alpha <= S.depth(); ++alpha)
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        bool stored = S.below_at(alpha, x, y);
        bool rebuilt = L.leq(S.restrict(x, alpha), S.restrict(y, alpha));
        for (int beta = 0; beta < alpha && rebuilt; ++beta)
          rebuilt = S.restrict(x, beta) == S.restrict(y, beta);
        if (stored != rebuilt) {
          r.ok = false;
          r.alpha = alpha;
          r.witness = {x, y};
          r.detail = std::string("below_") + lv(alpha) + " on (" + L.label(x) +
                     ", " + L.label(y) + ") is " + (stored ? "set" : "clear") +
                     " but its reconstruction from restrictions is " +
                     (rebuilt ? "set" : "clear");
          return r;
        }
      }
  return r;
}

AxiomResult check_c(const StratifiedLattice& S) {
  return check_restriction_witness(S, "C");
}

AxiomResult check_b2(const StratifiedLattice& S) {
  return check_restrict_monotone(S, "B2");
}

}  // namespace

std::vector<AxiomResult> check_axioms(const StratifiedLattice& S,
                                      AxiomSuite suite) {
  switch (suite) {
    case AxiomSuite::Model:
      return {check_a1(S), check_a2(S), check_a3(S),
              check_a4(S), check_a5(S), check_a6(S)};
    case AxiomSuite::Strong:
      return {check_a1(S), check_a2(S),     check_a3(S),
              check_a4star(S), check_a5(S), check_a6(S)};
    case AxiomSuite::Dual:
      return {check_a1(S),  check_a2(S),  check_a3d(S),
              check_a4d(S), check_a5d(S), check_a6(S)};
    case AxiomSuite::StrongDual:
      return {check_a1(S),      check_a2(S),  check_a3d(S),
              check_a4stard(S), check_a5d(S), check_a6(S)};
    case AxiomSuite::Symmetric:
      return {check_a1(S),  check_a2(S),  check_a3(S),
              check_a4(S),  check_a5(S),  check_a6(S),
              check_a3d(S), check_a4d(S), check_a5d(S)};
    case AxiomSuite::B:
      return {check_b1(S), check_b2(S), check_b2star(S), check_b3(S),
              check_b4(S), check_d(S),  check_c(S)};
  }
  throw InternalError("unknown axiom suite");
}

bool all_ok(const std::vector<AxiomResult>& results) {
  for (const auto& r : results)
    if (!r.ok) return false;
  return true;
}

bool passes(const StratifiedLattice& S, AxiomSuite suite) {
  return all_ok(check_axioms(S, suite));
}

std::string Classification::name() const {
  if (strong_symmetric) return "strong-symmetric";
  if (symmetric) return "symmetric";
  if (strong) return "strong";
  if (model) return "model";
  return "not-model";
}

Classification classify(const StratifiedLattice& S) {
  Classification c;
  c.model = passes(S, AxiomSuite::Model);
  c.strong = passes(S, AxiomSuite::Strong);
  c.dual_model = passes(S, AxiomSuite::Dual);
  c.strong_dual = passes(S, AxiomSuite::StrongDual);
  c.symmetric = passes(S, AxiomSuite::Symmetric);
  c.strong_symmetric = c.strong && c.strong_dual;
  return c;
}

std::vector<AxiomResult> b_axiomatization_round_trip(
    const StratifiedLattice& S) {
  if (!passes(S, AxiomSuite::Model))
    throw PreconditionError(
        "the restriction-map round trip needs the base axiom set");
  std::vector<AxiomResult> out;
  out.push_back(check_c(S));  // the extracted maps pick class representatives
  out.push_back(check_b1(S));
  out.push_back(check_b2(S));
  if (passes(S, AxiomSuite::Strong)) out.push_back(check_b2star(S));
  out.push_back(check_b3(S));
  out.push_back(check_b4(S));
  out.push_back(check_d(S));  // rebuilt level relations match the stored ones
  return out;
}

}  // namespace stratlat
