#include "stratlat/lp.hpp"

#include "stratlat/errors.hpp"

namespace stratlat {

namespace {

// Least model of the positive reduct of P with respect to the assumed
// set: rules with a negated atom in `assumed` are dropped, remaining
// negative literals are erased, and the positive remainder is saturated.
std::vector<bool> reduct_least_model(const Program& P,
                                     const std::vector<bool>& assumed) {
  std::vector<bool> T(P.atom_count(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : P.rules) {
      if (T[r.head]) continue;
      bool fires = true;
      for (const Literal& l : r.body) {
        if (l.positive ? !T[l.atom] : assumed[l.atom]) {
          fires = false;
          break;
        }
      }
      if (fires) {
        T[r.head] = true;
        changed = true;
      }
    }
  }
  return T;
}

}  // namespace

std::vector<Truth3> wfs_oracle(const Program& P) {
  const int k = P.atom_count();
  std::vector<bool> certain(k, false);
  std::vector<bool> possible(k, false);
  // The doubled reduct operator is monotone in the certain set, and the
  // certain set only grows, so this settles within one round per atom.
  for (int round = 0; round <= k + 1; ++round) {
    possible = reduct_least_model(P, certain);
    std::vector<bool> next = reduct_least_model(P, possible);
    if (next == certain) {
      std::vector<Truth3> out(k);
      for (int z = 0; z < k; ++z)
        out[z] = certain[z] ? Truth3::True
                            : (possible[z] ? Truth3::Undef : Truth3::False);
      return out;
    }
    certain = std::move(next);
  }
  throw InternalError("alternating fixpoint did not settle");
}

}  // namespace stratlat
