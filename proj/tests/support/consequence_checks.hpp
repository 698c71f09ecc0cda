#pragma once

// Derived order-theoretic laws that hold on every structure passing the
// model axioms: how restrictions interact with the lattice order, the
// level preorders, and each other.  One law additionally needs the join
// congruence A4* and is marked strong_only.
//
// Each law scans the whole structure and reports the first violation as a
// labelled description, so a failing corpus run can be replayed by hand.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stratlat/stratified.hpp"

namespace conseq {

using stratlat::Mask;
using stratlat::StratifiedLattice;

struct Violation {
  std::string law;
  std::string detail;
};

struct Law {
  std::string name;
  bool strong_only = false;
  std::function<std::optional<std::string>(const StratifiedLattice&)> run;
};

namespace detail {

inline std::string lab(const StratifiedLattice& s, int x) {
  return s.lattice().label(x);
}

inline std::string set_labels(const StratifiedLattice& s, Mask xs) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  stratlat::for_each_bit(xs, [&](int x) {
    if (!first) out << ",";
    first = false;
    out << lab(s, x);
  });
  out << "}";
  return out.str();
}

// The restriction of x is equivalent to x at its level, sits below x in
// the lattice order, and is the least element of the equivalence class.
inline std::optional<std::string> restriction_canonical(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (int x = 0; x < s.size(); ++x) {
      const int r = s.restrict(x, alpha);
      if (!s.eq_at(alpha, x, r))
        return "restrict(" + lab(s, x) + "," + std::to_string(alpha) +
               ")=" + lab(s, r) + " not eq_" + std::to_string(alpha) +
               " to " + lab(s, x);
      if (!lat.leq(r, x))
        return "restrict(" + lab(s, x) + "," + std::to_string(alpha) +
               ")=" + lab(s, r) + " not <= " + lab(s, x);
      bool least = true;
      stratlat::for_each_bit(s.class_mask(alpha, x), [&](int y) {
        if (!lat.leq(r, y)) least = false;
      });
      if (!least)
        return "restrict(" + lab(s, x) + "," + std::to_string(alpha) +
               ")=" + lab(s, r) + " not least in its class";
    }
  }
  return std::nullopt;
}

// x below_alpha y is unchanged when either side is replaced by its
// level-alpha restriction.
inline std::optional<std::string> preorder_via_restriction(
    const StratifiedLattice& s) {
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (int x = 0; x < s.size(); ++x) {
      const int rx = s.restrict(x, alpha);
      for (int y = 0; y < s.size(); ++y) {
        const int ry = s.restrict(y, alpha);
        const bool base = s.below_at(alpha, x, y);
        if (s.below_at(alpha, rx, y) != base ||
            s.below_at(alpha, x, ry) != base ||
            s.below_at(alpha, rx, ry) != base)
          return "below_" + std::to_string(alpha) + "(" + lab(s, x) + "," +
                 lab(s, y) + ") changes under restriction";
      }
    }
  }
  return std::nullopt;
}

// x eq_alpha y is unchanged under restriction, and holds exactly when the
// two restrictions are the same element.
inline std::optional<std::string> eq_via_restriction(
    const StratifiedLattice& s) {
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (int x = 0; x < s.size(); ++x) {
      const int rx = s.restrict(x, alpha);
      for (int y = 0; y < s.size(); ++y) {
        const int ry = s.restrict(y, alpha);
        const bool base = s.eq_at(alpha, x, y);
        if (s.eq_at(alpha, rx, y) != base || s.eq_at(alpha, rx, ry) != base ||
            (rx == ry) != base)
          return "eq_" + std::to_string(alpha) + "(" + lab(s, x) + "," +
                 lab(s, y) + ") changes under restriction";
      }
    }
  }
  return std::nullopt;
}

// Restrictions of one element form a chain: for alpha < beta the earlier
// one is below the later one and equivalent to it at the earlier level.
inline std::optional<std::string> restriction_chain(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (int beta = alpha + 1; beta <= s.depth(); ++beta) {
      for (int x = 0; x < s.size(); ++x) {
        const int ra = s.restrict(x, alpha);
        const int rb = s.restrict(x, beta);
        if (!s.eq_at(alpha, ra, rb) || !lat.leq(ra, rb))
          return "restrictions of " + lab(s, x) + " at levels " +
                 std::to_string(alpha) + " < " + std::to_string(beta) +
                 " fail the chain law";
      }
    }
  }
  return std::nullopt;
}

// Composing restrictions keeps the smaller level:
// restrict(restrict(x, alpha), beta) is restrict(x, min(alpha, beta)).
inline std::optional<std::string> restriction_absorption(
    const StratifiedLattice& s) {
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (int beta = 0; beta <= s.depth(); ++beta) {
      for (int x = 0; x < s.size(); ++x) {
        const int expect = s.restrict(x, std::min(alpha, beta));
        const int got = s.restrict(s.restrict(x, alpha), beta);
        if (got != expect)
          return "restrict(restrict(" + lab(s, x) + "," +
                 std::to_string(alpha) + ")," + std::to_string(beta) +
                 ")=" + lab(s, got) + ", expected " + lab(s, expect);
      }
    }
  }
  return std::nullopt;
}

// Every element is the join of its restrictions across all levels.
inline std::optional<std::string> join_of_restrictions(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  for (int x = 0; x < s.size(); ++x) {
    Mask parts = 0;
    for (int alpha = 0; alpha <= s.depth(); ++alpha)
      parts |= stratlat::bit(s.restrict(x, alpha));
    const int j = lat.join_all(parts);
    if (j != x)
      return "join of restrictions of " + lab(s, x) + " is " + lab(s, j);
  }
  return std::nullopt;
}

// The lattice order is determined levelwise: x <= y holds exactly when
// every pair of same-level restrictions is ordered.
inline std::optional<std::string> order_via_restrictions(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  for (int x = 0; x < s.size(); ++x) {
    for (int y = 0; y < s.size(); ++y) {
      bool levelwise = true;
      for (int alpha = 0; alpha <= s.depth() && levelwise; ++alpha)
        if (!lat.leq(s.restrict(x, alpha), s.restrict(y, alpha)))
          levelwise = false;
      if (lat.leq(x, y) != levelwise)
        return "<=(" + lab(s, x) + "," + lab(s, y) +
               ") disagrees with the levelwise comparison";
    }
  }
  return std::nullopt;
}

// A restriction sits below y exactly when it sits below y's restriction
// at the same level.
inline std::optional<std::string> restriction_bound(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (int x = 0; x < s.size(); ++x) {
      const int rx = s.restrict(x, alpha);
      for (int y = 0; y < s.size(); ++y)
        if (lat.leq(rx, y) != lat.leq(rx, s.restrict(y, alpha)))
          return "restrict(" + lab(s, x) + "," + std::to_string(alpha) +
                 ") <= " + lab(s, y) + " disagrees with the restricted form";
    }
  }
  return std::nullopt;
}

// x below_alpha y decomposes into an order comparison of restrictions
// plus equivalence at every earlier level, in two equivalent forms.
inline std::optional<std::string> preorder_decomposition(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (int x = 0; x < s.size(); ++x) {
      const int rx = s.restrict(x, alpha);
      for (int y = 0; y < s.size(); ++y) {
        bool prefix = true;
        for (int beta = 0; beta < alpha && prefix; ++beta)
          if (!s.eq_at(beta, x, y)) prefix = false;
        const bool base = s.below_at(alpha, x, y);
        const bool via_pair = prefix && lat.leq(rx, s.restrict(y, alpha));
        const bool via_elem = prefix && lat.leq(rx, y);
        if (base != via_pair || base != via_elem)
          return "below_" + std::to_string(alpha) + "(" + lab(s, x) + "," +
                 lab(s, y) + ") fails the order-plus-prefix decomposition";
      }
    }
  }
  return std::nullopt;
}

// The same decomposition applied to a pair of restrictions: prefix
// equivalence becomes equivalence of the earlier restrictions.
inline std::optional<std::string> restricted_preorder_decomposition(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (int x = 0; x < s.size(); ++x) {
      const int rx = s.restrict(x, alpha);
      for (int y = 0; y < s.size(); ++y) {
        const int ry = s.restrict(y, alpha);
        bool prefix = true;
        for (int beta = 0; beta < alpha && prefix; ++beta)
          if (!s.eq_at(beta, s.restrict(x, beta), s.restrict(y, beta)))
            prefix = false;
        if (s.below_at(alpha, rx, ry) != (prefix && lat.leq(rx, ry)))
          return "below_" + std::to_string(alpha) + " on restrictions of (" +
                 lab(s, x) + "," + lab(s, y) + ") fails the decomposition";
      }
    }
  }
  return std::nullopt;
}

// On the restriction image the prefix condition sharpens to equality of
// the earlier restrictions.
inline std::optional<std::string> carrier_preorder_decomposition(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    const Mask carrier = s.restriction_image(alpha);
    std::optional<std::string> bad;
    stratlat::for_each_bit(carrier, [&](int x) {
      stratlat::for_each_bit(carrier, [&](int y) {
        if (bad) return;
        bool prefix = true;
        for (int beta = 0; beta < alpha && prefix; ++beta)
          if (s.restrict(x, beta) != s.restrict(y, beta)) prefix = false;
        const bool decomposed =
            prefix && lat.leq(s.restrict(x, alpha), s.restrict(y, alpha));
        if (s.below_at(alpha, x, y) != decomposed)
          bad = "below_" + std::to_string(alpha) + "(" + lab(s, x) + "," +
                lab(s, y) + ") on the level carrier fails the decomposition";
      });
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

// Restriction commutes with arbitrary joins.  Needs A4*: on a model that
// is not strong this law can fail.
inline std::optional<std::string> restriction_join_commute(
    const StratifiedLattice& s) {
  const auto& lat = s.lattice();
  const Mask all = lat.all_mask();
  for (int alpha = 0; alpha <= s.depth(); ++alpha) {
    for (Mask xs = 0;; ++xs) {
      Mask restricted = 0;
      stratlat::for_each_bit(xs, [&](int x) {
        restricted |= stratlat::bit(s.restrict(x, alpha));
      });
      if (lat.join_all(restricted) != s.restrict(lat.join_all(xs), alpha))
        return "join and restrict at level " + std::to_string(alpha) +
               " disagree on " + set_labels(s, xs);
      if (xs == all) break;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline const std::vector<Law>& model_laws() {
  static const std::vector<Law> laws = {
      {"restriction-canonical", false, detail::restriction_canonical},
      {"preorder-via-restriction", false, detail::preorder_via_restriction},
      {"eq-via-restriction", false, detail::eq_via_restriction},
      {"restriction-chain", false, detail::restriction_chain},
      {"restriction-absorption", false, detail::restriction_absorption},
      {"join-of-restrictions", false, detail::join_of_restrictions},
      {"order-via-restrictions", false, detail::order_via_restrictions},
      {"restriction-bound", false, detail::restriction_bound},
      {"preorder-decomposition", false, detail::preorder_decomposition},
      {"restricted-preorder-decomposition", false,
       detail::restricted_preorder_decomposition},
      {"carrier-preorder-decomposition", false,
       detail::carrier_preorder_decomposition},
      {"restriction-join-commute", true, detail::restriction_join_commute},
  };
  return laws;
}

// Runs every law that applies (all of them when strong is set) and
// returns the first violation.
inline std::optional<Violation> check_model_laws(const StratifiedLattice& s,
                                                 bool strong) {
  for (const auto& law : model_laws()) {
    if (law.strong_only && !strong) continue;
    if (auto bad = law.run(s)) return Violation{law.name, *bad};
  }
  return std::nullopt;
}

}  // namespace conseq
