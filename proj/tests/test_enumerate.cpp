#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "stratlat/enumerate.hpp"
#include "support/fixtures.hpp"

using namespace stratlat;
using fixtures::chain_lattice;
using fixtures::diamond_lattice;
using fixtures::kite_lattice;
using fixtures::multiset_lattice7;

namespace {

void close_rows(std::vector<Mask>& rows) {
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i) rows[i] |= bit(i);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (has_bit(rows[i], k)) rows[i] |= rows[k];
}

// Bound existence via minimal-element counting: in a finite poset the
// common upper set has a least member exactly when it has one minimal
// member, and dually below.
bool pairs_have_bounds(const std::vector<Mask>& up, int n) {
  std::vector<Mask> down(n, 0);
  for (int i = 0; i < n; ++i)
    for_each_bit(up[i], [&](int j) { down[j] |= bit(i); });
  auto unique_extreme = [&](Mask candidates, const std::vector<Mask>& side) {
    int extremes = 0;
    for_each_bit(candidates, [&](int c) {
      if ((side[c] & candidates) == bit(c)) ++extremes;
    });
    return extremes == 1;
  };
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (!unique_extreme(up[x] & up[y], down)) return false;
      if (!unique_extreme(down[x] & down[y], up)) return false;
    }
  return true;
}

// Smallest bit-matrix encoding over every relabeling, bottom and top
// included (an order isomorphism has to fix them anyway, which the
// production encoding exploits; this one does not).
std::uint64_t full_canonical(const std::vector<Mask>& up, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i)
      for_each_bit(up[i], [&](int j) {
        code |= std::uint64_t{1} << (perm[i] * n + perm[j]);
      });
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Isomorphism classes of n-element lattices, as full canonical codes.
std::set<std::uint64_t> oracle_lattice_codes(int n) {
  std::set<std::uint64_t> codes;
  std::vector<std::pair<int, int>> seeds;
  for (int i = 1; i + 1 < n; ++i)
    for (int j = i + 1; j + 1 < n; ++j) seeds.emplace_back(i, j);
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << seeds.size());
       ++pick) {
    std::vector<Mask> up(n, 0);
    for (int i = 0; i < n; ++i) up[i] = bit(i) | bit(n - 1);
    up[0] = (n <= 63 ? bit(n) - 1 : ~Mask{0});
    for (size_t b = 0; b < seeds.size(); ++b)
      if ((pick >> b) & 1) up[seeds[b].first] |= bit(seeds[b].second);
    close_rows(up);
    if (!pairs_have_bounds(up, n)) continue;
    codes.insert(full_canonical(up, n));
  }
  return codes;
}

std::vector<Mask> up_rows(const FiniteLattice& L) {
  std::vector<Mask> up(L.size());
  for (int x = 0; x < L.size(); ++x) up[x] = L.up_set(x);
  return up;
}

// The production ordering key: relabelings that keep endpoints fixed.
std::uint64_t pinned_code(const FiniteLattice& L) {
  const int n = L.size();
  std::vector<Mask> up = up_rows(L);
  std::vector<int> mid;
  for (int i = 1; i + 1 < n; ++i) mid.push_back(i);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::vector<int> perm(n);
    perm[0] = 0;
    if (n > 1) perm[n - 1] = n - 1;
    for (size_t t = 0; t < mid.size(); ++t) perm[t + 1] = mid[t];
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i)
      for_each_bit(up[i], [&](int j) {
        code |= std::uint64_t{1} << (perm[i] * n + perm[j]);
      });
    best = std::min(best, code);
  } while (std::next_permutation(mid.begin(), mid.end()));
  return best;
}

// Every reflexively and transitively closed relation on n points, one
// representative per closure, optionally constrained to contain `floor`.
std::vector<std::vector<Mask>> closed_preorders(
    int n, const std::vector<Mask>* floor) {
  std::vector<std::pair<int, int>> free_pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !(floor && has_bit((*floor)[i], j)))
        free_pairs.emplace_back(i, j);
  REQUIRE(free_pairs.size() <= 16);
  std::set<std::vector<Mask>> seen;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << free_pairs.size());
       ++pick) {
    std::vector<Mask> rows(n, 0);
    if (floor) rows = *floor;
    for (size_t b = 0; b < free_pairs.size(); ++b)
      if ((pick >> b) & 1) rows[free_pairs[b].first] |= bit(free_pairs[b].second);
    close_rows(rows);
    seen.insert(std::move(rows));
  }
  return {seen.begin(), seen.end()};
}

// Reference route for the stratification generator: try every family of
// closed preorders whose first level contains the order (forced by A6)
// and whose second stays inside first-level equivalence (forced by A1),
// then keep what the axiom checker accepts.
std::vector<StratifiedPtr> oracle_stratifications(const LatticePtr& lat,
                                                  int depth) {
  REQUIRE(depth <= 2);
  std::vector<StratifiedPtr> out;
  auto keep = [&](std::vector<std::vector<Mask>> rows) {
    StratifiedPtr S = StratifiedLattice::make(lat, std::move(rows));
    if (passes(*S, AxiomSuite::Model)) out.push_back(std::move(S));
  };
  if (depth == 0) {
    keep({});
    return out;
  }
  const std::vector<Mask> leq = up_rows(*lat);
  for (const std::vector<Mask>& r0 : closed_preorders(lat->size(), &leq)) {
    if (depth == 1) {
      keep({r0});
      continue;
    }
    std::vector<Mask> eq0(lat->size(), 0);
    for (int x = 0; x < lat->size(); ++x)
      for_each_bit(r0[x], [&](int y) {
        if (has_bit(r0[y], x)) eq0[x] |= bit(y);
      });
    for (const std::vector<Mask>& r1 : closed_preorders(lat->size(), nullptr)) {
      bool inside = true;
      for (int x = 0; x < lat->size() && inside; ++x)
        inside = (r1[x] & ~eq0[x]) == 0;
      if (inside) keep({r0, r1});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("lattice enumeration hits the known isomorphism counts") {
  const int expected[] = {1, 1, 1, 2, 5, 15, 53};
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    std::vector<LatticePtr> lats = enumerate_lattices(n);
    CHECK(static_cast<int>(lats.size()) == expected[n - 1]);
    std::uint64_t prev = 0;
    for (size_t i = 0; i < lats.size(); ++i) {
      CHECK(lats[i]->size() == n);
      CHECK(lats[i]->label(lats[i]->bottom()) == "e0");
      CHECK(lats[i]->label(lats[i]->top()) == "e" + std::to_string(n - 1));
      std::uint64_t code = pinned_code(*lats[i]);
      if (i > 0) CHECK(prev < code);  // sorted and therefore distinct
      prev = code;
    }
  }

  SUBCASE("they are exactly the classes a relabeling-blind scan finds") {
    for (int n = 1; n <= 5; ++n) {
      CAPTURE(n);
      std::set<std::uint64_t> expected_codes = oracle_lattice_codes(n);
      std::set<std::uint64_t> got;
      for (const LatticePtr& lat : enumerate_lattices(n))
        got.insert(full_canonical(up_rows(*lat), n));
      CHECK(got == expected_codes);
    }
  }

  SUBCASE("out-of-range sizes are refused") {
    CHECK_THROWS_AS(enumerate_lattices(0), BudgetError);
    CHECK_THROWS_AS(enumerate_lattices(8), BudgetError);
  }
}

TEST_CASE("stratification enumeration equals the filtered preorder scan") {
  for (int n = 1; n <= 4; ++n)
    for (const LatticePtr& lat : enumerate_lattices(n))
      for (int depth = 0; depth <= 2; ++depth) {
        CAPTURE(n);
        CAPTURE(depth);
        std::vector<StratifiedPtr> got = enumerate_stratifications(lat, depth);
        std::vector<StratifiedPtr> expected = oracle_stratifications(lat, depth);
        REQUIRE(got.size() == expected.size());
        std::vector<bool> used(expected.size(), false);
        for (const StratifiedPtr& S : got) {
          bool matched = false;
          for (size_t i = 0; i < expected.size() && !matched; ++i)
            if (!used[i] && S->same_structure(*expected[i]))
              matched = used[i] = true;
          CHECK(matched);
        }
      }

  SUBCASE("an identity-only family fails on any two comparable elements") {
    CHECK(enumerate_stratifications(chain_lattice(2), 0).empty());
    CHECK(enumerate_stratifications(chain_lattice(1), 0).size() == 1);
  }

  SUBCASE("the handwritten fixtures are rediscovered") {
    StratifiedPtr strong = fixtures::strong_model_5();
    bool found = false;
    for (const StratifiedPtr& S :
         enumerate_stratifications(kite_lattice(), 2))
      found = found || S->same_structure(*strong);
    CHECK(found);

    StratifiedPtr weak = fixtures::model_not_strong_4();
    found = false;
    for (const StratifiedPtr& S :
         enumerate_stratifications(diamond_lattice(), 2))
      found = found || S->same_structure(*weak);
    CHECK(found);
  }

  SUBCASE("limits are enforced") {
    CHECK_THROWS_AS(enumerate_stratifications(nullptr, 1), PreconditionError);
    CHECK_THROWS_AS(enumerate_stratifications(diamond_lattice(), -1),
                    BudgetError);
    CHECK_THROWS_AS(enumerate_stratifications(diamond_lattice(), 4),
                    BudgetError);
    CHECK_THROWS_AS(enumerate_stratifications(multiset_lattice7(), 1),
                    BudgetError);
  }
}

TEST_CASE("weakly monotone enumeration is exhaustive below six elements") {
  StratifiedPtr chain3 = StratifiedLattice::discrete(chain_lattice(3));
  std::vector<EndoFunction> got =
      enumerate_weakly_monotone(chain3, EnumerationBudget{});

  // On a discrete chain weak monotonicity is plain monotonicity; collect
  // those tables directly, in the same ascending numeric order.
  std::vector<std::vector<int>> expected;
  for (int code = 0; code < 27; ++code) {
    std::vector<int> t{code / 9, (code / 3) % 3, code % 3};
    bool mono = true;
    for (int x = 0; x < 3 && mono; ++x)
      for (int y = x; y < 3 && mono; ++y) mono = t[x] <= t[y];
    if (mono) expected.push_back(std::move(t));
  }
  REQUIRE(expected.size() == 10);
  REQUIRE(got.size() == expected.size());
  for (size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].table == expected[i]);
    CHECK(got[i].model == chain3);
  }

  SUBCASE("counts stay consistent on a branchier model") {
    StratifiedPtr S = fixtures::strong_model_5();
    std::vector<EndoFunction> fs =
        enumerate_weakly_monotone(S, EnumerationBudget{});
    CHECK(!fs.empty());
    int direct = 0;
    std::vector<int> table(5, 0);
    for (int code = 0; code < 5 * 5 * 5 * 5 * 5; ++code) {
      int c = code;
      for (int i = 4; i >= 0; --i, c /= 5) table[i] = c % 5;
      bool ok = true;
      for (int alpha = 0; alpha <= S->depth() && ok; ++alpha)
        for (int x = 0; x < 5 && ok; ++x)
          for (int y = 0; y < 5 && ok; ++y)
            if (S->below_at(alpha, x, y))
              ok = S->below_at(alpha, table[x], table[y]);
      direct += ok;
    }
    CHECK(static_cast<int>(fs.size()) == direct);
  }

  SUBCASE("large models sample deterministically under a seed") {
    StratifiedPtr big = StratifiedLattice::discrete(multiset_lattice7());
    CHECK_THROWS_AS(enumerate_weakly_monotone(big, EnumerationBudget{}),
                    BudgetError);

    EnumerationBudget budget;
    budget.seed = 42;
    budget.sample_count = 20000;
    std::vector<EndoFunction> first = enumerate_weakly_monotone(big, budget);
    std::vector<EndoFunction> second = enumerate_weakly_monotone(big, budget);
    REQUIRE(first.size() == second.size());
    CHECK(!first.empty());
    CHECK(first.size() < 20000);  // sampling filters, it does not pad
    for (size_t i = 0; i < first.size(); ++i)
      CHECK(first[i].table == second[i].table);
    for (const EndoFunction& f : first) CHECK(is_weakly_monotone(f));

    budget.seed = 43;
    std::vector<EndoFunction> other = enumerate_weakly_monotone(big, budget);
    bool same = first.size() == other.size();
    for (size_t i = 0; same && i < first.size(); ++i)
      same = first[i].table == other[i].table;
    CHECK_FALSE(same);
  }

  SUBCASE("a missing model is refused") {
    CHECK_THROWS_AS(enumerate_weakly_monotone(nullptr, EnumerationBudget{}),
                    PreconditionError);
  }
}
