#include "stratlat/enumerate.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "stratlat/errors.hpp"

namespace stratlat {

namespace {

void close_transitively(std::vector<Mask>& rows, int n) {
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (has_bit(rows[i], k)) rows[i] |= rows[k];
}

// True when every pair has a least upper and greatest lower bound.
bool is_lattice_order(const std::vector<Mask>& up, int n) {
  std::vector<Mask> down(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (has_bit(up[i], j)) down[j] |= bit(i);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      Mask uppers = up[x] & up[y];
      bool least = false;
      for_each_bit(uppers, [&](int u) {
        if ((uppers & ~up[u]) == 0) least = true;
      });
      if (!least) return false;
      Mask lowers = down[x] & down[y];
      bool greatest = false;
      for_each_bit(lowers, [&](int l) {
        if ((lowers & ~down[l]) == 0) greatest = true;
      });
      if (!greatest) return false;
    }
  return true;
}

// Relations are encoded as n*n bit matrices in a single word (n <= 7
// gives at most 49 bits); the canonical code is the smallest encoding
// over relabelings.  Only the middle elements get permuted; bottom and
// top are pinned by any isomorphism anyway.
std::uint64_t canonical_code(const std::vector<Mask>& rows, int n) {
  std::vector<int> mid;
  for (int i = 1; i + 1 < n; ++i) mid.push_back(i);
  std::vector<int> perm(n);
  std::uint64_t best = ~std::uint64_t{0};
  std::sort(mid.begin(), mid.end());
  do {
    perm[0] = 0;
    if (n > 1) perm[n - 1] = n - 1;
    for (size_t t = 0; t < mid.size(); ++t) perm[t + 1] = mid[t];
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (has_bit(rows[i], j))
          code |= std::uint64_t{1} << (perm[i] * n + perm[j]);
    best = std::min(best, code);
  } while (std::next_permutation(mid.begin(), mid.end()));
  return best;
}

}  // namespace

std::vector<LatticePtr> enumerate_lattices(int n) {
  if (n < 1 || n > 7)
    throw BudgetError("lattice enumeration covers 1 through 7 elements");

  std::set<std::uint64_t> canon;
  std::vector<std::pair<int, int>> free_pairs;
  for (int i = 1; i + 1 < n; ++i)
    for (int j = i + 1; j + 1 < n; ++j) free_pairs.emplace_back(i, j);

  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << free_pairs.size());
       ++pick) {
    std::vector<Mask> rows(n, 0);
    for (int i = 0; i < n; ++i) rows[i] |= bit(i) | bit(n - 1);
    for (int j = 0; j < n; ++j) rows[0] |= bit(j);
    for (size_t b = 0; b < free_pairs.size(); ++b)
      if ((pick >> b) & 1) rows[free_pairs[b].first] |= bit(free_pairs[b].second);
    close_transitively(rows, n);
    if (!is_lattice_order(rows, n)) continue;
    canon.insert(canonical_code(rows, n));
  }

  std::vector<LatticePtr> out;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  for (std::uint64_t code : canon) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((code >> (i * n + j)) & 1) pairs.emplace_back(i, j);
    out.push_back(FiniteLattice::make(labels, pairs));
  }
  return out;
}

namespace {

// Partitions as class index per element, in restricted-growth form.
using Partition = std::vector<int>;

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  Partition a(n, 0);
  while (true) {
    out.push_back(a);
    int i = n - 1;
    for (; i > 0; --i) {
      int cap = 0;
      for (int j = 0; j < i; ++j) cap = std::max(cap, a[j]);
      if (a[i] <= cap) break;
    }
    if (i == 0) break;
    ++a[i];
    for (int j = i + 1; j < n; ++j) a[j] = 0;
  }
  return out;
}

bool refines(const Partition& fine, const Partition& coarse, int n) {
  // Same fine class must imply same coarse class.
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (fine[x] == fine[y] && coarse[x] != coarse[y]) return false;
  return true;
}

struct LevelClasses {
  Partition part;
  std::vector<int> least_of;  // least class element, indexed by element
};

// A level partition is viable only if each class has a least element and
// is closed under binary joins; both are forced on any passing family.
std::optional<LevelClasses> viable_level(const FiniteLattice& L,
                                         const Partition& part) {
  const int n = L.size();
  LevelClasses lc;
  lc.part = part;
  lc.least_of.assign(n, -1);
  int classes = *std::max_element(part.begin(), part.end()) + 1;
  for (int c = 0; c < classes; ++c) {
    Mask members = 0;
    for (int x = 0; x < n; ++x)
      if (part[x] == c) members |= bit(x);
    auto least = L.least_of(members);
    if (!least) return std::nullopt;
    bool closed = true;
    for_each_bit(members, [&](int x) {
      for_each_bit(members, [&](int y) {
        if (part[L.join(x, y)] != c) closed = false;
      });
    });
    if (!closed) return std::nullopt;
    for_each_bit(members, [&](int x) { lc.least_of[x] = *least; });
  }
  return lc;
}

bool is_antichain_partition(const FiniteLattice& L, const Partition& part) {
  for (int x = 0; x < L.size(); ++x)
    for (int y = 0; y < L.size(); ++y)
      if (x != y && part[x] == part[y] && L.leq(x, y)) return false;
  return true;
}

}  // namespace

std::vector<StratifiedPtr> enumerate_stratifications(const LatticePtr& lat,
                                                     int depth) {
  if (!lat) throw PreconditionError("no lattice supplied");
  if (depth < 0 || depth > 3)
    throw BudgetError("stratification enumeration covers depth 0 through 3");
  if (lat->size() > 6)
    throw BudgetError(
        "stratification enumeration covers lattices of at most 6 elements");
  const FiniteLattice& L = *lat;
  const int n = L.size();

  std::vector<LevelClasses> viable;
  for (const Partition& p : all_partitions(n))
    if (auto lc = viable_level(L, p)) viable.push_back(std::move(*lc));

  std::vector<StratifiedPtr> out;
  std::vector<const LevelClasses*> chain;

  auto emit = [&]() {
    std::vector<std::vector<Mask>> rows(depth, std::vector<Mask>(n, 0));
    for (int alpha = 0; alpha < depth; ++alpha)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          bool rel = true;
          for (int beta = 0; beta < alpha && rel; ++beta)
            rel = chain[beta]->part[x] == chain[beta]->part[y];
          if (rel)
            rel = L.leq(chain[alpha]->least_of[x], chain[alpha]->least_of[y]);
          if (rel) rows[alpha][x] |= bit(y);
        }
    StratifiedPtr S = StratifiedLattice::make(lat, std::move(rows));
    if (passes(*S, AxiomSuite::Model)) out.push_back(std::move(S));
  };

  // Depth-first over refinement chains; the last level must additionally
  // be an antichain partition or the top identity level breaks.
  auto extend = [&](auto&& self, int alpha) -> void {
    if (alpha == depth) {
      if (depth == 0 || is_antichain_partition(L, chain.back()->part)) emit();
      return;
    }
    for (const LevelClasses& lc : viable) {
      if (alpha > 0 && !refines(lc.part, chain.back()->part, n)) continue;
      chain.push_back(&lc);
      self(self, alpha + 1);
      chain.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

std::vector<EndoFunction> enumerate_weakly_monotone(
    const StratifiedPtr& model, const EnumerationBudget& budget) {
  if (!model) throw PreconditionError("no model supplied");
  const int n = model->size();
  std::vector<EndoFunction> out;

  if (n <= 5) {
    std::vector<int> table(n, 0);
    while (true) {
      EndoFunction f{model, table};
      if (is_weakly_monotone(f)) out.push_back(std::move(f));
      int i = n - 1;
      while (i >= 0 && table[i] == n - 1) table[i--] = 0;
      if (i < 0) break;
      ++table[i];
    }
    return out;
  }

  if (!budget.seed)
    throw BudgetError(
        "models above 5 elements need a seed for sampled enumeration");
  std::mt19937_64 gen(*budget.seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int s = 0; s < budget.sample_count; ++s) {
    std::vector<int> table(n);
    for (int& v : table) v = pick(gen);
    EndoFunction f{model, std::move(table)};
    if (is_weakly_monotone(f)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace stratlat
