#include "stratlat/stratified.hpp"

namespace stratlat {

namespace {

void close_level(std::vector<Mask>& rows, int n) {
  for (int x = 0; x < n; ++x) rows[x] |= bit(x);
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      if (has_bit(rows[x], k)) rows[x] |= rows[k];
}

std::vector<Mask> transpose(const std::vector<Mask>& rows, int n) {
  std::vector<Mask> cols(n, 0);
  for (int x = 0; x < n; ++x)
    for_each_bit(rows[x], [&](int y) { cols[y] |= bit(x); });
  return cols;
}

}  // namespace

StratifiedPtr StratifiedLattice::make(LatticePtr lat,
                                      std::vector<std::vector<Mask>> rows) {
  const int n = lat->size();
  StratifiedLattice S;
  S.lat_ = std::move(lat);
  S.depth_ = static_cast<int>(rows.size());
  for (auto& level : rows) {
    if (static_cast<int>(level.size()) != n)
      throw SchemaError("level row count does not match element count");
    for (Mask m : level)
      if ((m & ~S.lat_->all_mask()) != 0)
        throw SchemaError("level relation references an element out of range");
    close_level(level, n);
  }
  S.up_ = std::move(rows);
  S.down_.reserve(S.up_.size());
  for (const auto& level : S.up_) S.down_.push_back(transpose(level, n));
  return std::make_shared<const StratifiedLattice>(std::move(S));
}

std::vector<Mask> StratifiedLattice::level_from_pairs(
    const LatticePtr& lat, const std::vector<std::pair<int, int>>& pairs,
    bool include_leq) {
  const int n = lat->size();
  std::vector<Mask> rows(n, 0);
  if (include_leq)
    for (int x = 0; x < n; ++x) rows[x] = lat->up_set(x);
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw SchemaError("level pair index out of range");
    rows[x] |= bit(y);
  }
  close_level(rows, n);
  return rows;
}

StratifiedPtr StratifiedLattice::discrete(LatticePtr lat) {
  std::vector<Mask> level(lat->size());
  for (int x = 0; x < lat->size(); ++x) level[x] = lat->up_set(x);
  return make(std::move(lat), {level});
}

Mask StratifiedLattice::cell_mask(const std::vector<int>& prefix) const {
  Mask cell = lat_->all_mask();
  for (int beta = 0; beta < static_cast<int>(prefix.size()); ++beta) {
    Mask keep = 0;
    for_each_bit(cell, [&](int x) {
      if (restrict(x, beta) == prefix[beta]) keep |= bit(x);
    });
    cell = keep;
  }
  return cell;
}

Mask StratifiedLattice::restriction_image(int alpha) const {
  Mask img = 0;
  for (int x = 0; x < size(); ++x) img |= bit(restrict(x, alpha));
  return img;
}

int restrict_checked(const StratifiedLattice& S, int x, int alpha) {
  if (alpha >= S.depth()) return x;
  const FiniteLattice& L = S.lattice();
  int m = L.meet_all(S.class_mask(alpha, x));
  if (!S.eq_at(alpha, m, x))
    throw NotAModelError("no level-" + std::to_string(alpha) +
                         " restriction of " + L.label(x) +
                         ": the meet of its class is " + L.label(m) +
                         ", which leaves the class");
  return m;
}

int corestrict_checked(const StratifiedLattice& S, int x, int alpha) {
  if (alpha >= S.depth()) return x;
  const FiniteLattice& L = S.lattice();
  // The join dominates the down-set by construction, so membership of the
  // join in the class is the whole existence question.
  int j = S.corestrict(x, alpha);
  if (!S.eq_at(alpha, j, x))
    throw CorestrictError("no level-" + std::to_string(alpha) +
                          " corestriction of " + L.label(x) +
                          ": the join of its down-set is " + L.label(j) +
                          ", which leaves the class");
  return j;
}

StratifiedPtr dualize(const StratifiedLattice& S) {
  const int n = S.size();
  std::vector<std::vector<Mask>> rows(S.depth());
  for (int alpha = 0; alpha < S.depth(); ++alpha) {
    rows[alpha].resize(n);
    for (int x = 0; x < n; ++x) rows[alpha][x] = S.below_set_mask(alpha, x);
  }
  return StratifiedLattice::make(S.lattice().dual(), std::move(rows));
}

StratifiedPtr trim_identity_tail(const StratifiedLattice& S) {
  const int n = S.size();
  int depth = S.depth();
  auto is_identity = [&](int alpha) {
    for (int x = 0; x < n; ++x)
      if (S.above_mask(alpha, x) != bit(x)) return false;
    return true;
  };
  while (depth > 0 && is_identity(depth - 1)) --depth;
  std::vector<std::vector<Mask>> rows(depth);
  for (int alpha = 0; alpha < depth; ++alpha) {
    rows[alpha].resize(n);
    for (int x = 0; x < n; ++x) rows[alpha][x] = S.above_mask(alpha, x);
  }
  return StratifiedLattice::make(S.lattice_ptr(), std::move(rows));
}

}  // namespace stratlat
