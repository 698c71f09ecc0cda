#include "stratlat/lattice.hpp"

#include <algorithm>
#include <unordered_map>

namespace stratlat {

namespace {

std::string pair_text(const std::vector<std::string>& labels, int x, int y) {
  return "(" + labels[x] + ", " + labels[y] + ")";
}

}  // namespace

LatticePtr FiniteLattice::make(std::vector<std::string> labels,
                               const std::vector<std::pair<int, int>>& below) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw NotALatticeError("empty element set");
  if (n > kMaxElements)
    throw BudgetError("too many elements: " + std::to_string(n) +
                      " (limit " + std::to_string(kMaxElements) + ")");
  {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i + 1 < n; ++i)
      if (sorted[i] == sorted[i + 1])
        throw SchemaError("duplicate element label: " + sorted[i]);
  }

  FiniteLattice lat;
  lat.n_ = n;
  lat.labels_ = std::move(labels);
  lat.all_ = (n == 64) ? ~Mask{0} : (bit(n) - 1);
  lat.up_.assign(n, 0);
  for (int i = 0; i < n; ++i) lat.up_[i] = bit(i);
  for (auto [x, y] : below) {
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw SchemaError("order pair index out of range");
    lat.up_[x] |= bit(y);
  }

  // Transitive closure, one saturation pass per intermediate element.
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      if (has_bit(lat.up_[x], k)) lat.up_[x] |= lat.up_[k];

  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (has_bit(lat.up_[x], y) && has_bit(lat.up_[y], x))
        throw CycleError("order cycle through " +
                         pair_text(lat.labels_, x, y));

  lat.down_.assign(n, 0);
  for (int x = 0; x < n; ++x)
    for_each_bit(lat.up_[x], [&](int y) { lat.down_[y] |= bit(x); });

  lat.meet_.assign(static_cast<size_t>(n) * n, -1);
  lat.join_.assign(static_cast<size_t>(n) * n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      Mask ub = lat.up_[x] & lat.up_[y];
      int j = -1;
      for_each_bit(ub, [&](int c) {
        if (j < 0 && (ub & ~lat.up_[c]) == 0) j = c;
      });
      if (j < 0)
        throw NotALatticeError("no least upper bound for " +
                               pair_text(lat.labels_, x, y));
      Mask lb = lat.down_[x] & lat.down_[y];
      int m = -1;
      for_each_bit(lb, [&](int c) {
        if (m < 0 && (lb & ~lat.down_[c]) == 0) m = c;
      });
      if (m < 0)
        throw NotALatticeError("no greatest lower bound for " +
                               pair_text(lat.labels_, x, y));
      lat.join_[x * n + y] = lat.join_[y * n + x] = j;
      lat.meet_[x * n + y] = lat.meet_[y * n + x] = m;
    }
  }

  for (int c = 0; c < n; ++c) {
    if (lat.up_[c] == lat.all_) lat.bottom_ = c;
    if (lat.down_[c] == lat.all_) lat.top_ = c;
  }
  if (lat.bottom_ < 0) throw NotALatticeError("no least element");
  if (lat.top_ < 0) throw NotALatticeError("no greatest element");

  return std::make_shared<const FiniteLattice>(std::move(lat));
}

LatticePtr FiniteLattice::make_by_label(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::string, std::string>>& below) {
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (!idx.emplace(labels[i], i).second)
      throw SchemaError("duplicate element label: " + labels[i]);
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(below.size());
  for (const auto& [a, b] : below) {
    auto ia = idx.find(a);
    auto ib = idx.find(b);
    if (ia == idx.end()) throw SchemaError("unknown element label: " + a);
    if (ib == idx.end()) throw SchemaError("unknown element label: " + b);
    pairs.emplace_back(ia->second, ib->second);
  }
  return make(std::move(labels), pairs);
}

int FiniteLattice::join_all(Mask s) const {
  int acc = bottom_;
  for_each_bit(s, [&](int i) { acc = join(acc, i); });
  return acc;
}

int FiniteLattice::meet_all(Mask s) const {
  int acc = top_;
  for_each_bit(s, [&](int i) { acc = meet(acc, i); });
  return acc;
}

std::optional<int> FiniteLattice::least_of(Mask s) const {
  std::optional<int> res;
  for_each_bit(s, [&](int c) {
    if (!res && (s & ~up_[c]) == 0) res = c;
  });
  return res;
}

std::optional<int> FiniteLattice::greatest_of(Mask s) const {
  std::optional<int> res;
  for_each_bit(s, [&](int c) {
    if (!res && (s & ~down_[c]) == 0) res = c;
  });
  return res;
}

int FiniteLattice::index_of(std::string_view label) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  return -1;
}

LatticePtr FiniteLattice::dual() const {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < n_; ++x)
    for_each_bit(up_[x], [&](int y) { pairs.emplace_back(y, x); });
  return make(labels_, pairs);
}

bool FiniteLattice::same_structure(const FiniteLattice& other) const {
  return n_ == other.n_ && labels_ == other.labels_ && up_ == other.up_;
}

bool LatticeMap::is_monotone() const { return !monotonicity_witness(); }

std::optional<std::pair<int, int>> LatticeMap::monotonicity_witness() const {
  const int n = source->size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (source->leq(x, y) && !target->leq(table[x], table[y]))
        return std::make_pair(x, y);
  return std::nullopt;
}

Mask LatticeMap::image() const {
  Mask m = 0;
  for (int v : table) m |= bit(v);
  return m;
}

LatticeMap LatticeMap::identity(LatticePtr lat) {
  std::vector<int> t(lat->size());
  for (int i = 0; i < lat->size(); ++i) t[i] = i;
  return LatticeMap{lat, lat, std::move(t)};
}

LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner) {
  if (!inner.target->same_structure(*outer.source))
    throw PreconditionError("map composition endpoint mismatch");
  std::vector<int> t(inner.table.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = outer.table[inner.table[i]];
  return LatticeMap{inner.source, outer.target, std::move(t)};
}

bool same_map(const LatticeMap& a, const LatticeMap& b) {
  return a.source->same_structure(*b.source) &&
         a.target->same_structure(*b.target) && a.table == b.table;
}

GaloisPair projection_adjoint(const LatticeMap& h) {
  if (auto w = h.monotonicity_witness()) {
    throw NotMonotoneError("map not monotone at " +
                           pair_text(h.source->labels(), w->first, w->second));
  }
  const FiniteLattice& src = *h.source;  // bigger lattice
  const FiniteLattice& tgt = *h.target;

  std::vector<int> k(tgt.size());
  for (int x = 0; x < tgt.size(); ++x) {
    Mask dominating = 0;
    for (int y = 0; y < src.size(); ++y)
      if (tgt.leq(x, h.table[y])) dominating |= bit(y);
    k[x] = src.meet_all(dominating);
  }

  for (int x = 0; x < tgt.size(); ++x)
    if (h.table[k[x]] != x)
      throw NotProjectionError(
          "upper o lower is not the identity at " + tgt.label(x) +
          " (lands on " + tgt.label(h.table[k[x]]) + ")");
  for (int y = 0; y < src.size(); ++y)
    if (!src.leq(k[h.table[y]], y))
      throw NotProjectionError("lower o upper exceeds the identity at " +
                               src.label(y));

  return GaloisPair{h, LatticeMap{h.target, h.source, std::move(k)}};
}

MapCheck is_locally_completely_additive(const LatticeMap& h) {
  const FiniteLattice& src = *h.source;
  Mask img = h.image();
  MapCheck res;
  for_each_bit(img, [&](int v) {
    if (!res.ok) return;
    Mask fiber = 0;
    for (int y = 0; y < src.size(); ++y)
      if (h.table[y] == v) fiber |= bit(y);
    int j = src.join_all(fiber);
    if (h.table[j] != v) {
      res.ok = false;
      res.witness = {v, j};
      res.detail = "fiber of " + h.target->label(v) +
                   " does not contain its join " + src.label(j);
    }
  });
  return res;
}

MapCheck is_completely_additive(const LatticeMap& h) {
  const FiniteLattice& src = *h.source;
  const FiniteLattice& tgt = *h.target;
  MapCheck res;
  if (h.table[src.bottom()] != tgt.bottom()) {
    res.ok = false;
    res.witness = {src.bottom()};
    res.detail = "bottom is not preserved";
    return res;
  }
  for (int x = 0; x < src.size(); ++x)
    for (int y = x + 1; y < src.size(); ++y) {
      if (h.table[src.join(x, y)] != tgt.join(h.table[x], h.table[y])) {
        res.ok = false;
        res.witness = {x, y};
        res.detail = "join of " + pair_text(src.labels(), x, y) +
                     " is not preserved";
        return res;
      }
    }
  return res;
}

MapCheck preserves_all_infima(const LatticeMap& h) {
  const FiniteLattice& src = *h.source;
  const FiniteLattice& tgt = *h.target;
  MapCheck res;
  if (h.table[src.top()] != tgt.top()) {
    res.ok = false;
    res.witness = {src.top()};
    res.detail = "top is not preserved";
    return res;
  }
  for (int x = 0; x < src.size(); ++x)
    for (int y = x + 1; y < src.size(); ++y) {
      if (h.table[src.meet(x, y)] != tgt.meet(h.table[x], h.table[y])) {
        res.ok = false;
        res.witness = {x, y};
        res.detail = "meet of " + pair_text(src.labels(), x, y) +
                     " is not preserved";
        return res;
      }
    }
  return res;
}

}  // namespace stratlat
