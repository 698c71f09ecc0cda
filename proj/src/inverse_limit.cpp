#include "stratlat/inverse_limit.hpp"

#include <algorithm>

namespace stratlat {

namespace {

std::string level_pair(int from, int to) {
  return "(" + std::to_string(from) + " -> " + std::to_string(to) + ")";
}

void check_table_shape(const LatticeMap& m, int from, int to) {
  if (!m.source || !m.target)
    throw SchemaError("map " + level_pair(from, to) + " lacks endpoints");
  if (static_cast<int>(m.table.size()) != m.source->size())
    throw SchemaError("map " + level_pair(from, to) +
                      " is not total on its source");
  for (int v : m.table)
    if (v < 0 || v >= m.target->size())
      throw SchemaError("map " + level_pair(from, to) +
                        " hits an element out of range");
}

}  // namespace

InverseSystem validate_system(std::vector<LatticePtr> levels,
                              const std::vector<ConnectingMap>& maps) {
  const int count = static_cast<int>(levels.size());
  if (count == 0) throw SchemaError("a tower needs at least one lattice");
  for (const auto& lat : levels)
    if (!lat) throw SchemaError("tower level is missing");

  InverseSystem sys;
  sys.levels = std::move(levels);
  sys.steps.resize(count > 0 ? count - 1 : 0);
  std::vector<bool> filled(sys.steps.size(), false);
  std::vector<const ConnectingMap*> extras;

  for (const auto& cm : maps) {
    if (cm.from <= cm.to || cm.to < 0 || cm.from >= count)
      throw SchemaError("map endpoints " + level_pair(cm.from, cm.to) +
                        " do not go down the tower");
    check_table_shape(cm.map, cm.from, cm.to);
    if (!cm.map.source->same_structure(*sys.levels[cm.from]) ||
        !cm.map.target->same_structure(*sys.levels[cm.to]))
      throw SchemaError("map " + level_pair(cm.from, cm.to) +
                        " does not match its tower levels");
    if (cm.from == cm.to + 1) {
      if (filled[cm.to])
        throw SchemaError("duplicate map " + level_pair(cm.from, cm.to));
      filled[cm.to] = true;
      sys.steps[cm.to] = cm.map;
    } else {
      extras.push_back(&cm);
    }
  }
  for (size_t a = 0; a < sys.steps.size(); ++a)
    if (!filled[a])
      throw SchemaError("missing map " + level_pair(static_cast<int>(a) + 1,
                                                    static_cast<int>(a)));

  for (size_t a = 0; a < sys.steps.size(); ++a) {
    const LatticeMap& h = sys.steps[a];
    if (auto w = h.monotonicity_witness())
      throw NotMonotoneError(
          "map " + level_pair(static_cast<int>(a) + 1, static_cast<int>(a)) +
          " is not monotone at (" + h.source->label(w->first) + ", " +
          h.source->label(w->second) + ")");
    // Throws NotProjectionError when either adjoint law fails.
    sys.lifts.push_back(projection_adjoint(h).lower);
  }

  for (const ConnectingMap* cm : extras) {
    LatticeMap derived = composite(sys, cm->from, cm->to);
    if (!same_map(derived, cm->map)) {
      int witness = -1;
      for (int x = 0; x < cm->map.source->size(); ++x)
        if (derived(x) != cm->map(x)) {
          witness = x;
          break;
        }
      throw NotCoherentError(
          "supplied map " + level_pair(cm->from, cm->to) +
          " disagrees with the composite of the consecutive maps at " +
          cm->map.source->label(witness));
    }
  }
  return sys;
}

LatticeMap composite(const InverseSystem& sys, int from, int to) {
  if (to > from || to < 0 || from > sys.top_level())
    throw PreconditionError("composite endpoints out of range");
  LatticeMap m = LatticeMap::identity(sys.levels[from]);
  for (int a = from - 1; a >= to; --a) m = compose(sys.steps[a], m);
  return m;
}

LatticeMap composite_lift(const InverseSystem& sys, int from, int to) {
  if (to < from || from < 0 || to > sys.top_level())
    throw PreconditionError("composite endpoints out of range");
  LatticeMap m = LatticeMap::identity(sys.levels[from]);
  for (int a = from; a < to; ++a) m = compose(sys.lifts[a], m);
  return m;
}

int LimitModel::index_of_tuple(const std::vector<int>& t) const {
  for (size_t i = 0; i < tuples.size(); ++i)
    if (tuples[i] == t) return static_cast<int>(i);
  return -1;
}

LimitModel build_limit(const InverseSystem& sys) {
  const int D = sys.top_level();
  const FiniteLattice& top = *sys.levels[D];
  const int n = top.size();

  // A compatible tuple is determined by its top component (the lower
  // components are forced through the steps), and every top component
  // extends, so the limit enumerates in L_D's element order.
  std::vector<LatticeMap> downs;
  for (int a = 0; a <= D; ++a) downs.push_back(composite(sys, D, a));

  LimitModel lim;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    std::vector<int> t(D + 1);
    std::string label = "(";
    for (int a = 0; a <= D; ++a) {
      t[a] = downs[a](i);
      if (a > 0) label += ",";
      label += sys.levels[a]->label(t[a]);
    }
    label += ")";
    lim.tuples.push_back(std::move(t));
    labels.push_back(std::move(label));
  }

  std::vector<std::pair<int, int>> pairs;
  auto pointwise_leq = [&](int i, int j) {
    for (int a = 0; a <= D; ++a)
      if (!sys.levels[a]->leq(lim.tuples[i][a], lim.tuples[j][a]))
        return false;
    return true;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (pointwise_leq(i, j)) pairs.emplace_back(i, j);
  LatticePtr limit_lat = FiniteLattice::make(labels, pairs);

  std::vector<std::vector<Mask>> rows(D + 1, std::vector<Mask>(n, 0));
  for (int alpha = 0; alpha <= D; ++alpha)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        bool rel = sys.levels[alpha]->leq(lim.tuples[i][alpha],
                                          lim.tuples[j][alpha]);
        for (int beta = 0; beta < alpha && rel; ++beta)
          rel = lim.tuples[i][beta] == lim.tuples[j][beta];
        if (rel) rows[alpha][i] |= bit(j);
      }
  lim.model = StratifiedLattice::make(limit_lat, std::move(rows));

  for (int a = 0; a <= D; ++a) {
    LatticeMap proj;
    proj.source = limit_lat;
    proj.target = sys.levels[a];
    for (int i = 0; i < n; ++i) proj.table.push_back(lim.tuples[i][a]);
    lim.projections.push_back(std::move(proj));
  }
  for (int a = 0; a <= D; ++a) {
    LatticeMap emb;
    emb.source = sys.levels[a];
    emb.target = limit_lat;
    for (int u = 0; u < sys.levels[a]->size(); ++u) {
      std::vector<int> t(D + 1);
      for (int b = 0; b <= a; ++b) t[b] = composite(sys, a, b)(u);
      for (int b = a + 1; b <= D; ++b) t[b] = composite_lift(sys, a, b)(u);
      int idx = lim.index_of_tuple(t);
      if (idx < 0)
        throw InternalError("embedding of " + sys.levels[a]->label(u) +
                            " missed the limit at level " + std::to_string(a));
      emb.table.push_back(idx);
    }
    lim.embeddings.push_back(std::move(emb));
  }

  // The limit cone consists of projections and the embeddings are their
  // adjoint sections; both are construction guarantees.
  for (int a = 0; a <= D; ++a) {
    GaloisPair gp = projection_adjoint(lim.projections[a]);
    if (!same_map(gp.lower, lim.embeddings[a]))
      throw InternalError("limit embedding at level " + std::to_string(a) +
                          " is not the adjoint of the projection");
  }
  return lim;
}

LimitClassification classify_limit(const InverseSystem& sys) {
  LimitClassification out;
  for (int from = 1; from <= sys.top_level(); ++from)
    for (int to = 0; to < from; ++to) {
      LatticeMap m = composite(sys, from, to);
      MapAdditivity a;
      a.from = from;
      a.to = to;
      a.locally = is_locally_completely_additive(m);
      a.fully = is_completely_additive(m);
      out.all_locally = out.all_locally && a.locally.ok;
      out.all_fully = out.all_fully && a.fully.ok;
      out.maps.push_back(std::move(a));
    }
  out.verdict =
      out.all_fully ? "strong" : (out.all_locally ? "model" : "neither");

  // Independent route: the axioms on the materialized limit must agree
  // with the additivity verdict in both directions.
  StratifiedPtr limit = build_limit(sys).model;
  bool base = passes(*limit, AxiomSuite::Model);
  bool strong = passes(*limit, AxiomSuite::Strong);
  if (base != out.all_locally)
    throw InternalError(
        std::string("limit ") + (base ? "passes" : "fails") +
        " the base suite but the maps are " +
        (out.all_locally ? "all" : "not all") + " locally completely additive");
  if (strong != out.all_fully)
    throw InternalError(std::string("limit ") + (strong ? "passes" : "fails") +
                        " the strong suite but the maps are " +
                        (out.all_fully ? "all" : "not all") +
                        " completely additive");
  return out;
}

InverseSystem decompose(const StratifiedLattice& M) {
  {
    auto reports = check_axioms(M, AxiomSuite::Model);
    for (const auto& r : reports)
      if (!r.ok)
        throw NotAModelError("cannot decompose: " + r.name + " fails (" +
                             r.detail + ")");
  }
  const FiniteLattice& L = M.lattice();
  const int D = M.depth();

  std::vector<LatticePtr> levels;
  std::vector<std::vector<int>> to_local(D + 1, std::vector<int>(L.size(), -1));
  std::vector<std::vector<int>> to_ambient(D + 1);
  for (int a = 0; a <= D; ++a) {
    Mask img = M.restriction_image(a);
    std::vector<std::string> labels;
    for_each_bit(img, [&](int x) {
      to_local[a][x] = static_cast<int>(labels.size());
      to_ambient[a].push_back(x);
      labels.push_back(L.label(x));
    });
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < to_ambient[a].size(); ++i)
      for (size_t j = 0; j < to_ambient[a].size(); ++j)
        if (L.leq(to_ambient[a][i], to_ambient[a][j]))
          pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    levels.push_back(FiniteLattice::make(labels, pairs));
  }

  std::vector<ConnectingMap> maps;
  for (int a = 0; a < D; ++a) {
    ConnectingMap cm;
    cm.from = a + 1;
    cm.to = a;
    cm.map.source = levels[a + 1];
    cm.map.target = levels[a];
    for (int u : to_ambient[a + 1])
      cm.map.table.push_back(to_local[a][M.restrict(u, a)]);
    maps.push_back(std::move(cm));
  }
  return validate_system(std::move(levels), maps);
}

RepresentationCheck representation_isomorphism(const StratifiedLattice& M) {
  RepresentationCheck rc;
  rc.system = decompose(M);
  rc.limit = build_limit(rc.system);
  const FiniteLattice& L = M.lattice();
  const StratifiedLattice& lim = *rc.limit.model;
  const int D = M.depth();

  if (L.size() != lim.size())
    throw IsoFailureError("limit has " + std::to_string(lim.size()) +
                          " elements, the model has " +
                          std::to_string(L.size()));

  // Local indices of the restrictions form the image tuple.
  std::vector<std::vector<int>> to_local(D + 1, std::vector<int>(L.size(), -1));
  for (int a = 0; a <= D; ++a) {
    const FiniteLattice& level = *rc.system.levels[a];
    for_each_bit(M.restriction_image(a), [&](int x) {
      to_local[a][x] = level.index_of(L.label(x));
    });
  }

  rc.forward.assign(L.size(), -1);
  rc.backward.assign(lim.size(), -1);
  for (int x = 0; x < L.size(); ++x) {
    std::vector<int> t(D + 1);
    for (int a = 0; a <= D; ++a) t[a] = to_local[a][M.restrict(x, a)];
    int idx = rc.limit.index_of_tuple(t);
    if (idx < 0)
      throw IsoFailureError("the restriction tuple of " + L.label(x) +
                            " is not a limit element");
    if (rc.backward[idx] != -1)
      throw IsoFailureError("elements " + L.label(rc.backward[idx]) + " and " +
                            L.label(x) + " share a restriction tuple");
    rc.forward[x] = idx;
    rc.backward[idx] = x;
  }
  for (int i = 0; i < lim.size(); ++i)
    if (rc.backward[i] == -1)
      throw IsoFailureError("limit element " + lim.lattice().label(i) +
                            " is not a restriction tuple");

  const int max_depth = std::max(D, lim.depth());
  for (int x = 0; x < L.size(); ++x)
    for (int y = 0; y < L.size(); ++y) {
      if (L.leq(x, y) != lim.lattice().leq(rc.forward[x], rc.forward[y]))
        throw IsoFailureError("order mismatch at (" + L.label(x) + ", " +
                              L.label(y) + ")");
      for (int alpha = 0; alpha <= max_depth; ++alpha)
        if (M.below_at(alpha, x, y) !=
            lim.below_at(alpha, rc.forward[x], rc.forward[y]))
          throw IsoFailureError("level " + std::to_string(alpha) +
                                " mismatch at (" + L.label(x) + ", " +
                                L.label(y) + ")");
    }

  if (passes(M, AxiomSuite::Strong)) {
    for (int from = 1; from <= D; ++from)
      for (int to = 0; to < from; ++to) {
        MapCheck mc = is_completely_additive(composite(rc.system, from, to));
        if (!mc.ok)
          throw IsoFailureError("strong model produced a tower map " +
                                level_pair(from, to) +
                                " that is not completely additive: " +
                                mc.detail);
      }
  }
  return rc;
}

}  // namespace stratlat
