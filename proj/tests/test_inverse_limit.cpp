#include <doctest.h>

#include <string>
#include <vector>

#include "stratlat/inverse_limit.hpp"
#include "stratlat/stratified.hpp"
#include "support/fixtures.hpp"

using namespace stratlat;
using namespace fixtures;

namespace {

LatticeMap table_map(LatticePtr source, LatticePtr target,
                     std::vector<int> table) {
  LatticeMap m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.table = std::move(table);
  return m;
}

}  // namespace

TEST_CASE("validating the flattening tower materializes inclusion lifts") {
  InverseSystem sys = multiset_system();
  REQUIRE(sys.top_level() == 1);
  REQUIRE(sys.steps.size() == 1);
  REQUIRE(sys.lifts.size() == 1);

  // The adjoint of the flattening step embeds each set as itself.
  const LatticeMap& lift = sys.lifts[0];
  for (int u = 0; u < sys.levels[0]->size(); ++u)
    CHECK(sys.levels[1]->label(lift(u)) == sys.levels[0]->label(u));

  // Section law and the deflation law of the adjoint pair.
  for (int u = 0; u < sys.levels[0]->size(); ++u)
    CHECK(sys.steps[0](lift(u)) == u);
  for (int x = 0; x < sys.levels[1]->size(); ++x)
    CHECK(sys.levels[1]->leq(lift(sys.steps[0](x)), x));
}

TEST_CASE("tower validation rejects malformed and incoherent input") {
  LatticePtr two = chain_lattice(2);
  LatticePtr three = chain_lattice(3);
  LatticeMap id2 = LatticeMap::identity(two);

  CHECK_THROWS_AS(validate_system({}, {}), SchemaError);
  CHECK_THROWS_AS(validate_system({two, nullptr}, {}), SchemaError);

  SUBCASE("every consecutive step must be supplied exactly once") {
    CHECK_THROWS_AS(validate_system({two, two}, {}), SchemaError);
    ConnectingMap cm{1, 0, id2};
    CHECK_THROWS_AS(validate_system({two, two}, {cm, cm}), SchemaError);
  }

  SUBCASE("maps must go down the tower and match its levels") {
    CHECK_THROWS_AS(validate_system({two, two}, {{0, 1, id2}}), SchemaError);
    CHECK_THROWS_AS(validate_system({two, two}, {{1, 1, id2}}), SchemaError);
    ConnectingMap wrong{1, 0, table_map(three, two, {0, 0, 1})};
    CHECK_THROWS_AS(validate_system({two, two}, {wrong}), SchemaError);
    ConnectingMap partial{1, 0, table_map(two, two, {0})};
    CHECK_THROWS_AS(validate_system({two, two}, {partial}), SchemaError);
  }

  SUBCASE("steps must be monotone projections") {
    ConnectingMap swap{1, 0, table_map(two, two, {1, 0})};
    CHECK_THROWS_AS(validate_system({two, two}, {swap}), NotMonotoneError);
    // Monotone, but the middle of the target is not hit by a section.
    ConnectingMap skip{1, 0, table_map(two, three, {0, 2})};
    CHECK_THROWS_AS(validate_system({three, two}, {skip}),
                    NotProjectionError);
  }

  SUBCASE("supplied long-range maps are checked against the composite") {
    ConnectingMap s10{1, 0, id2};
    ConnectingMap s21{2, 1, id2};
    ConnectingMap collapse{2, 0, table_map(two, two, {0, 0})};
    CHECK_THROWS_AS(validate_system({two, two, two}, {s10, s21, collapse}),
                    NotCoherentError);
    // The correct composite is accepted as a redundant cross-check.
    ConnectingMap fine{2, 0, id2};
    CHECK_NOTHROW(validate_system({two, two, two}, {s10, s21, fine}));
  }
}

TEST_CASE("composites walk the tower and their lifts are the adjoints") {
  InverseSystem sys = decompose(*strong_model_5());
  REQUIRE(sys.top_level() == 2);

  CHECK(same_map(composite(sys, 2, 0), compose(sys.steps[0], sys.steps[1])));
  CHECK(same_map(composite_lift(sys, 0, 2),
                 compose(sys.lifts[1], sys.lifts[0])));
  for (int a = 0; a <= 2; ++a) {
    CHECK(same_map(composite(sys, a, a), LatticeMap::identity(sys.levels[a])));
    CHECK(same_map(composite_lift(sys, a, a),
                   LatticeMap::identity(sys.levels[a])));
  }

  // Adjoints compose contravariantly, so the long lift is the adjoint of
  // the long projection.
  GaloisPair gp = projection_adjoint(composite(sys, 2, 0));
  CHECK(same_map(gp.lower, composite_lift(sys, 0, 2)));

  CHECK_THROWS_AS(composite(sys, 0, 1), PreconditionError);
  CHECK_THROWS_AS(composite_lift(sys, 1, 0), PreconditionError);
  CHECK_THROWS_AS(composite(sys, 3, 0), PreconditionError);
}

TEST_CASE("the limit of the flattening tower lists all compatible tuples") {
  InverseSystem sys = multiset_system();
  LimitModel lim = build_limit(sys);
  const FiniteLattice& L = lim.model->lattice();

  REQUIRE(lim.model->size() == 7);
  CHECK(lim.model->depth() == 2);
  CHECK(L.label(3) == "({a},{a,a})");

  const int a_flat = sys.levels[0]->index_of("{a}");
  const int aa = sys.levels[1]->index_of("{a,a}");
  const int b_flat = sys.levels[0]->index_of("{b}");
  CHECK(lim.index_of_tuple({a_flat, aa}) == 3);
  CHECK(lim.index_of_tuple({b_flat, aa}) == -1);

  // Projections pick components; embeddings are their sections.
  for (int i = 0; i < lim.model->size(); ++i) {
    CHECK(lim.projections[0](i) == lim.tuples[i][0]);
    CHECK(lim.projections[1](i) == lim.tuples[i][1]);
  }
  CHECK(lim.embeddings[0](a_flat) == lim.index_of_tuple({a_flat, a_flat}));
  for (int u = 0; u < sys.levels[0]->size(); ++u)
    CHECK(lim.projections[0](lim.embeddings[0](u)) == u);

  // Pointwise order agrees with the top level, which determines tuples.
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      CHECK(L.leq(i, j) == sys.levels[1]->leq(i, j));
}

TEST_CASE("limit classification tracks the additivity of the tower maps") {
  SUBCASE("flattening tower: locally additive only") {
    LimitClassification c = classify_limit(multiset_system());
    CHECK(c.verdict == "model");
    CHECK(c.all_locally);
    CHECK_FALSE(c.all_fully);
    REQUIRE(c.maps.size() == 1);
    CHECK(c.maps[0].from == 1);
    CHECK(c.maps[0].to == 0);
    CHECK(c.maps[0].locally.ok);
    CHECK_FALSE(c.maps[0].fully.ok);

    StratifiedPtr lim = build_limit(multiset_system()).model;
    CHECK(passes(*lim, AxiomSuite::Model));
    CHECK_FALSE(passes(*lim, AxiomSuite::Strong));
  }

  SUBCASE("crush tower: a fiber misses its join") {
    LimitClassification c = classify_limit(diamond_crush_system());
    CHECK(c.verdict == "neither");
    CHECK_FALSE(c.all_locally);
    CHECK_FALSE(c.all_fully);

    // The failure surfaces on the limit as a class not closed under
    // joins: the two midpoints join to the top outside their class.
    StratifiedPtr lim = build_limit(diamond_crush_system()).model;
    auto results = check_axioms(*lim, AxiomSuite::Model);
    CHECK_FALSE(all_ok(results));
    for (const auto& r : results) {
      if (r.name != "A4") continue;
      REQUIRE_FALSE(r.ok);
      CHECK(r.alpha == 0);
      REQUIRE(r.witness.size() == 3);
      CHECK(lim->lattice().label(r.witness[0]) == "(c0,0)");
      CHECK(lim->lattice().label(r.witness[1]) == "(c0,1)");
      CHECK(lim->lattice().label(r.witness[2]) == "(c1,top)");
    }
  }

  SUBCASE("identity tower: completely additive throughout") {
    LatticePtr k = kite_lattice();
    LatticeMap id = LatticeMap::identity(k);
    InverseSystem sys =
        validate_system({k, k, k}, {{1, 0, id}, {2, 1, id}});
    LimitClassification c = classify_limit(sys);
    CHECK(c.verdict == "strong");
    CHECK(c.maps.size() == 3);
    CHECK(passes(*build_limit(sys).model, AxiomSuite::Strong));
  }
}

TEST_CASE("decomposing the collapsed-pair kite yields its level tower") {
  StratifiedPtr S = strong_model_5();
  InverseSystem sys = decompose(*S);

  REQUIRE(sys.top_level() == 2);
  CHECK(sys.levels[0]->size() == 4);
  CHECK(sys.levels[1]->size() == 5);
  CHECK(sys.levels[2]->size() == 5);
  CHECK(sys.levels[0]->labels() ==
        std::vector<std::string>{"bot", "1", "2", "top"});

  // Step 1 -> 0 folds 0 into bot; step 2 -> 1 is the identity.
  const FiniteLattice& L1 = *sys.levels[1];
  CHECK(sys.levels[0]->label(sys.steps[0](L1.index_of("0"))) == "bot");
  CHECK(sys.levels[0]->label(sys.steps[0](L1.index_of("bot"))) == "bot");
  CHECK(sys.levels[0]->label(sys.steps[0](L1.index_of("1"))) == "1");
  CHECK(same_map(composite(sys, 2, 1), LatticeMap::identity(sys.levels[1])));

  CHECK_THROWS_AS(decompose(*build_stratified(chain_lattice(2), {{{}, false}})),
                  NotAModelError);
}

TEST_CASE("the restriction-tuple map is an isomorphism onto the limit") {
  for (const StratifiedPtr& S :
       {strong_model_5(), model_not_strong_4(),
        StratifiedLattice::discrete(multiset_lattice7())}) {
    RepresentationCheck rc = representation_isomorphism(*S);
    REQUIRE(rc.forward.size() == static_cast<size_t>(S->size()));
    for (int x = 0; x < S->size(); ++x)
      CHECK(rc.backward[rc.forward[x]] == x);

    // The limit's own stratification replays the model through the map.
    auto iso = find_stratified_isomorphism(*S, *rc.limit.model);
    REQUIRE(iso.has_value());
  }

  // On the collapsed-pair kite the tuple map follows top-level element
  // order, so it is the identity permutation.
  RepresentationCheck rc = representation_isomorphism(*strong_model_5());
  CHECK(rc.forward == std::vector<int>{0, 1, 2, 3, 4});

  SUBCASE("the whole small corpus round-trips") {
    for (const StratifiedPtr& S : all_models(4, 2))
      CHECK_NOTHROW(representation_isomorphism(*S));
  }
}

TEST_CASE("a limit is itself a model whose decomposition round-trips") {
  LimitModel lim = build_limit(multiset_system());
  RepresentationCheck rc = representation_isomorphism(*lim.model);
  CHECK(rc.system.levels[0]->size() ==
        popcount(lim.model->restriction_image(0)));
  for (int x = 0; x < lim.model->size(); ++x)
    CHECK(rc.backward[rc.forward[x]] == x);
}
