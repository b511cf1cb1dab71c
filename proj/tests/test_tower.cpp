#include <catch2/catch_amalgamated.hpp>

#include "cusp/gen.hpp"
#include "cusp/tower.hpp"

using namespace cusp;

namespace {
const Shape kSource = make_shape(2, {1, 1}, {2});

Tower genuine_tower(gen::Rng& rng, StandardFormHom& g, std::size_t stages) {
  g = gen::random_unital_hom(rng, kSource, Target::Kind::Sia);
  return gen::random_tower(rng, g.target.shape, stages);
}
}  // namespace

TEST_CASE("random towers validate", "[tower]") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    StandardFormHom g;
    Tower t = genuine_tower(rng, g, 3);
    auto bad = validate(t);
    CAPTURE(bad);
    REQUIRE(bad.empty());
  }
}

TEST_CASE("push_forward is the identity at the same stage and composes", "[tower]") {
  gen::Rng rng(22);
  StandardFormHom g;
  Tower t = genuine_tower(rng, g, 3);
  SumElement e = apply_hom(g, generator_x(kSource, 1, 1));
  REQUIRE(push_forward(t, e, 0, 0) == e);

  SumElement oneStep = push_forward(t, e, 0, 1);
  SumElement twoStep = push_forward(t, oneStep, 1, 2);
  REQUIRE(push_forward(t, e, 0, 2) == twoStep);

  SECTION("single connect applies the hom") {
    Tower tiny;
    tiny.stages = {{kSource}, {g.target.shape}};
    tiny.connects = {{{0, 0, g}}};
    tiny.distinguished = {SumElement{{RankFunction::unit_class(kSource)}},
                          SumElement{{RankFunction::unit_class(g.target.shape)}}};
    REQUIRE(validate(tiny).empty());
    SumElement x = SumElement{{generator_y(kSource, Rat(1, 2))}};
    REQUIRE(push_forward(tiny, x, 0, 1) == apply_hom(g, generator_y(kSource, Rat(1, 2))));
  }
  SECTION("stage bounds are enforced") {
    REQUIRE_THROWS_AS(push_forward(t, e, 2, 1), Error);
    REQUIRE_THROWS_AS(push_forward(t, e, 0, 7), Error);
  }
}

TEST_CASE("limit comparisons scan for witness stages", "[tower]") {
  gen::Rng rng(33);
  StandardFormHom g;
  Tower t = genuine_tower(rng, g, 3);
  SumElement x = apply_hom(g, generator_x(kSource, 1, 1));
  SumElement y = apply_hom(g, RankFunction::unit_class(kSource));

  StageWitness w = limit_leq_compact(t, 0, x, y);
  REQUIRE(w.holds);
  REQUIRE(*w.stage == 0);

  SumElement zero = t.distinguished[0];
  for (auto& c : zero.comps) c = RankFunction::zero(c.shape());
  StageWitness wz = limit_leq_compact(t, 0, zero, zero);
  REQUIRE(wz.holds);

  SECTION("strictly incomparable classes never find a witness") {
    Tower idTower;
    idTower.stages = {{kSource}, {kSource}};
    StandardFormHom id;
    id.source = kSource;
    id.target = Target::sia(kSource);
    id.unital = true;
    id.nu = {0, 0};
    id.omega = {0};
    id.lambdas = {EigenFunction::identity()};
    id.at0 = {EndpointTuple{{1, 0}, {0}, {}}, EndpointTuple{{0, 1}, {0}, {}}};
    id.at1 = {EndpointTuple{{0, 0}, {0}, {Rat(1)}}};
    id = make_standard_hom(id);
    idTower.connects = {{{0, 0, id}}};
    idTower.distinguished = {SumElement{{RankFunction::unit_class(kSource)}},
                             SumElement{{RankFunction::unit_class(kSource)}}};
    REQUIRE(validate(idTower).empty());
    SumElement a{{generator_x(kSource, 1, 1)}};
    SumElement b{{generator_x(kSource, 2, 1)}};
    REQUIRE_FALSE(limit_leq_compact(idTower, 0, a, b).holds);
  }
  SECTION("way-below precondition is enforced") {
    REQUIRE_THROWS_AS(limit_way_below_check(t, 0, y, x, y), Error);
    StageWitness ww = limit_way_below_check(t, 0, x, x, y);
    REQUIRE(ww.holds);
  }
}

TEST_CASE("lift_through_tower on a single-stage tower reduces to lift_to_sia", "[tower]") {
  gen::Rng rng(44);
  StandardFormHom g = gen::random_unital_hom(rng, kSource, Target::Kind::Sia);
  Tower t;
  t.stages = {{g.target.shape}};
  t.connects = {};
  t.distinguished = {SumElement{{RankFunction::unit_class(g.target.shape)}}};
  AlphaFamily fam = gen::family_from_hom(g, 5);
  TowerLift lift = lift_through_tower(t, fam, 5);
  REQUIRE(lift.stage == 0);
  REQUIRE(lift.homs.size() == 1);
  REQUIRE(lift.certOk);
  REQUIRE(lift.certDepth == 2);
  StandardFormHom direct = lift_to_sia(restrict_table(g, 5));
  REQUIRE(lift.homs[0] == direct);
}

TEST_CASE("lift_through_tower pushes a genuine family to a lifting stage", "[tower]") {
  gen::Rng rng(55);
  for (int trial = 0; trial < 6; ++trial) {
    StandardFormHom g;
    Tower t = genuine_tower(rng, g, 3);
    AlphaFamily fam = gen::family_from_hom(g, 4);
    TowerLift lift = lift_through_tower(t, fam, 4);
    REQUIRE(lift.certOk);
    REQUIRE(lift.homs.size() == t.stages[lift.stage].size());
    // The lifted homs live over the right summands.
    for (std::size_t l = 0; l < lift.homs.size(); ++l)
      REQUIRE(lift.homs[l].target.shape == t.stages[lift.stage][l]);
  }
}

TEST_CASE("unit domination is a precondition", "[tower]") {
  gen::Rng rng(66);
  StandardFormHom g;
  Tower t = genuine_tower(rng, g, 2);
  AlphaFamily fam = gen::family_from_hom(g, 4);
  // Doubling the unit value breaks alpha[1_A] <= distinguished.
  fam.unit.value = add(fam.unit.value, fam.unit.value);
  REQUIRE_THROWS_MATCHES(lift_through_tower(t, fam, 4), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("distinguished")));
}

TEST_CASE("intertwine produces a re-validating certificate", "[tower]") {
  gen::Rng rng(77);
  StandardFormHom g;
  Tower t = genuine_tower(rng, g, 3);
  AlphaFamily fam = gen::family_from_hom(g, 5);  // depth N+3 for N = 2
  IntertwiningCertificate cert = intertwine(t, fam, 2);
  REQUIRE(cert.levels.size() == 2);
  REQUIRE(cert.all_checks_pass());
  REQUIRE(revalidate(t, fam, cert));

  SECTION("N = 0 yields an empty certificate") {
    REQUIRE(intertwine(t, fam, 0).levels.empty());
  }
  SECTION("too-shallow family is rejected") {
    REQUIRE_THROWS_AS(intertwine(t, fam, 4), Error);
  }
  SECTION("tampered certificates fail revalidation") {
    IntertwiningCertificate fake = cert;
    bool moved = false;
    for (auto& h : fake.levels[1].homs) {
      if (h.mu() == 0) continue;
      StandardFormHom shifted = gen::perturb_interior(rng, h, Rat(1, 2));
      if (shifted != h) {
        h = shifted;
        moved = true;
      }
    }
    if (moved) REQUIRE_FALSE(revalidate(t, fam, fake));
  }
  SECTION("inconsistent families fail at the first bad level") {
    AlphaFamily broken = fam;
    broken.values[GenKey::x(1, 1)].value =
        add(broken.values[GenKey::x(1, 1)].value, broken.values[GenKey::x(1, 1)].value);
    bool threw = false;
    try {
      intertwine(t, broken, 2);
    } catch (const Error&) {
      threw = true;
    }
    REQUIRE(threw);
  }
}
