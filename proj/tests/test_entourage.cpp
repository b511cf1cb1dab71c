#include <catch2/catch_amalgamated.hpp>

#include "cusp/entourage.hpp"
#include "cusp/gen.hpp"

using namespace cusp;

namespace {
const Shape kShape = make_shape(2, {1, 1}, {2});

Rat half_pow(int n) { return Rat(1, std::int64_t{1} << n); }
}  // namespace

TEST_CASE("make_generator_set builds F_n with its way-below pairs", "[entourage]") {
  GeneratorSet f = make_generator_set(kShape, 1);
  // x_{1,1}, x_{2,1}, y_0, y_{1/2}, y_1
  REQUIRE(f.keys.size() == 5);
  auto indexOf = [&](const GenKey& k) {
    for (std::size_t i = 0; i < f.keys.size(); ++i)
      if (f.keys[i] == k) return i;
    FAIL("key not found");
    return std::size_t{0};
  };
  auto hasPair = [&](const GenKey& a, const GenKey& b) {
    auto p = std::make_pair(indexOf(a), indexOf(b));
    return std::find(f.wbPairs.begin(), f.wbPairs.end(), p) != f.wbPairs.end();
  };
  REQUIRE(hasPair(GenKey::y(Rat(1, 2)), GenKey::y(Rat(0))));
  REQUIRE(hasPair(GenKey::x(1, 1), GenKey::x(1, 1)));
  REQUIRE(hasPair(GenKey::y(Rat(1)), GenKey::x(2, 1)));  // 0 is way below everything
  REQUIRE_FALSE(hasPair(GenKey::y(Rat(0)), GenKey::y(Rat(1, 2))));
  REQUIRE_FALSE(hasPair(GenKey::x(1, 1), GenKey::x(2, 1)));
}

TEST_CASE("in_entourage on tables and morphisms", "[entourage]") {
  gen::Rng rng(808);
  StandardFormHom h = gen::random_unital_hom(rng, kShape, Target::Kind::Sia);
  GeneratorSet f = make_generator_set(kShape, 2);
  MorphismTable t = restrict_table(h, 2);

  SECTION("diagonal membership") {
    REQUIRE(in_entourage(f, t, t));
    REQUIRE(in_entourage(f, CuMorphism::induced(h), CuMorphism::induced(h)));
  }
  SECTION("perturbations within the dyadic step stay inside") {
    StandardFormHom g = gen::perturb_interior(rng, h, half_pow(2));
    REQUIRE(in_entourage(f, t, restrict_table(g, 2)));
  }
  SECTION("symmetry") {
    StandardFormHom g = gen::perturb_interior(rng, h, half_pow(2));
    MorphismTable tg = restrict_table(g, 2);
    REQUIRE(in_entourage(f, t, tg) == in_entourage(f, tg, t));
  }
  SECTION("mismatched targets raise DomainMismatch") {
    StandardFormHom other = gen::random_unital_hom(rng, kShape, Target::Kind::IntervalMatrix);
    REQUIRE_THROWS_AS(in_entourage(f, t, restrict_table(other, 2)), Error);
  }
}

TEST_CASE("a large eigenvalue shift leaves the entourage", "[entourage]") {
  // lambda shifted by 3/2^n breaks an adjacent y-pair at depth n.
  StandardFormHom h;
  h.source = kShape;
  h.target = Target::interval_matrix(2);
  h.unital = true;
  h.nu = {0, 0};
  h.omega = {0};
  h.lambdas = {EigenFunction::constant(Rat(1, 4))};
  h = make_standard_hom(h);

  StandardFormHom g = h;
  g.lambdas = {EigenFunction::constant(Rat(1, 4) + Rat(3, 8))};
  g = make_standard_hom(g);

  GeneratorSet f3 = make_generator_set(kShape, 3);
  REQUIRE_FALSE(in_entourage(f3, restrict_table(h, 3), restrict_table(g, 3)));
}

TEST_CASE("entourage chain law over sampled triples", "[entourage][property]") {
  gen::Rng rng(5150);
  int testedTriples = 0;
  for (int trial = 0; trial < 40 && testedTriples < 60; ++trial) {
    int n = 1 + static_cast<int>(rng.below(3));
    StandardFormHom a = gen::random_unital_hom(rng, kShape, Target::Kind::Sia);
    StandardFormHom b = gen::perturb_interior(rng, a, half_pow(n + 1));
    StandardFormHom c = gen::perturb_interior(rng, b, half_pow(n + 1));
    GeneratorSet fFine = make_generator_set(kShape, n + 1);
    GeneratorSet fCoarse = make_generator_set(kShape, n);
    MorphismTable ta = restrict_table(a, n + 1);
    MorphismTable tb = restrict_table(b, n + 1);
    MorphismTable tc = restrict_table(c, n + 1);
    if (!in_entourage(fFine, ta, tb) || !in_entourage(fFine, tb, tc)) continue;
    ++testedTriples;
    REQUIRE(in_entourage(fCoarse, ta.restricted(n), tc.restricted(n)));
    // U_{F_{n+1}} is finer than U_{F_n} outright.
    REQUIRE(in_entourage(fCoarse, ta.restricted(n), tb.restricted(n)));
  }
  REQUIRE(testedTriples >= 40);
}

TEST_CASE("intersection law: U_{F u G} sits inside U_F and U_G", "[entourage][property]") {
  gen::Rng rng(228);
  for (int trial = 0; trial < 20; ++trial) {
    StandardFormHom a = gen::random_unital_hom(rng, kShape, Target::Kind::Sia);
    StandardFormHom b = gen::perturb_interior(rng, a, half_pow(4));
    GeneratorSet fUnion = make_generator_set(kShape, 3);  // F_2 u extra y's lives inside F_3
    GeneratorSet f2 = make_generator_set(kShape, 2);
    MorphismTable ta = restrict_table(a, 3), tb = restrict_table(b, 3);
    if (in_entourage(fUnion, ta, tb)) {
      REQUIRE(in_entourage(f2, ta.restricted(2), tb.restricted(2)));
    }
  }
}

TEST_CASE("basis_index solves dyadic grid examples", "[entourage]") {
  SECTION("adjacent dyadic y-pair") {
    FinitePairSet f;
    f.elements = {generator_y(kShape, Rat(1, 2)), generator_y(kShape, Rat(1, 4))};
    f.wbPairs = {{0, 1}};
    REQUIRE(basis_index(f, kShape) == 2);
  }
  SECTION("zero below a compact generator") {
    FinitePairSet f;
    f.elements = {RankFunction::zero(kShape), generator_x(kShape, 1, 1)};
    f.wbPairs = {{0, 1}};
    REQUIRE(basis_index(f, kShape) == 0);
  }
  SECTION("subsets of F_m stay within m + 1") {
    for (int m = 1; m <= 3; ++m) {
      GeneratorSet fm = make_generator_set(kShape, m);
      FinitePairSet f;
      f.elements = fm.elements;
      f.wbPairs = fm.wbPairs;
      REQUIRE(basis_index(f, kShape) <= m + 1);
    }
  }
  SECTION("undeclared pairs are rejected") {
    FinitePairSet f;
    f.elements = {generator_y(kShape, Rat(1, 4)), generator_y(kShape, Rat(1, 2))};
    f.wbPairs = {{0, 1}};  // wrong direction
    REQUIRE_THROWS_AS(basis_index(f, kShape), Error);
  }
}

TEST_CASE("entourage membership pins the classifying tuple", "[entourage][property]") {
  // The Cu-level uniqueness duality: membership in U_{F_n} forces equal
  // tuples and eigenvalue functions within 1/2^(n-1); conversely equal
  // tuples with gap below the dyadic step put the pair inside U_{F_n}.
  gen::Rng rng(271828);
  int inside = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    StandardFormHom p = gen::random_unital_hom(rng, kShape, Target::Kind::Sia);
    Rat step = trial % 2 == 0 ? half_pow(n) : Rat(1, 3);
    StandardFormHom q = gen::perturb_interior(rng, p, step);
    GeneratorSet f = make_generator_set(kShape, n);
    if (in_entourage(f, restrict_table(p, n), restrict_table(q, n))) {
      ++inside;
      PatternDistance d = eigen_pattern_distance(p, q);
      REQUIRE(d.tuplesEqual);
      REQUIRE(d.maxGap.has_value());
      REQUIRE(*d.maxGap <= half_pow(n - 1));
    } else {
      PatternDistance d = eigen_pattern_distance(p, q);
      // A pair outside U_{F_n} must differ somewhere beyond the grid step.
      bool differs = !d.tuplesEqual || !d.maxGap || *d.maxGap > half_pow(n);
      REQUIRE(differs);
    }
  }
  REQUIRE(inside >= 20);
}

TEST_CASE("basis_index is sound on sampled morphism pairs", "[entourage][property]") {
  gen::Rng rng(161616);
  for (int trial = 0; trial < 10; ++trial) {
    RankFunction g = gen::random_rank_function(rng, kShape, 4, 2);
    if (g.is_zero()) continue;
    RankFunction a = approximant(g, 1 + static_cast<int>(rng.below(2)));
    FinitePairSet f;
    f.elements = {a, g};
    f.wbPairs = {{0, 1}};
    int n = basis_index(f, kShape);
    REQUIRE(n <= 12);
    GeneratorSet fn = make_generator_set(kShape, n);
    for (int sub = 0; sub < 10; ++sub) {
      StandardFormHom p = gen::random_unital_hom(rng, kShape, Target::Kind::Sia);
      StandardFormHom q = gen::perturb_interior(rng, p, Rat(1, std::int64_t{1} << (n + 1)));
      CuMorphism mp = CuMorphism::induced(p), mq = CuMorphism::induced(q);
      if (in_entourage(fn, mp, mq)) {
        REQUIRE(in_entourage(f, mp, mq));
      }
    }
  }
}
