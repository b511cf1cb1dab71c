#include <catch2/catch_amalgamated.hpp>

#include "cusp/gen.hpp"
#include "cusp/io.hpp"

using namespace cusp;

namespace {
const Shape kSource = make_shape(2, {1, 1}, {2});
}

TEST_CASE("rational strings are canonical", "[io]") {
  REQUIRE(rat_to_string(Rat(1, 4)) == "1/4");
  REQUIRE(rat_to_string(Rat(2, 4)) == "1/2");
  REQUIRE(rat_to_string(Rat(3)) == "3");
  REQUIRE(rat_from_string("6/8") == Rat(3, 4));
  REQUIRE_THROWS_AS(rat_from_string("1/0"), Error);
  REQUIRE_THROWS_AS(rat_from_string("a/b"), Error);
  REQUIRE_THROWS_AS(rat_from_string(""), Error);
}

TEST_CASE("documents round-trip to equal values", "[io]") {
  gen::Rng rng(4711);

  SECTION("shape") {
    Shape s = gen::random_shape(rng, 3, 2);
    REQUIRE(decode_shape(encode(s)) == s);
  }
  SECTION("rank function") {
    for (int k = 0; k < 20; ++k) {
      RankFunction f = gen::random_rank_function(rng, kSource, 8, 3);
      REQUIRE(decode_rankfn(encode(f)) == f);
    }
    RankFunction inf = RankFunction::constant(interval_shape(2), ExtNat::infinity());
    REQUIRE(decode_rankfn(encode(inf)) == inf);
  }
  SECTION("level set") {
    LevelSet l({1}, {{Rat(0), Rat(1, 2)}, {Rat(2, 3), Rat(3, 4)}}, {});
    REQUIRE(decode_levelset(encode(l)) == l);
  }
  SECTION("homs of every target kind") {
    for (auto kind :
         {Target::Kind::Sia, Target::Kind::IntervalMatrix, Target::Kind::MatrixSum}) {
      StandardFormHom h = gen::random_unital_hom(rng, kSource, kind);
      StandardFormHom back = decode_hom(encode(h));
      REQUIRE(back == h);
      REQUIRE(validate(back).empty());
    }
  }
  SECTION("tables") {
    StandardFormHom h = gen::random_unital_hom(rng, kSource, Target::Kind::Sia);
    MorphismTable t = restrict_table(h, 3);
    MorphismTable back = decode_table(encode(t));
    REQUIRE(back.values == t.values);
    REQUIRE(back.unit == t.unit);
    REQUIRE(back.depth == t.depth);
  }
  SECTION("towers and families") {
    StandardFormHom g = gen::random_unital_hom(rng, kSource, Target::Kind::Sia);
    Tower t = gen::random_tower(rng, g.target.shape, 3);
    Json jt = encode(t);
    Tower back = decode_tower(jt);
    REQUIRE(encode(back).dump() == jt.dump());
    AlphaFamily fam = gen::family_from_hom(g, 4);
    Json jf = encode(fam);
    REQUIRE(encode(decode_alpha(jf)).dump() == jf.dump());
  }
  SECTION("certificates") {
    StandardFormHom g = gen::random_unital_hom(rng, kSource, Target::Kind::Sia);
    Tower t = gen::random_tower(rng, g.target.shape, 2);
    AlphaFamily fam = gen::family_from_hom(g, 4);
    IntertwiningCertificate cert = intertwine(t, fam, 1);
    Json jc = encode(cert);
    IntertwiningCertificate back = decode_certificate(jc);
    REQUIRE(encode(back).dump() == jc.dump());
    REQUIRE(revalidate(t, fam, back));
  }
}

TEST_CASE("document envelope", "[io]") {
  Json payload = encode(generator_y(kSource, Rat(1, 2)));
  std::string text = dump_document("rankfn", payload);
  Document doc = parse_document(text);
  REQUIRE(doc.kind == "rankfn");
  REQUIRE(decode_rankfn(doc.payload) == generator_y(kSource, Rat(1, 2)));
  REQUIRE_THROWS_AS(parse_document("{\"version\":\"other/9\"}"), Error);
  REQUIRE_THROWS_AS(parse_document("not json"), Error);
}

TEST_CASE("emission is byte-deterministic", "[io]") {
  gen::Rng rngA(99), rngB(99);
  StandardFormHom a = gen::random_unital_hom(rngA, kSource, Target::Kind::Sia);
  StandardFormHom b = gen::random_unital_hom(rngB, kSource, Target::Kind::Sia);
  REQUIRE(dump_document("hom", encode(a)) == dump_document("hom", encode(b)));
  MorphismTable ta = restrict_table(a, 4);
  MorphismTable tb = restrict_table(b, 4);
  REQUIRE(dump_document("table", encode(ta)) == dump_document("table", encode(tb)));
}
