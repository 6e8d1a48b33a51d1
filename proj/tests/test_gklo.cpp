#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "exactalg/serialize.hpp"
#include "gklo/phihat.hpp"
#include "shuffle/special.hpp"

using namespace qsh;

namespace {

RatFunc RF(const std::string& s) { return parseRat(s); }

// degree-one element x_{node,1}^n
ShuffleElement xpow(std::shared_ptr<const AlgebraSpec> alg, int node,
                    int64_t n) {
  std::vector<int> k((size_t)alg->n, 0);
  k[node] = 1;
  return ShuffleElement(alg, k,
                        RatFunc::fromMono(Mono::of(gX(node, 1), 2 * n)));
}

DKey keyAt(const GKLOContext& c, int node, int row, int m) {
  DKey k;
  k.e.assign(c.alg->totalRows(), 0);
  k.e[c.alg->flat(node, row)] = m;
  return k;
}

std::shared_ptr<const AlgebraSpec> jordanQuiver() {
  QuiverData qd = parseQuiverText("nodes 1\nedge 0 0 t\n");
  return AlgebraSpec::quiverAlg(qd);
}

std::shared_ptr<const AlgebraSpec> lineQuiver() {
  QuiverData qd = parseQuiverText("nodes 2\nedge 0 1 t\n");
  return AlgebraSpec::quiverAlg(qd);
}

// both halves, to cut down on repetition
const Half halves[2] = {Half::Plus, Half::Minus};

void checkGenMatchesGeneric(const GKLOContext& c, int node, int64_t n) {
  auto alg = c.alg->spec;
  for (Half h : halves) {
    CAPTURE((int)h);
    CAPTURE(node);
    CAPTURE(n);
    CHECK(generatorImage(c, h, node, n) == phiHat(c, h, xpow(alg, node, n)));
  }
}

}  // namespace

TEST_CASE("framing counts and context files") {
  CartanData cyc = cartanCyclic(3);

  CHECK(GKLOContext::framesFromShifts(cyc, {2, 2, 2}, {0, 0, 0}) ==
        std::vector<int>{0, 0, 0});
  CHECK(GKLOContext::framesFromShifts(cyc, {2, 2, 2}, {1, 1, 1}) ==
        std::vector<int>{1, 1, 1});
  CHECK(GKLOContext::framesFromShifts(cyc, {2, 3, 2}, {1, 0, 1}) ==
        std::vector<int>{1 + 4 - 2 - 3, 0 + 6 - 2 - 2, 1 + 4 - 3 - 2});
  // a = (1,2,1) leaves node 0 with 2 - 2 - 1 < 0 rows of framing
  CHECK_THROWS(GKLOContext::framesFromShifts(cyc, {1, 2, 1}, {0, 0, 0}));

  auto sl2 = AlgebraSpec::sl2();
  CHECK_THROWS(GKLOContext::make(sl2, {2}, {1, 1}));  // frame count off
  CHECK_THROWS(GKLOContext::make(sl2, {2}, {-1}));

  GKLOContext c = parseContextText(
      "family toroidal-sln\nn 3\na 2 2 2\nb 1 1 1\nz formal\n");
  CHECK(c.frames == std::vector<int>{1, 1, 1});
  CHECK(c.spec().family == Family::ToroidalSLN);

  GKLOContext g = parseContextText("family toroidal-gl1\na 2\nN 2\nz 3 5/2\n");
  CHECK(g.frames == std::vector<int>{2});
  REQUIRE(g.zvals.size() == 1);
  CHECK(g.zvals[0] == std::vector<Q>{Q(3), Q(5) / 2});

  CHECK_THROWS(parseContextText("family toroidal-gl1\na 2\nN 2\nz 3\n"));
  CHECK_THROWS(parseContextText("family toroidal-gl1\na 2\nN 1\nb 1\n"));
  CHECK_THROWS(parseContextText("family affine\n"));  // no cartan file
}

TEST_CASE("framing products") {
  auto gl1 = AlgebraSpec::toroidalGL1();
  GKLOContext c = GKLOContext::make(gl1, {2}, {1});
  Mono w1 = Mono::of(gW(0, 1), 2);

  CHECK(RatFunc(c.Zi(0, w1)) == RF("1 - z[0,1]/w[0,1]"));
  CHECK(RatFunc(c.Wi(0, w1)) == RF("(1 - w[0,1]/w[0,1])*(1 - w[0,2]/w[0,1])"));
  CHECK(RatFunc(c.Wir(0, 1, w1)) == RF("1 - w[0,2]/w[0,1]"));
  CHECK(RatFunc(c.Wir(0, 2, w1)) == RF("1 - w[0,1]/w[0,1]"));

  // specialization replaces the formal z by the given value
  c.specializeZ({{Q(3)}});
  CHECK(RatFunc(c.Zi(0, w1)) == RF("1 - 3/w[0,1]"));
  CHECK_THROWS(c.specializeZ({{Q(0)}}));
  CHECK_THROWS(c.specializeZ({{Q(1), Q(2)}}));

  // the node parameter multiplies the framing value for the Cartan families
  auto sl2 = AlgebraSpec::sl2();
  GKLOContext s = GKLOContext::make(sl2, {1}, {1});
  CHECK(RatFunc(s.Zi(0, w1)) == RF("1 - q*z[0,1]/w[0,1]"));
}

TEST_CASE("mode images match the generic evaluation") {
  // affine sl2
  {
    auto sl2 = AlgebraSpec::sl2();
    GKLOContext c = GKLOContext::make(sl2, {2}, {1});
    for (int64_t n : {-1, 0, 1}) checkGenMatchesGeneric(c, 0, n);
  }
  // affine A2 with unequal rows and framing
  {
    auto a2 = AlgebraSpec::affine(cartanA2());
    GKLOContext c = GKLOContext::make(a2, {2, 1}, {1, 0});
    checkGenMatchesGeneric(c, 0, 0);
    checkGenMatchesGeneric(c, 1, 1);
  }
  // toroidal gl1
  {
    auto gl1 = AlgebraSpec::toroidalGL1();
    GKLOContext c = GKLOContext::make(gl1, {2}, {2});
    for (int64_t n : {0, 2}) checkGenMatchesGeneric(c, 0, n);
  }
  // toroidal sl3
  {
    auto t3 = AlgebraSpec::toroidalSLN(3);
    GKLOContext c = GKLOContext::make(t3, {1, 2, 1}, {1, 1, 1});
    checkGenMatchesGeneric(c, 1, 1);
    checkGenMatchesGeneric(c, 1, -1);
    checkGenMatchesGeneric(c, 0, 0);
  }
  // quivers: a loop and an honest edge
  {
    GKLOContext c = GKLOContext::make(jordanQuiver(), {2}, {1});
    checkGenMatchesGeneric(c, 0, 0);
    checkGenMatchesGeneric(c, 0, 1);
  }
  {
    GKLOContext c = GKLOContext::make(lineQuiver(), {2, 1}, {1, 1});
    checkGenMatchesGeneric(c, 0, 0);
    checkGenMatchesGeneric(c, 1, 0);
  }
}

TEST_CASE("single-row images in closed form") {
  // sl2, one row, no framing: e_n -> -q/(1-q^2) w^{n+1} D^{-1},
  // f_n -> 1/(1-q^2) (q^2 w)^n D
  auto sl2 = AlgebraSpec::sl2();
  GKLOContext c = GKLOContext::make(sl2, {1}, {0});
  for (int64_t n : {-1, 0, 1, 2}) {
    RatFunc ce = RatFunc::fromMono(
        Mono::of(gW(0, 1), 2 * (n + 1)) * Mono::of(gParam("q"), 2), Q(-1));
    ce.pushDenFactor(Poly::constant(1) -
                     Poly::fromMono(Mono::of(gParam("q"), 4)));
    DiffOperator e(c.alg);
    e.addTerm(keyAt(c, 0, 1, -1), ce);
    CHECK(generatorImage(c, Half::Plus, 0, n) == e);

    Mono zm = Mono::of(gW(0, 1), 2 * n);
    zm.mulGen(gParam("q"), 4 * n);
    RatFunc cf = RatFunc::fromMono(zm);
    cf.pushDenFactor(Poly::constant(1) -
                     Poly::fromMono(Mono::of(gParam("q"), 4)));
    DiffOperator f(c.alg);
    f.addTerm(keyAt(c, 0, 1, 1), cf);
    CHECK(generatorImage(c, Half::Minus, 0, n) == f);
  }

  // toroidal gl1, one row, no framing: f_n -> 1/(1-q1) (q1 w)^n D
  auto gl1 = AlgebraSpec::toroidalGL1();
  GKLOContext g = GKLOContext::make(gl1, {1}, {0});
  Mono zm = Mono::of(gW(0, 1), 2);
  zm.mulGen(gParam("q1"), 2);
  RatFunc cf = RatFunc::fromMono(zm);
  cf.pushDenFactor(Poly::constant(1) -
                   Poly::fromMono(Mono::of(gParam("q1"), 2)));
  DiffOperator f(g.alg);
  f.addTerm(keyAt(g, 0, 1, 1), cf);
  CHECK(generatorImage(g, Half::Minus, 0, 1) == f);
}

TEST_CASE("unit image and vanishing thresholds") {
  auto sl2 = AlgebraSpec::sl2();
  GKLOContext c = GKLOContext::make(sl2, {2}, {1});
  for (Half h : halves)
    CHECK(phiHat(c, h, ShuffleElement::unit(sl2)) ==
          DiffOperator::coeff(c.alg, RatFunc::fromQ(1)));

  // grading above the row count dies in both routes
  {
    GKLOContext one = GKLOContext::make(sl2, {1}, {1});
    CHECK(phiHat(one, Half::Plus, makeE(sl2, {2}, RatFunc::fromQ(1)))
              .isZero());
    CHECK(phiHat(one, Half::Minus, makeF(sl2, {2}, RatFunc::fromQ(1)))
              .isZero());
    CHECK(closedFormImage(one, Half::Plus, {2}, RatFunc::fromQ(1)).isZero());
  }
  {
    auto gl1 = AlgebraSpec::toroidalGL1();
    GKLOContext one = GKLOContext::make(gl1, {1}, {1});
    CHECK(phiHat(one, Half::Plus, makeE(gl1, {2}, RatFunc::fromQ(1)))
              .isZero());
    CHECK(phiHat(one, Half::Minus, makeF(gl1, {2}, RatFunc::fromQ(1)))
              .isZero());
    CHECK(closedFormImage(one, Half::Minus, {2}, RatFunc::fromQ(1)).isZero());
  }
}

TEST_CASE("macdonald operators from three routes") {
  auto gl1 = AlgebraSpec::toroidalGL1();
  GKLOContext c = GKLOContext::make(gl1, {3}, {0});
  for (int k = 1; k <= 3; ++k) {
    CAPTURE(k);
    DiffOperator direct = macdonaldOp(c.alg, k);
    CHECK(macdonaldOperator(k, 3) == direct);
    CHECK(closedFormImage(c, Half::Plus, {k}, RatFunc::fromQ(1)) == direct);
  }
  for (int k = 1; k <= 2; ++k) {
    CAPTURE(k);
    CHECK(phiHat(c, Half::Plus, makeE(gl1, {k}, RatFunc::fromQ(1))) ==
          macdonaldOp(c.alg, k));
  }
  // the inverted variant carries positive shifts
  DiffOperator inv = macdonaldOperator(1, 2, true);
  CHECK(inv.terms.size() == 2);
  for (const auto& [key, coeffv] : inv.terms) {
    int s = 0;
    for (int32_t e : key.e) s += e;
    CHECK(s == 1);
  }
}

TEST_CASE("closed forms match the generic evaluation") {
  // single-node, varying rows, gradings, coefficient functions
  auto sl2 = AlgebraSpec::sl2();
  for (int a : {2, 3}) {
    GKLOContext c = GKLOContext::make(sl2, {a}, {1});
    for (int k : {1, 2}) {
      std::vector<RatFunc> gs = {RatFunc::fromQ(1)};
      if (k == 2) {
        gs.push_back(RF("x[0,1]*x[0,2]"));
        gs.push_back(RF("x[0,1]+x[0,2]"));
      } else {
        gs.push_back(RF("x[0,1]"));
      }
      for (const RatFunc& g : gs) {
        CAPTURE(a);
        CAPTURE(k);
        CHECK(closedFormImage(c, Half::Plus, {k}, g) ==
              phiHat(c, Half::Plus, makeE(sl2, {k}, g)));
        CHECK(closedFormImage(c, Half::Minus, {k}, g) ==
              phiHat(c, Half::Minus, makeF(sl2, {k}, g)));
      }
    }
  }

  // two nodes with an oriented edge, mixed gradings
  {
    auto a2 = AlgebraSpec::affine(cartanA2());
    GKLOContext c = GKLOContext::make(a2, {2, 2}, {1, 0});
    for (std::vector<int> k : {std::vector<int>{1, 1}, {1, 0}, {0, 1}}) {
      CAPTURE(k[0]);
      CAPTURE(k[1]);
      CHECK(closedFormImage(c, Half::Plus, k, RatFunc::fromQ(1)) ==
            phiHat(c, Half::Plus, makeE(a2, k, RatFunc::fromQ(1))));
      CHECK(closedFormImage(c, Half::Minus, k, RatFunc::fromQ(1)) ==
            phiHat(c, Half::Minus, makeF(a2, k, RatFunc::fromQ(1))));
    }
    std::vector<int> k22{2, 2};
    CHECK(closedFormImage(c, Half::Plus, k22, RatFunc::fromQ(1)) ==
          phiHat(c, Half::Plus, makeE(a2, k22, RatFunc::fromQ(1))));
    CHECK(closedFormImage(c, Half::Minus, k22, RatFunc::fromQ(1)) ==
          phiHat(c, Half::Minus, makeF(a2, k22, RatFunc::fromQ(1))));
  }

  // three-parameter single node
  {
    auto gl1 = AlgebraSpec::toroidalGL1();
    GKLOContext c3 = GKLOContext::make(gl1, {3}, {1});
    for (int k : {1, 2, 3}) {
      CAPTURE(k);
      CHECK(closedFormImage(c3, Half::Plus, {k}, RatFunc::fromQ(1)) ==
            phiHat(c3, Half::Plus, makeE(gl1, {k}, RatFunc::fromQ(1))));
      CHECK(closedFormImage(c3, Half::Minus, {k}, RatFunc::fromQ(1)) ==
            phiHat(c3, Half::Minus, makeF(gl1, {k}, RatFunc::fromQ(1))));
    }
    RatFunc g = RF("x[0,1]+x[0,2]");
    CHECK(closedFormImage(c3, Half::Plus, {2}, g) ==
          phiHat(c3, Half::Plus, makeE(gl1, {2}, g)));
    GKLOContext c0 = GKLOContext::make(gl1, {2}, {0});
    CHECK(closedFormImage(c0, Half::Minus, {2}, g) ==
          phiHat(c0, Half::Minus, makeF(gl1, {2}, g)));
  }

  // cyclic rank three
  {
    auto t3 = AlgebraSpec::toroidalSLN(3);
    GKLOContext c1 = GKLOContext::make(
        t3, {1, 1, 1}, GKLOContext::framesFromShifts(cartanCyclic(3),
                                                     {1, 1, 1}, {1, 1, 1}));
    std::vector<int> k1{1, 1, 1};
    CHECK(closedFormImage(c1, Half::Plus, k1, RatFunc::fromQ(1)) ==
          phiHat(c1, Half::Plus, makeE(t3, k1, RatFunc::fromQ(1))));
    CHECK(closedFormImage(c1, Half::Minus, k1, RatFunc::fromQ(1)) ==
          phiHat(c1, Half::Minus, makeF(t3, k1, RatFunc::fromQ(1))));

    GKLOContext c2 = GKLOContext::make(
        t3, {2, 2, 2}, GKLOContext::framesFromShifts(cartanCyclic(3),
                                                     {2, 2, 2}, {1, 1, 1}));
    std::vector<int> k2{2, 2, 2};
    CHECK(closedFormImage(c2, Half::Plus, k2, RatFunc::fromQ(1)) ==
          phiHat(c2, Half::Plus, makeE(t3, k2, RatFunc::fromQ(1)), 2));
    CHECK(closedFormImage(c2, Half::Minus, k2, RatFunc::fromQ(1)) ==
          phiHat(c2, Half::Minus, makeF(t3, k2, RatFunc::fromQ(1)), 2));
  }

  // no closed form for quivers
  {
    GKLOContext c = GKLOContext::make(jordanQuiver(), {1}, {0});
    CHECK_THROWS(closedFormImage(c, Half::Plus, {1}, RatFunc::fromQ(1)));
  }
}

TEST_CASE("images multiply like the elements") {
  auto checkPair = [](const char* label, const GKLOContext& c,
                      const ShuffleElement& F, const ShuffleElement& G,
                      bool viaProduct) {
    for (Half h : halves) {
      std::string lbl(label);
      CAPTURE(lbl);
      CAPTURE((int)h);
      DiffOperator lhs = phiHatProduct(c, h, F, G);
      // the negative half carries the opposite product: images of F * G
      // multiply in reversed operator order
      DiffOperator rhs = h == Half::Plus
                             ? phiHat(c, h, F) * phiHat(c, h, G)
                             : phiHat(c, h, G) * phiHat(c, h, F);
      CHECK(lhs == rhs);
      if (viaProduct) CHECK(lhs == phiHat(c, h, F * G, 2));
    }
  };

  {
    auto sl2 = AlgebraSpec::sl2();
    GKLOContext c = GKLOContext::make(sl2, {2}, {1});
    checkPair("sl2", c, xpow(sl2, 0, 0), xpow(sl2, 0, 1), true);
  }
  {
    auto a2 = AlgebraSpec::affine(cartanA2());
    GKLOContext c = GKLOContext::make(a2, {2, 1}, {1, 0});
    checkPair("a2-01", c, xpow(a2, 0, 0), xpow(a2, 1, 1), true);
    checkPair("a2-10", c, xpow(a2, 1, 1), xpow(a2, 0, 0), false);
  }
  {
    auto gl1 = AlgebraSpec::toroidalGL1();
    GKLOContext c = GKLOContext::make(gl1, {2}, {1});
    checkPair("gl1", c, xpow(gl1, 0, 1), xpow(gl1, 0, -1), true);
  }
  {
    auto t3 = AlgebraSpec::toroidalSLN(3);
    GKLOContext c = GKLOContext::make(t3, {1, 1, 1}, {1, 1, 1});
    checkPair("t3-01", c, xpow(t3, 0, 0), xpow(t3, 1, 0), true);
    checkPair("t3-10", c, xpow(t3, 1, 0), xpow(t3, 0, 0), false);
  }
  {
    auto jq = jordanQuiver();
    GKLOContext c = GKLOContext::make(jq, {2}, {1});
    checkPair("jordan", c, xpow(jq, 0, 0), xpow(jq, 0, 1), true);
  }
  {
    // the adjoined formal powers must commute correctly past the shifts
    auto lq = lineQuiver();
    GKLOContext c = GKLOContext::make(lq, {1, 1}, {1, 1});
    checkPair("line-01", c, xpow(lq, 0, 0), xpow(lq, 1, 0), true);
    checkPair("line-10", c, xpow(lq, 1, 0), xpow(lq, 0, 0), false);
  }
}

TEST_CASE("uncancelled poles are reported") {
  auto gl1 = AlgebraSpec::toroidalGL1();
  GKLOContext c = GKLOContext::make(gl1, {1}, {0});
  // the evaluation points of one tower differ by q1, so this denominator
  // cannot cancel
  RatFunc v = RatFunc::fromMono(Mono::of(gX(0, 1), 2));
  v.pushDenFactor(RF("x[0,1] - q1*x[0,2]").num);
  ShuffleElement bad(gl1, {2}, v);
  CHECK_THROWS_AS((void)phiHat(c, Half::Plus, bad), PoleError);
}

TEST_CASE("diagonal current images") {
  // sl2, one row, no framing
  auto sl2 = AlgebraSpec::sl2();
  GKLOContext c = GKLOContext::make(sl2, {1}, {0});
  Mono u = Mono::of(gParam("t"), 2);  // a free argument
  CHECK(psiImage(c, 0, u) ==
        RF("w[0,1]/((1 - w[0,1]/t)*(1 - q^2*w[0,1]/t))"));

  // gl1 with one framing slot
  auto gl1 = AlgebraSpec::toroidalGL1();
  GKLOContext g = GKLOContext::make(gl1, {1}, {1});
  CHECK(psiImage(g, 0, u) ==
        RF("(1 - z[0,1]/t)*(t - w[0,1]/q2)*(t - q1*q2*w[0,1])"
           "/((t - w[0,1])*(t - q1*w[0,1]))"));

  // threads do not change the result
  GKLOContext c2 = GKLOContext::make(sl2, {3}, {1});
  ShuffleElement E = makeE(sl2, {2}, RatFunc::fromQ(1));
  CHECK(phiHat(c2, Half::Plus, E, 1) == phiHat(c2, Half::Plus, E, 4));
}
