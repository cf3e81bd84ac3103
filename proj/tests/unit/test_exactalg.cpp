#include <random>

#include "doctest.h"
#include "primform/errors.hpp"
#include "primform/mpoly.hpp"
#include "primform/parse.hpp"
#include "primform/unfold_ring.hpp"

using namespace primform;

namespace {

MPoly P(const std::string& s, const VarsPtr& v) { return parse_polynomial(s, v); }

MPoly random_poly(std::mt19937& rng, const VarsPtr& v) {
  MPoly p(v);
  std::uniform_int_distribution<int> e(0, 3), c(-5, 5), n(1, 5);
  int terms = n(rng);
  for (int k = 0; k < terms; ++k) p.add_term({e(rng), e(rng)}, Rat(c(rng), n(rng)));
  return p;
}

UnfoldRingElem random_elem(std::mt19937& rng, const RingPtr& ring) {
  std::vector<UnfoldRingElem::Term> terms;
  std::uniform_int_distribution<int> e(0, 3), c(-5, 5);
  for (int k = 0; k < 6; ++k) {
    UKey key = ring->key({e(rng), e(rng), e(rng)});
    if (key.degree() <= ring->order()) terms.push_back({key, Rat(c(rng))});
  }
  return UnfoldRingElem::from_terms(ring, terms);
}

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(Rat(6, 8).str() == "3/4");
  CHECK(Rat(4, -2).str() == "-2");
  CHECK(Rat::parse(" -10/4 ") == Rat(-5, 2));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(-7, 2).ceil() == -3);
  CHECK_THROWS_AS(Rat(1, 0), Error);
  CHECK_THROWS_AS(Rat(0).inverse(), Error);
  CHECK(factorial(6) == Rat(720));
  CHECK(pow(Rat(2, 3), -2) == Rat(9, 4));
}

TEST_CASE("poly_mul examples") {
  auto v = VariableSet::make({"x", "y"});
  CHECK(poly_mul(P("x+y", v), P("x-y", v)) == P("x^2-y^2", v));
  auto z = VariableSet::make({"z"}, {true});
  CHECK(poly_mul(P("z^-1", z), P("z", z)) == MPoly::constant(z, Rat(1)));
  auto w = VariableSet::make({"z"});
  CHECK(poly_mul(P("1/3*z^2", w), P("3*z^2", w)) == P("z^4", w));
  CHECK_THROWS_AS(poly_mul(P("x", v), P("z", w)), Error);
}

TEST_CASE("negative exponents need the Laurent flag") {
  auto w = VariableSet::make({"z"});
  CHECK_THROWS_AS(MPoly::monomial(w, {-1}), Error);
}

TEST_CASE("weighted_degree examples") {
  auto v = VariableSet::make({"x", "y"});
  WeightSystem q({Rat(1, 3), Rat(1, 7)});
  CHECK(weighted_degree(P("x*y^5", v), q) == Rat(22, 21));
  CHECK(weighted_degree(MPoly::constant(v, Rat(1)), q) == Rat(0));
  CHECK_FALSE(weighted_degree(P("x+y", v), q).has_value());
  CHECK_FALSE(weighted_degree(MPoly(v), q).has_value());
}

TEST_CASE("random polynomial ring laws") {
  std::mt19937 rng(11);
  auto v = VariableSet::make({"x", "y"});
  WeightSystem q({Rat(1, 3), Rat(1, 7)});
  for (int k = 0; k < 200; ++k) {
    MPoly a = random_poly(rng, v), b = random_poly(rng, v), c = random_poly(rng, v);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
  }
  for (int k = 0; k < 100; ++k) {
    std::uniform_int_distribution<int> e(0, 4);
    MPoly a = MPoly::monomial(v, {e(rng), e(rng)}), b = MPoly::monomial(v, {e(rng), e(rng)});
    CHECK(*weighted_degree(poly_mul(a, b), q) == *weighted_degree(a, q) + *weighted_degree(b, q));
  }
}

TEST_CASE("trunc_mul examples") {
  auto r1 = std::make_shared<UnfoldRing>(std::vector<std::string>{"u1"}, 1, std::vector<Rat>{Rat(1)});
  auto u1 = UnfoldRingElem::variable(r1, 0);
  auto one = UnfoldRingElem::constant(r1, Rat(1));
  CHECK(trunc_mul(one + u1, one - u1) == one);

  auto r3 = std::make_shared<UnfoldRing>(std::vector<std::string>{"u1"}, 3, std::vector<Rat>{Rat(1)});
  auto v = UnfoldRingElem::variable(r3, 0);
  CHECK(trunc_mul(trunc_mul(trunc_mul(v, v), v), v).is_zero());

  auto r2 = std::make_shared<UnfoldRing>(std::vector<std::string>{"u1", "u2"}, 2, std::vector<Rat>{Rat(1), Rat(1)});
  auto a = UnfoldRingElem::variable(r2, 0), b = UnfoldRingElem::variable(r2, 1);
  CHECK(trunc_mul(a + b, a + b) == trunc_mul(a, a) + trunc_mul(a, b).scaled(Rat(2)) + trunc_mul(b, b));

  CHECK_THROWS_AS(trunc_mul(u1, v), Error);
}

TEST_CASE("trunc_mul equals full product filtered by degree") {
  std::mt19937 rng(5);
  for (int N = 1; N <= 6; ++N) {
    auto ring = std::make_shared<UnfoldRing>(std::vector<std::string>{"a", "b", "c"}, N,
                                             std::vector<Rat>{Rat(1), Rat(1, 2), Rat(-1, 3)});
    for (int k = 0; k < 30; ++k) {
      auto x = random_elem(rng, ring), y = random_elem(rng, ring), z = random_elem(rng, ring);
      std::vector<UnfoldRingElem::Term> full;
      for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
          UKey sum = kx + ky;
          if (sum.degree() <= N) full.push_back({sum, cx * cy});
        }
      CHECK(trunc_mul(x, y) == UnfoldRingElem::from_terms(ring, full));
      CHECK(trunc_mul(trunc_mul(x, y), z) == trunc_mul(x, trunc_mul(y, z)));
      CHECK(trunc_mul(x, y) == trunc_mul(y, x));
    }
  }
}

TEST_CASE("ring capacity is enforced") {
  std::vector<std::string> names(33, "u");
  CHECK_THROWS_AS(UnfoldRing(names, 2, std::vector<Rat>(33, Rat(1))), Error);
  CHECK_THROWS_AS(UnfoldRing({"u"}, 16, {Rat(1)}), Error);
}
