#include "common.hpp"
#include "doctest.h"
#include "primform/unfolding.hpp"

using namespace primform;

namespace {

UnfoldRingElem var(const UnfoldingData& unf, int j) { return UnfoldRingElem::variable(unf.ring, *unf.variable_of(j)); }

TMatrix tmul(const TMatrix& a, const TMatrix& b) {
  TMatrix out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      QMatrix p = x * y;
      auto it = out.find(i + j);
      if (it == out.end()) {
        out.emplace(i + j, p);
      } else {
        for (std::size_t r = 0; r < p.rows(); ++r)
          for (std::size_t c = 0; c < p.cols(); ++c) it->second(r, c) += p(r, c);
      }
    }
  for (auto it = out.begin(); it != out.end();) {
    bool zero = true;
    for (std::size_t r = 0; r < it->second.rows(); ++r)
      for (std::size_t c = 0; c < it->second.cols(); ++c) zero = zero && it->second(r, c).is_zero();
    it = zero ? out.erase(it) : std::next(it);
  }
  return out;
}

}  // namespace

TEST_CASE("parameter degrees") {
  auto e = testing::e12();
  auto unf = build_unfolding(e, 3);
  CHECK(unf.ring->nvars() == 12);
  CHECK(unf.ring->weights()[11] == Rat(-1, 21));
  CHECK(unf.ring->weights()[0] == Rat(1));
  CHECK(unf.ring->names()[11] == "u12");
  for (int j = 0; j < 12; ++j) CHECK(unf.ring->weights()[j] == Rat(1) - e->degrees[j]);

  auto p = testing::p8();
  auto sigma = build_unfolding(p, 4, {8});
  CHECK(sigma.ring->nvars() == 1);
  CHECK(sigma.ring->weights()[0] == Rat(0));
  CHECK(sigma.active == std::vector<int>{7});

  CHECK(testing::code_of([&] { build_unfolding(p, 4, {9}); }) == ErrorCode::InvalidParameter);
  CHECK(testing::code_of([&] { build_unfolding(p, 4, {}, {{1, {Rat(1), Rat(1)}}}); }) ==
        ErrorCode::OverrideConstantTerm);
  CHECK(testing::code_of([&] { build_unfolding(p, 16); }) == ErrorCode::CapacityExceeded);
}

TEST_CASE("mirror P1 exponential deformation") {
  auto base = std::make_shared<SingularityData>(mirror_p1(Rat(3)));
  auto unf = build_unfolding(base, 4, {}, exponential_override(4));
  CHECK(unf.override_mode);
  CHECK(unf.psi[0] == var(unf, 0));
  auto u1 = var(unf, 1);
  auto u1_2 = trunc_mul(u1, u1), u1_3 = trunc_mul(u1_2, u1), u1_4 = trunc_mul(u1_3, u1);
  CHECK(unf.psi[1] == u1 + u1_2.scaled(Rat(1, 2)) + u1_3.scaled(Rat(1, 6)) + u1_4.scaled(Rat(1, 24)));
  Reducer red(*base);
  auto osc = oscillator_matrices(unf, red, {false, ExecPolicy::Serial});
  CHECK(osc.a == 0);
  for (const auto& [k, m] : osc.A) {
    CHECK(k <= 0);
    CHECK(k >= -4);
  }
}

TEST_CASE("A2 oscillator matrices at N=1") {
  auto a2 = testing::a_m(2);
  auto unf = build_unfolding(a2, 1);
  Reducer red(*a2);
  auto osc = oscillator_matrices(unf, red, {false, ExecPolicy::Serial});
  auto u1 = var(unf, 0), u2 = var(unf, 1);
  auto one = UnfoldRingElem::constant(unf.ring, Rat(1));
  UnfoldRingElem zero(unf.ring);
  REQUIRE(osc.at(-1));
  CHECK(*osc.at(-1) == RMatrix{{u1, u2}, {zero, u1}});
  REQUIRE(osc.at(0));
  CHECK(*osc.at(0) == RMatrix{{one, zero}, {zero, one}});
  for (const auto& [k, m] : osc.A) CHECK((k == 0 || k == -1));
}

TEST_CASE("a-bound") {
  auto e = testing::e12();
  CHECK(a_bound(*e, 10) == 1);
  CHECK(a_bound(*e, 6) == 1);
  CHECK(a_bound(*testing::a_m(3), 6) == 0);
  CHECK(a_bound(*testing::p8(), 9) == 1);
}

TEST_CASE("grading identity and u=0 limit on every entry") {
  auto e = testing::e12();
  Reducer red(*e);
  for (int N : {1, 2, 3}) {
    auto unf = build_unfolding(e, N);
    auto osc = oscillator_matrices(unf, red, {false, ExecPolicy::Serial});
    for (const auto& [k, m] : osc.A) {
      CHECK(k <= a_bound(*e, N));
      for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
          CHECK(m[i][j].constant_term() == Rat(k == 0 && i == j ? 1 : 0));
          for (const auto& [key, c] : m[i][j].terms())
            CHECK(Rat(k) + unf.ring->weight_rat(key) + e->degrees[j] - e->degrees[i] == Rat(0));
        }
    }
  }
}

TEST_CASE("truncating an N-run gives the smaller run") {
  auto e = testing::e12();
  Reducer red(*e);
  auto big = build_unfolding(e, 4, {10, 11, 12});
  auto small = build_unfolding(e, 2, {10, 11, 12});
  auto ob = oscillator_matrices(big, red, {false, ExecPolicy::Serial});
  auto os = oscillator_matrices(small, red, {false, ExecPolicy::Serial});
  for (const auto& [k, m] : ob.A) {
    const RMatrix* s = os.at(k);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) {
        UnfoldRingElem t = truncate_to(m[i][j], small.ring);
        if (s) {
          CHECK(t == (*s)[i][j]);
        } else {
          CHECK(t.is_zero());
        }
      }
  }
  for (const auto& [k, m] : os.A) CHECK(ob.at(k) != nullptr);
}

TEST_CASE("pruned and parallel oscillator runs agree with the reference") {
  auto e = testing::e12();
  Reducer red(*e);
  auto unf = build_unfolding(e, 3);
  auto ref = oscillator_matrices(unf, red, {false, ExecPolicy::Serial});
  auto par = oscillator_matrices(unf, red, {false, ExecPolicy::Parallel});
  CHECK(ref.A == par.A);
}

TEST_CASE("opposite basis change") {
  auto p = testing::p8();
  auto id = opposite_basis_change(*p, {});
  REQUIRE(id.C.size() == 1);
  CHECK(id.C.at(0) == QMatrix::identity(8));
  auto ch = opposite_basis_change(*p, {{{8, 1}, Rat(5, 2)}});
  REQUIRE(ch.C.count(1));
  CHECK(ch.C.at(1)(7, 0) == Rat(5, 2));
  CHECK(ch.C_inv.at(1)(7, 0) == Rat(-5, 2));
  TMatrix prod = tmul(ch.C, ch.C_inv);
  REQUIRE(prod.size() == 1);
  CHECK(prod.at(0) == QMatrix::identity(8));

  TMatrix nil = ch.C;
  nil[0] = QMatrix(8, 8);
  TMatrix power = nil;
  for (int k = 1; k < 8; ++k) power = tmul(power, nil);
  CHECK(power.empty());

  auto e = testing::e12();
  CHECK(testing::code_of([&] { opposite_basis_change(*e, {{{12, 1}, Rat(1)}}); }) ==
        ErrorCode::ForbiddenOppositeParameter);
  CHECK(testing::code_of([&] { opposite_basis_change(*p, {{{1, 8}, Rat(1)}}); }) ==
        ErrorCode::ForbiddenOppositeParameter);
}
