#include "common.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "primform/primitive.hpp"

using namespace primform;

namespace {

const char* kE12Order6 =
    "1 + 4/147*u11*u12^2 - 64/7203*u11^2*u12^4 - 76/21609*u10*u12^5"
    " + (1/49*u12^3 - 101/12005*u11*u12^5)*y - 53/21609*u12^6*y^2";

const char* kE12Order10 =
    "1 + 4/147*u11*u12^2 - 64/7203*u11^2*u12^4 - 76/21609*u10*u12^5 + 937/453789*u9*u12^6"
    " + 218072/47647845*u11^3*u12^6 + 1272169/333534915*u10*u11*u12^7 + 28751/66706983*u8*u12^8"
    " - 1212158/466948881*u9*u11*u12^8 - 38380/155649627*u7*u12^9"
    " + (1/49*u12^3 - 101/12005*u11*u12^5 + 1588303/333534915*u11^2*u12^7 + 378083/333534915*u10*u12^8"
    " - 12016/17294403*u9*u12^9)*y"
    " + (1447/3176523*u12^7 - 71290/155649627*u11*u12^9)*x - 45434/466948881*u12^10*x*y"
    " - (53/21609*u12^6 - 46244/22235661*u11*u12^8)*y^2 + 22054/66706983*u12^9*y^3";

bool is_one(const PrimitiveFormExpansion& z) {
  auto r = z.records();
  return r.size() == 1 && r[0].t_power == 0 && r[0].basis_index == 1 && r[0].u_monomial == "1" &&
         r[0].coefficient == Rat(1);
}

Rat coefficient(const PrimitiveFormExpansion& z, int t, int basis, const std::string& mono) {
  for (const auto& r : z.records())
    if (r.t_power == t && r.basis_index == basis && r.u_monomial == mono) return r.coefficient;
  return Rat(0);
}

}  // namespace

TEST_CASE("Psi from trivial and rank-one inputs") {
  auto a2 = testing::a_m(2);
  auto unf = build_unfolding(a2, 1);
  auto one = UnfoldRingElem::constant(unf.ring, Rat(1));
  UnfoldRingElem zero(unf.ring);

  OscillatorMatrices id{unf.ring, 2, 0, {{0, {{one, zero}, {zero, one}}}}};
  PsiMatrix psi0 = assemble_psi(id, 1);
  for (const auto& row : psi0.entries)
    for (const auto& x : row) CHECK(x.is_zero());
  RRow g0 = neumann_solve(psi0);
  CHECK(g0 == RRow{one, zero});

  auto u1 = UnfoldRingElem::variable(unf.ring, 0);
  PsiMatrix rank1{unf.ring, 2, 0, 1, {{zero, u1}, {zero, zero}}};
  RRow g1 = neumann_solve(rank1);
  CHECK(g1 == RRow{one, -u1});
  for (const auto& x : solve_residual(g1, rank1)) CHECK(x.is_zero());

  OscillatorMatrices shifted{unf.ring, 2, 0, {{0, {{one + one, zero}, {zero, one}}}}};
  CHECK(testing::code_of([&] { assemble_psi(shifted, 1); }) == ErrorCode::GradingViolation);

  Reducer red(*a2);
  auto osc = oscillator_matrices(unf, red, {false, ExecPolicy::Serial});
  PsiMatrix psi = assemble_psi(osc, 1);
  CHECK(psi.size() == 2);
  for (const auto& row : psi.entries)
    for (const auto& x : row) CHECK(x.is_zero());
}

TEST_CASE("E12 Psi size at N=10") {
  auto e = testing::e12();
  Reducer red(*e);
  auto unf = build_unfolding(e, 10);
  auto osc = oscillator_matrices(unf, red);
  CHECK(osc.a == 1);
  for (const auto& [k, m] : osc.A) CHECK(k <= 1);
  CHECK(assemble_psi(osc, 10).size() == 24);
}

TEST_CASE("ADE primitive forms are trivial") {
  for (int k = 1; k <= 5; ++k) {
    auto a = testing::a_m(k);
    Reducer red(*a);
    for (int N = 0; N <= 6; ++N) CHECK(is_one(primitive_form(build_unfolding(a, N), red)));
  }
  for (const auto& s : oracle::fixed_pool()) {
    if (s.name[0] != 'A' && s.name[0] != 'D' && s.name != "E6" && s.name != "E7" && s.name != "E8") continue;
    auto d = oracle::analyze(s);
    Reducer red(*d);
    CHECK_MESSAGE(is_one(primitive_form(build_unfolding(d, 5), red)), s.name);
  }
}

TEST_CASE("E12 expansion at N=6") {
  auto e = testing::e12();
  Reducer red(*e);
  auto unf = build_unfolding(e, 6);
  auto z = primitive_form(unf, red);
  CHECK(z.a == 1);
  CHECK(coefficient(z, 0, 1, "u11*u12^2") == Rat(4, 147));
  CHECK(coefficient(z, 0, 1, "u11^2*u12^4") == Rat(-64, 7203));
  CHECK(coefficient(z, 0, 1, "u10*u12^5") == Rat(-76, 21609));
  CHECK(coefficient(z, 0, 2, "u12^3") == Rat(1, 49));
  CHECK(coefficient(z, 0, 2, "u11*u12^5") == Rat(-101, 12005));
  CHECK(coefficient(z, 0, 3, "u12^6") == Rat(-53, 21609));

  auto rep = parse_representative(kE12Order6, unf);
  auto zrep = as_representative(z, *e, opposite_basis_change(*e, {}));
  CHECK(verify_primitive(rep, unf, red).pass);
  CHECK(verify_primitive(zrep, unf, red).pass);
  CHECK(verify_class_equal(rep, zrep, unf, red));
  CHECK(verify_class_equal(rep, rep, unf, red));

  auto off = parse_representative(
      "1 + 5/147*u11*u12^2 - 64/7203*u11^2*u12^4 - 76/21609*u10*u12^5"
      " + (1/49*u12^3 - 101/12005*u11*u12^5)*y - 53/21609*u12^6*y^2",
      unf);
  CHECK_FALSE(verify_primitive(off, unf, red).pass);
  CHECK_FALSE(verify_class_equal(rep, off, unf, red));
}

TEST_CASE("E12 expansion at N=10") {
  auto e = testing::e12();
  Reducer red(*e);
  auto unf = build_unfolding(e, 10);
  auto rep = parse_representative(kE12Order10, unf);
  CHECK(verify_primitive(rep, unf, red).pass);
  auto z = primitive_form(unf, red);
  CHECK(verify_class_equal(rep, as_representative(z, *e, opposite_basis_change(*e, {})), unf, red));
  CHECK(coefficient(z, 0, 1, "u9*u12^6") == Rat(937, 453789));
  CHECK(coefficient(z, 0, 2, "u9*u12^9") == Rat(-12016, 17294403));
  std::string printed = kE12Order10;
  printed.replace(printed.find("12016/17294403"), 14, "108144/17294403");
  CHECK_FALSE(verify_primitive(parse_representative(printed, unf), unf, red).pass);
}

TEST_CASE("verify_primitive of 1 on E12") {
  auto e = testing::e12();
  Reducer red(*e);
  auto u3 = build_unfolding(e, 3);
  auto v3 = verify_primitive(parse_representative("1", u3), u3, red);
  CHECK_FALSE(v3.pass);
  UKey k = u3.ring->key({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2});
  REQUIRE(v3.defect.slices.count(0));
  CHECK(v3.defect.slices.at(0)[0].coefficient(k) == Rat(-4, 147));
  auto u2 = build_unfolding(e, 2);
  CHECK(verify_primitive(parse_representative("1", u2), u2, red).pass);
  auto u4 = build_unfolding(e, 4);
  CHECK_FALSE(verify_class_equal(parse_representative("1", u4), parse_representative("1 + u12", u4), u4, red));
}

TEST_CASE("simple elliptic sigma direction against the closed products") {
  auto p = testing::p8();
  Reducer red(*p);
  auto unf = build_unfolding(p, 9, {8});
  const std::size_t n = 10;
  auto inv_g = oracle::inverse(oracle::elliptic_g(n), n);
  auto z = primitive_form(unf, red);
  for (std::size_t k = 0; k < n; ++k) {
    UKey key;
    key.set(0, static_cast<int>(k));
    CHECK(z.g[0][0].coefficient(key) == inv_g[k]);
  }
  CHECK(inv_g[6] == Rat(-11, 180));
  auto rep = as_representative(z, *p, opposite_basis_change(*p, {}));
  CHECK(verify_primitive(rep, unf, red).pass);
  CHECK_FALSE(verify_primitive(parse_representative("1", unf), unf, red).pass);
}

TEST_CASE("pruning, execution policy and truncation do not change results") {
  for (const auto& s : oracle::fixed_pool()) {
    auto d = oracle::analyze(s);
    if (d->mu > 12) continue;
    Reducer red(*d);
    auto unf = build_unfolding(d, 4);
    PrimitiveOptions ref{false, ExecPolicy::Serial};
    auto z0 = primitive_form(unf, red, {}, ref);
    auto z1 = primitive_form(unf, red, {}, {true, ExecPolicy::Parallel});
    auto z2 = primitive_form(unf, red, {}, {true, ExecPolicy::Serial});
    CHECK_MESSAGE(z0.records().size() == z1.records().size(), s.name);
    for (std::size_t i = 0; i < std::min(z0.g.size(), z1.g.size()); ++i) CHECK(z0.g[i] == z1.g[i]);
    CHECK(z1.g == z2.g);
    auto rep = as_representative(z1, *d, opposite_basis_change(*d, {}));
    CHECK_MESSAGE(verify_primitive(rep, unf, red).pass, s.name);
    CHECK(verify_primitive(rep, unf, red, {}, ref).pass);
    for (int M = 0; M < 4; ++M) {
      auto small = build_unfolding(d, M);
      auto zm = primitive_form(small, red);
      for (std::size_t i = 0; i < z1.g.size(); ++i)
        for (int j = 0; j < d->mu; ++j) {
          UnfoldRingElem t = truncate_to(z1.g[i][j], small.ring);
          UnfoldRingElem m = i < zm.g.size() ? zm.g[i][j] : UnfoldRingElem(small.ring);
          CHECK(t == m);
        }
    }
  }
}

TEST_CASE("opposite parameters on the simple elliptic sigma direction") {
  auto p = testing::p8();
  Reducer red(*p);
  auto unf = build_unfolding(p, 9, {8});
  const std::size_t n = 10;
  auto g = oracle::elliptic_g(n), h = oracle::elliptic_h(n);
  for (Rat c : {Rat(1), Rat(-2, 3)}) {
    oracle::Series gh(n);
    for (std::size_t k = 0; k < n; ++k) gh[k] = g[k] - c * h[k];
    auto expect = oracle::inverse(gh, n);
    OppositeParameters cp{{{8, 1}, c}};
    auto z = primitive_form(unf, red, cp);
    for (std::size_t k = 0; k < n; ++k) {
      UKey key;
      key.set(0, static_cast<int>(k));
      CHECK(z.g[0][0].coefficient(key) == expect[k]);
    }
    CHECK(verify_primitive(as_representative(z, *p, opposite_basis_change(*p, cp)), unf, red, cp).pass);
  }
}

TEST_CASE("mirror P1 primitivity of 1") {
  for (Rat q : {Rat(1), Rat(2), Rat(-3)}) {
    auto base = std::make_shared<SingularityData>(mirror_p1(q));
    Reducer red(*base);
    auto ex = build_unfolding(base, 8, {}, exponential_override(8));
    CHECK(verify_primitive(parse_representative("1", ex), ex, red).pass);
    CHECK(is_one(primitive_form(ex, red)));
    auto lin = build_unfolding(base, 6);
    CHECK(verify_primitive(parse_representative("1", lin), lin, red).pass);
  }
}
