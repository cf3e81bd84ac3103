// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <memory>

#include "primform/kernels.hpp"
#include "primform/parse.hpp"
#include "primform/primitive.hpp"

using namespace primform;

namespace {

std::shared_ptr<const SingularityData> e12() {
  static auto d = std::make_shared<const SingularityData>(analyze_singularity(
      parse_polynomial("x^3 + y^7", VariableSet::make({"x", "y"})), WeightSystem({Rat(1, 3), Rat(1, 7)})));
  return d;
}

std::shared_ptr<const SingularityData> p8() {
  static auto d = std::make_shared<const SingularityData>(
      analyze_singularity(parse_polynomial("1/3*z1^3 + 1/3*z2^3 + 1/3*z3^3", VariableSet::make({"z1", "z2", "z3"})),
                          WeightSystem({Rat(1, 3), Rat(1, 3), Rat(1, 3)})));
  return d;
}

ExecPolicy policy(const benchmark::State& st) { return st.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial; }

void BM_MonomialImages(benchmark::State& st) {
  auto base = e12();
  Reducer red(*base);
  auto ring = std::make_shared<UnfoldRing>(std::vector<std::string>{"a", "b", "c"}, 6,
                                           std::vector<Rat>{Rat(1), Rat(1, 2), Rat(1, 3)});
  std::vector<Exponents> mons;
  std::vector<UnfoldRingElem> coeffs;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 20; ++b) {
      mons.push_back({a, b});
      UnfoldRingElem c(ring);
      for (std::size_t v = 0; v < 3; ++v) c += UnfoldRingElem::variable(ring, v).scaled(Rat(a + 1, b + 1 + static_cast<int>(v)));
      coeffs.push_back(trunc_mul(c, c));
    }
  std::vector<ImageItem> items;
  for (std::size_t i = 0; i < mons.size(); ++i) items.push_back({static_cast<int>(i % 4), &mons[i], &coeffs[i]});
  monomial_images_serial(red, items, ring);
  for (auto _ : st) {
    RLattice out = policy(st) == ExecPolicy::Parallel ? monomial_images_parallel(red, items, ring)
                                                      : monomial_images_serial(red, items, ring);
    benchmark::DoNotOptimize(out);
  }
}

void BM_RowTimesMatrix(benchmark::State& st) {
  auto base = e12();
  Reducer red(*base);
  auto unf = build_unfolding(base, 6);
  auto osc = oscillator_matrices(unf, red, {false, ExecPolicy::Parallel});
  PsiMatrix psi = assemble_psi(osc, 6);
  RRow v = psi.entries[0];
  for (auto _ : st) {
    RRow out = policy(st) == ExecPolicy::Parallel ? row_times_matrix_parallel(v, psi.entries, psi.ring, nullptr)
                                                  : row_times_matrix_serial(v, psi.entries, psi.ring, nullptr);
    benchmark::DoNotOptimize(out);
  }
}

void BM_PrimitiveFormE12(benchmark::State& st) {
  auto base = e12();
  Reducer red(*base);
  auto unf = build_unfolding(base, static_cast<int>(st.range(1)));
  for (auto _ : st) {
    auto z = primitive_form(unf, red, {}, {true, policy(st)});
    benchmark::DoNotOptimize(z);
  }
}

void BM_PrimitiveFormEllipticUnpruned(benchmark::State& st) {
  auto base = p8();
  Reducer red(*base);
  auto unf = build_unfolding(base, 3);
  for (auto _ : st) {
    auto z = primitive_form(unf, red, {}, {false, policy(st)});
    benchmark::DoNotOptimize(z);
  }
}

}  // namespace

BENCHMARK(BM_MonomialImages)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RowTimesMatrix)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimitiveFormE12)->ArgNames({"parallel", "N"})->Args({0, 10})->Args({1, 10})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimitiveFormEllipticUnpruned)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
