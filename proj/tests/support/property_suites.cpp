#include "property_suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "primform/errors.hpp"
#include "primform/primitive.hpp"
#include "primform/residue_series.hpp"

namespace props {

using namespace primform;

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

void fail(SuiteResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

std::shared_ptr<SingularityData> draw(std::mt19937& rng, std::string* name = nullptr, bool small = false) {
  static const auto pool = oracle::fixed_pool();
  for (;;) {
    oracle::Sample s;
    if (std::uniform_int_distribution<int>(0, 4)(rng) < 2) {
      s = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    } else {
      s = oracle::random_sample(rng);
    }
    try {
      auto data = oracle::analyze(s);
      if (small && data->mu > 16) continue;
      if (name) *name = s.name + " f=" + s.f;
      return data;
    } catch (const Error&) {
      // non-isolated draw
    }
  }
}

UnfoldingData random_unfolding(std::mt19937& rng, std::shared_ptr<const SingularityData> base, int maxN, int maxmask) {
  int N = std::uniform_int_distribution<int>(1, maxN)(rng);
  std::vector<int> all(base->mu);
  for (int j = 0; j < base->mu; ++j) all[j] = j + 1;
  std::shuffle(all.begin(), all.end(), rng);
  int k = std::uniform_int_distribution<int>(1, std::min(base->mu, maxmask))(rng);
  std::vector<int> mask(all.begin(), all.begin() + k);
  return build_unfolding(base, N, mask);
}

int a_oracle(const SingularityData& b, int N) {
  if (b.mode == SingularityMode::LaurentP1) return 0;
  Rat x = Rat(N) * (b.s - Rat(1)) + b.s;
  return static_cast<int>(std::max(x.floor(), b.s.floor()));
}

RMatrix mat_mul(const RMatrix& A, const RMatrix& B, const RingPtr& ring) {
  const std::size_t n = A.size(), m = B.front().size();
  RMatrix C(n, RRow(m, UnfoldRingElem(ring)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < B.size(); ++k) {
      if (A[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!B[k][j].is_zero()) C[i][j] += trunc_mul(A[i][k], B[k][j]);
    }
  return C;
}

std::string describe(const std::string& name, const UnfoldingData& unf) {
  std::ostringstream os;
  os << name << " N=" << unf.N << " mask=";
  for (int j : unf.active) os << j + 1 << ",";
  return os.str();
}

}  // namespace

SuiteResult reduction_span(std::uint32_t seed, int cases) {
  SuiteResult r{"reduction brute-force span"};
  Timer timer;
  std::mt19937 rng(seed);
  int attempts = 0;
  while (r.cases < cases && attempts++ < 50 * cases) {
    std::string name;
    auto data = draw(rng, &name);
    Reducer red(*data);
    const auto& w = data->weights->weights();
    Exponents beta(w.size());
    for (auto& b : beta) b = std::uniform_int_distribution<int>(0, 4)(rng);
    MPoly h = MPoly::monomial(data->f.vars(), beta);
    LatticeVector v = reduce_central(red, h);
    std::map<int, MPoly> element{{0, h}};
    for (const auto& [k, coeffs] : v.slices)
      for (int j = 0; j < data->mu; ++j)
        if (!coeffs[j].is_zero()) {
          auto it = element.emplace(k, MPoly(data->f.vars())).first;
          it->second -= data->basis[j].scaled(coeffs[j]);
        }
    auto in_span = oracle::in_relation_span(data->f, w, element, 50);
    if (!in_span) continue;
    ++r.cases;
    if (!*in_span) fail(r, name + " h=" + h.str());
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult homogeneity(std::uint32_t seed, int cases) {
  SuiteResult r{"homogeneity of zeta_+"};
  Timer timer;
  std::mt19937 rng(seed);
  for (int c = 0; c < cases; ++c) {
    std::string name;
    auto data = draw(rng, &name);
    UnfoldingData unf = random_unfolding(rng, data, 4, 4);
    Reducer red(*data);
    PrimitiveOptions opts;
    opts.prune = std::uniform_int_distribution<int>(0, 2)(rng) != 0;
    ++r.cases;
    try {
      PrimitiveFormExpansion z = primitive_form(unf, red, {}, opts);
      for (std::size_t i = 0; i < z.g.size(); ++i)
        for (int j = 0; j < data->mu; ++j)
          for (const auto& [key, coef] : z.g[i][j].terms()) {
            Rat total = Rat(static_cast<long>(i)) + data->degrees[j];
            for (std::size_t l = 0; l < unf.active.size(); ++l)
              total += Rat(key.exponent(static_cast<int>(l))) * (Rat(1) - data->degrees[unf.active[l]]);
            if (!total.is_zero()) fail(r, describe(name, unf) + " term of degree " + total.str());
          }
    } catch (const Error& e) {
      fail(r, describe(name, unf) + " threw " + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult psi_nilpotency(std::uint32_t seed, int cases) {
  SuiteResult r{"Psi nilpotency and solve identity"};
  Timer timer;
  std::mt19937 rng(seed);
  for (int c = 0; c < cases; ++c) {
    std::string name;
    auto data = draw(rng, &name, true);
    UnfoldingData unf = random_unfolding(rng, data, 3, 3);
    Reducer red(*data);
    ++r.cases;
    try {
      OscillatorMatrices osc = oscillator_matrices(unf, red, EngineOptions{false, ExecPolicy::Serial});
      PsiMatrix psi = assemble_psi(osc, unf.N);
      RMatrix P = psi.entries;
      for (int k = 1; k <= unf.N; ++k) P = mat_mul(P, psi.entries, unf.ring);
      for (const auto& row : P)
        for (const auto& x : row)
          if (!x.is_zero()) fail(r, describe(name, unf) + " Psi^(N+1) != 0");
      RRow g = neumann_solve(psi, nullptr, ExecPolicy::Serial);
      RMatrix G{g};
      RMatrix gpsi = mat_mul(G, psi.entries, unf.ring);
      for (std::size_t j = 0; j < g.size(); ++j) {
        UnfoldRingElem lhs = g[j] + gpsi[0][j];
        UnfoldRingElem rhs = UnfoldRingElem::constant(unf.ring, Rat(j == 0 ? 1 : 0));
        if (lhs != rhs) fail(r, describe(name, unf) + " g(Id+Psi) != e at column " + std::to_string(j));
      }
    } catch (const Error& e) {
      fail(r, describe(name, unf) + " threw " + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult oscillator_limits(std::uint32_t seed, int cases) {
  SuiteResult r{"oscillator A(0) and a-bound"};
  Timer timer;
  std::mt19937 rng(seed);
  const std::vector<Rat> qs{Rat(1), Rat(2), Rat(-3), Rat(1, 2), Rat(5, 3)};
  for (int c = 0; c < cases; ++c) {
    std::string name;
    std::shared_ptr<SingularityData> data;
    UnfoldingData unf;
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
      Rat q = qs[std::uniform_int_distribution<std::size_t>(0, qs.size() - 1)(rng)];
      data = std::make_shared<SingularityData>(mirror_p1(q));
      name = "P1 q=" + q.str();
      int N = std::uniform_int_distribution<int>(1, 6)(rng);
      bool expo = std::uniform_int_distribution<int>(0, 1)(rng);
      unf = build_unfolding(data, N, {}, expo ? exponential_override(N) : CoefficientOverrides{});
    } else {
      data = draw(rng, &name, true);
      unf = random_unfolding(rng, data, 4, 4);
    }
    Reducer red(*data);
    ++r.cases;
    try {
      OscillatorEngine engine(unf, red, std::nullopt, ExecPolicy::Serial);
      const int a = a_oracle(*data, unf.N);
      for (int i = 0; i < data->mu; ++i) {
        std::map<int, ZRPoly> rep{{0, zr_from_mpoly(data->basis[i], unf.ring)}};
        RLattice img = engine.image(rep);
        for (const auto& [k, row] : img.slices) {
          bool zero = true;
          for (int j = 0; j < data->mu; ++j) {
            if (!row[j].is_zero()) zero = false;
            Rat expect = (k == 0 && i == j) ? Rat(1) : Rat(0);
            if (row[j].constant_term() != expect)
              fail(r, describe(name, unf) + " A^(" + std::to_string(k) + ")(0) entry " + std::to_string(i + 1) + "," +
                          std::to_string(j + 1));
          }
          if (!zero && k > a) fail(r, describe(name, unf) + " nonzero A^(" + std::to_string(k) + ") above a");
        }
        if (!img.slices.count(0) || img.slices.at(0)[i].constant_term() != Rat(1))
          fail(r, describe(name, unf) + " missing identity at k=0");
      }
    } catch (const Error& e) {
      fail(r, describe(name, unf) + " threw " + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult pairing_symmetry(std::uint32_t seed, int cases) {
  SuiteResult r{"pairing sesquisymmetry and degree law"};
  Timer timer;
  std::mt19937 rng(seed);
  VarsPtr zv = VariableSet::make({"z"}, {true});
  auto mono = [&](int e) { return MPoly::monomial(zv, {e}); };
  auto flip = [](const TLaurentValue& v) {
    TLaurentValue out;
    for (const auto& [k, c] : v) out[k] = k % 2 ? -c : c;
    return out;
  };
  for (int c = 0; c < cases; ++c) {
    ++r.cases;
    const int T = 6;
    if (c % 2 == 0) {
      int m = std::uniform_int_distribution<int>(1, 6)(rng);
      int i = std::uniform_int_distribution<int>(0, 12)(rng), j = std::uniform_int_distribution<int>(0, 12)(rng);
      auto ctx = UnivariateContext::am(m);
      auto ab = pairing_univariate(mono(i), mono(j), ctx, T);
      auto ba = pairing_univariate(mono(j), mono(i), ctx, T);
      std::string tag = "A" + std::to_string(m) + " z^" + std::to_string(i) + ",z^" + std::to_string(j);
      if (ab != flip(ba)) fail(r, tag + " not sesquisymmetric");
      Rat e = Rat(i + j - m + 1, m + 1);
      for (const auto& [k, v] : ab)
        if (!(e.is_integer() && e.sign() >= 0 && Rat(k) == e)) fail(r, tag + " term t^" + std::to_string(k));
    } else {
      static const std::vector<Rat> qs{Rat(1), Rat(2), Rat(-3), Rat(1, 2), Rat(-5, 7)};
      Rat q = qs[std::uniform_int_distribution<std::size_t>(0, qs.size() - 1)(rng)];
      int i = std::uniform_int_distribution<int>(-4, 4)(rng), j = std::uniform_int_distribution<int>(-4, 4)(rng);
      auto ctx = UnivariateContext::mirror_p1(q);
      auto ab = pairing_univariate(mono(i), mono(j), ctx, T);
      auto ba = pairing_univariate(mono(j), mono(i), ctx, T);
      if (ab != flip(ba))
        fail(r, "P1 q=" + q.str() + " z^" + std::to_string(i) + ",z^" + std::to_string(j) + " not sesquisymmetric");
    }
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult antidiagonal_residue(std::uint32_t seed, int cases) {
  SuiteResult r{"anti-diagonal residue matrix"};
  Timer timer;
  std::mt19937 rng(seed);
  int attempts = 0;
  while (r.cases < cases && attempts++ < 30 * cases) {
    oracle::Sample s = oracle::random_sample(rng);
    std::shared_ptr<SingularityData> data;
    try {
      data = oracle::analyze(s);
    } catch (const Error&) {
      continue;
    }
    if (!data->orthogonal) continue;
    ++r.cases;
    QMatrix M = residue_pairing_matrix(*data);
    const int mu = data->mu;
    for (int i = 0; i < mu; ++i)
      for (int j = 0; j < mu; ++j) {
        bool anti = i + j == mu - 1;
        if (anti == M(i, j).is_zero()) fail(r, "f=" + s.f + " entry " + std::to_string(i + 1) + "," + std::to_string(j + 1));
      }
    if (M.rank() != static_cast<std::size_t>(mu)) fail(r, "f=" + s.f + " degenerate");
  }
  r.seconds = timer.seconds();
  return r;
}

std::vector<SuiteResult> run_all(std::uint32_t seed, int cases) {
  return {reduction_span(seed, cases),    homogeneity(seed + 1, cases),      psi_nilpotency(seed + 2, cases),
          oscillator_limits(seed + 3, cases), pairing_symmetry(seed + 4, cases), antidiagonal_residue(seed + 5, cases)};
}

}  // namespace props
