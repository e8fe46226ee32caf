#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dgeom/linalg.hpp"
#include "dgeom/parse.hpp"

using namespace dgeom;

namespace {

// Product of random sparse polynomials in x, y, z, expanded by normalize.
Expr random_polynomial(std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, 3);
  std::vector<Expr> out;
  for (int t = 0; t < terms; ++t) {
    out.push_back(Expr(coef(rng)) * pow(sym("x"), deg(rng)) * pow(sym("y"), deg(rng)) * pow(sym("z"), deg(rng)));
  }
  return Expr::sum(std::move(out));
}

}  // namespace

static void BM_NormalizeProduct(benchmark::State& state) {
  std::mt19937 rng(1);
  const Expr e = random_polynomial(rng, static_cast<int>(state.range(0))) *
                 random_polynomial(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(e));
}
BENCHMARK(BM_NormalizeProduct)->Arg(4)->Arg(8)->Arg(16);

// Cancelling a common factor exercises the multivariate gcd.
static void BM_CancelCommonFactor(benchmark::State& state) {
  std::mt19937 rng(2);
  const Expr g = random_polynomial(rng, 4);
  const Expr e = (g * random_polynomial(rng, 4)) / (g * random_polynomial(rng, 4));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(e));
}
BENCHMARK(BM_CancelCommonFactor);

static void BM_Differentiate(benchmark::State& state) {
  const Expr e = parse("F(x, y, u, p, q) * tanh(x*y + u)^3 / (1 + p^2)");
  for (auto _ : state) benchmark::DoNotOptimize(diff(e, "u"));
}
BENCHMARK(BM_Differentiate);

static void BM_RrefSymbolic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(3);
  ExprMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, random_polynomial(rng, 2));
  }
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_RrefSymbolic)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
