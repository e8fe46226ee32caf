#include <benchmark/benchmark.h>

#include "dgeom/fgordon.hpp"
#include "dgeom/parse.hpp"

using namespace dgeom;

static void BM_FGordonAnnihilator(benchmark::State& state) {
  for (auto _ : state) {
    // A fresh model each time: the annihilator is cached per distribution.
    const FGordonModel m = fgordon_model(parse("F(x, y, u, p, q)"));
    benchmark::DoNotOptimize(annihilator(Distribution(m.chart, m.generators)));
  }
}
BENCHMARK(BM_FGordonAnnihilator)->Unit(benchmark::kMillisecond);

static void BM_FGordonInvolutivity(benchmark::State& state) {
  const FGordonModel m = fgordon_model(parse("F(x, y, u, p, q)"));
  for (auto _ : state) benchmark::DoNotOptimize(is_involutive(m.distribution));
}
BENCHMARK(BM_FGordonInvolutivity)->Unit(benchmark::kMillisecond);

static void BM_KleinGordonDeterminingSystem(benchmark::State& state) {
  const KleinGordonInstance kg = klein_gordon(sym("a"), sym("b"));
  const std::vector<std::string> all{"x", "y", "u", "p", "q", "r", "t"};
  SymmetryAnsatz z(jet_chart());
  const char* names[] = {"Xi", "Eta", "Phi", "Pi", "Kappa", "Rho", "Tau"};
  for (std::size_t i = 0; i < all.size(); ++i) z.undetermined(all[i], names[i], all);
  for (auto _ : state) benchmark::DoNotOptimize(determining_equations(kg.model.distribution, z));
}
BENCHMARK(BM_KleinGordonDeterminingSystem)->Unit(benchmark::kMillisecond);

static void BM_KleinGordonLift(benchmark::State& state) {
  const KleinGordonInstance kg = klein_gordon(sym("a"), sym("b"));
  const VectorField w = shuffle_representative(kg.model.F, -sym("x"), sym("y"), Expr(0)).field;
  for (auto _ : state) benchmark::DoNotOptimize(lift_to_symmetry(kg.model.distribution, w));
}
BENCHMARK(BM_KleinGordonLift)->Unit(benchmark::kMillisecond);

static void BM_LieSeriesFlow(benchmark::State& state) {
  const KleinGordonInstance kg = klein_gordon(sym("a"), sym("b"));
  for (auto _ : state) benchmark::DoNotOptimize(lie_series_flow(kg.x3));
}
BENCHMARK(BM_LieSeriesFlow)->Unit(benchmark::kMillisecond);

static void BM_TransportTanh(benchmark::State& state) {
  const KleinGordonInstance kg = klein_gordon(-2, 2);
  const FlowMap flow = lie_series_flow(kg.x3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const SolutionGrid grid = SolutionGrid::from_expression(parse("tanh(x + y)"), GridSpec{-1, 1, -1, 1, n, n});
  const Expr F = parse("-2*u + 2*u^3");
  for (auto _ : state) benchmark::DoNotOptimize(transport_solution(F, flow, grid, {0.1, 0.05, 0.025}));
}
BENCHMARK(BM_TransportTanh)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);
