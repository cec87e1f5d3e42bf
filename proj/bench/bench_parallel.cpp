// Serial reference versus OpenMP kernels: batch tape evaluation and the
// shared-point zero test over many residuals.

#include <benchmark/benchmark.h>

#include <random>

#include "jetgeo/identities.hpp"
#include "jetgeo/parse.hpp"
#include "jetgeo/tape.hpp"
#include "jetgeo/zero_test.hpp"

using namespace jetgeo;

namespace {

std::vector<Expr> curvature_roots() {
  JetSpace sp = JetSpace::standard(2);
  TimeMetric h = make_time_metric(sp, parse("exp(2*t) + t^2", sp.allowed_names()));
  SpatialMetric phi = make_spatial_metric(
      sp, {{Expr(1), Expr(0)}, {Expr(0), fn::sin(sp.x(0)).pow(2) + sp.x(1).pow(2)}});
  GammaConnection c = berwald_connection(sp, h, phi);
  CurvatureSet cs = curvature_components(c);
  std::vector<Expr> roots;
  for (const auto& f : families(cs))
    for (const auto& e : f.tensor->components())
      if (!e.is_zero()) roots.push_back(e);
  return roots;
}

const std::vector<Expr>& roots() {
  static const std::vector<Expr> r = curvature_roots();
  return r;
}

void BM_EvaluateBatch(benchmark::State& state, Exec exec) {
  Tape tape(roots());
  const std::size_t npoints = static_cast<std::size_t>(state.range(0));
  const std::size_t nv = tape.variables().size();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.3, 1.2);
  std::vector<double> pts(npoints * nv);
  for (auto& p : pts) p = u(rng);
  for (auto _ : state) {
    BatchResult r = evaluate_batch(tape, pts, npoints, exec);
    benchmark::DoNotOptimize(r.values.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * npoints));
}

void BM_ZeroTestMany(benchmark::State& state, Exec exec) {
  ZeroOptions o;
  o.trials = static_cast<int>(state.range(0));
  o.exec = exec;
  for (auto _ : state) {
    auto v = zero_test_many(roots(), o);
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_EvaluateBatch, serial, Exec::Serial)->Arg(1024)->Arg(16384);
BENCHMARK_CAPTURE(BM_EvaluateBatch, parallel, Exec::Parallel)->Arg(1024)->Arg(16384);
BENCHMARK_CAPTURE(BM_ZeroTestMany, serial, Exec::Serial)->Arg(32)->Arg(512);
BENCHMARK_CAPTURE(BM_ZeroTestMany, parallel, Exec::Parallel)->Arg(32)->Arg(512);

BENCHMARK_MAIN();
