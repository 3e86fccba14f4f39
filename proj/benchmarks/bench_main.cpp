#include <benchmark/benchmark.h>

#include <random>

#include "cuspbend/cuspbend.hpp"

using namespace cuspbend;

namespace {

RectangularCuspData exact_cusp(std::size_t n) {
  std::vector<Scalar> b, mu;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    b.push_back(Scalar::exact(static_cast<long>(k + 1), 2));
    mu.push_back(Scalar::exact(static_cast<long>(k + 3), 2));
  }
  return RectangularCuspData::from_mu(b, mu);
}

RectangularCuspData float_cusp(std::size_t n) {
  std::vector<Scalar> b, s;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    b.emplace_back(0.5 + 0.3 * static_cast<double>(k));
    s.emplace_back(0.2 + 0.4 * static_cast<double>(k));
  }
  return RectangularCuspData::from_s(b, s);
}

}  // namespace

static void BM_ConjugateAndMatchExact(benchmark::State& state) {
  const auto data = exact_cusp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(conjugate_and_match(data));
}
BENCHMARK(BM_ConjugateAndMatchExact)->DenseRange(3, 6);

static void BM_ConjugateAndMatchFloat(benchmark::State& state) {
  const auto data = float_cusp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(conjugate_and_match(data));
}
BENCHMARK(BM_ConjugateAndMatchFloat)->DenseRange(3, 6);

static void BM_HilbertDistanceBall(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ConvexDomainOracle ball = unit_ball_oracle(n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + 1));
  Eigen::VectorXd y = x;
  x(0) = 0.3;
  y(1) = -0.6;
  x(static_cast<Eigen::Index>(n)) = 1.0;
  y(static_cast<Eigen::Index>(n)) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_distance(ball, x, y));
}
BENCHMARK(BM_HilbertDistanceBall)->Arg(2)->Arg(3)->Arg(6);

static void BM_HilbertDistanceModel(benchmark::State& state) {
  const ModelDomain dom(CuspParameter({Scalar(1.0), Scalar(0.5), Scalar(0), Scalar(0)}));
  const ConvexDomainOracle omega = model_domain_oracle(dom);
  const Eigen::VectorXd x = leaf_point(dom, Scalar(0.5), std::vector<Scalar>{Scalar(1.0), Scalar(2.0), Scalar(0.3)}).to_eigen();
  const Eigen::VectorXd y = leaf_point(dom, Scalar(1.5), std::vector<Scalar>{Scalar(0.7), Scalar(1.3), Scalar(-0.4)}).to_eigen();
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_distance(omega, x, y));
}
BENCHMARK(BM_HilbertDistanceModel);

static void BM_DiagonalizableCheck(benchmark::State& state) {
  std::vector<ProjMap> gens;
  for (double d : {2.0, 3.0, 0.5}) {
    std::vector<Scalar> diag{Scalar(1.0), Scalar(d), Scalar(1.0 / d), Scalar(1.5)};
    gens.emplace_back(Matrix::diagonal(diag));
  }
  for (auto _ : state) benchmark::DoNotOptimize(diagonalizable_check(gens));
}
BENCHMARK(BM_DiagonalizableCheck);

static void BM_UpperTriangularCheck(benchmark::State& state) {
  const auto gens = bent_cusp_generators(float_cusp(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(upper_triangular_check(gens));
}
BENCHMARK(BM_UpperTriangularCheck)->DenseRange(3, 6);

BENCHMARK_MAIN();
