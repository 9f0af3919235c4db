#include <benchmark/benchmark.h>

#include "bmfcf/svd.hpp"
#include "common.hpp"

namespace {

void BM_SvdRatings(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXd a = bmfcf::to_dense(synthetic_ratings(n, 2 * n, 0.06));
  for (auto _ : state) benchmark::DoNotOptimize(bmfcf::svd(a));
}
BENCHMARK(BM_SvdRatings)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace
