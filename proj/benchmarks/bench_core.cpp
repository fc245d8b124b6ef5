#include <benchmark/benchmark.h>

#include "balltiling/octahedron.hpp"
#include "balltiling/verifier.hpp"

using namespace balltiling;

namespace {

SparseVec tail_point(RationalSampler& rs, int support) {
  SparseVec p;
  for (int j = 0; j < support; ++j) p.set_tail(TailIndex(rs.integer(1, 40)), rs.small_rational(12, 5));
  return p;
}

void BM_Distance(benchmark::State& state) {
  const SpaceSpec s({Block{"y", 3, NormKind::L1}}, true);
  RationalSampler rs(1);
  SparseVec a = tail_point(rs, static_cast<int>(state.range(0))), b = tail_point(rs, static_cast<int>(state.range(0)));
  a.set_block("y", 0, Scalar(1, 3));
  b.set_block("y", 2, Scalar(-5, 7));
  for (auto _ : state) benchmark::DoNotOptimize(distance(a, b, s));
}
BENCHMARK(BM_Distance)->Arg(2)->Arg(8)->Arg(32);

void BM_SphereDecomposition(benchmark::State& state) {
  RationalSampler rs(2);
  const SparseVec p = tail_point(rs, 8);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_decomposition_center(p));
}
BENCHMARK(BM_SphereDecomposition);

void BM_LiftedLocate(benchmark::State& state) {
  LiftedTiling lt(std::make_shared<IntervalTiling>("x", 0, 1));
  RationalSampler rs(3);
  SparseVec p = tail_point(rs, 6);
  p.set_block("x", 0, Scalar(37, 5));
  for (auto _ : state) benchmark::DoNotOptimize(lt.locate(p));
}
BENCHMARK(BM_LiftedLocate);

void BM_WhitneyLocate(benchmark::State& state) {
  const SpaceSpec z = SpaceSpec::single("z", 2, NormKind::L1);
  SparseVec e0, e1, q;
  e0.set_block("z", 0, 1);
  e1.set_block("z", 1, 1);
  CoverFamily fam(z, SubspaceFrame({e0, e1}), std::make_shared<BallListObstacle>(z, std::vector<Ball>{Ball(SparseVec{}, 1)}));
  // Distance 2^-range to the obstacle along the first axis.
  q.set_block("z", 0, 1 + dyadic(static_cast<unsigned>(state.range(0))));
  q.set_block("z", 1, Scalar(0));
  for (auto _ : state) benchmark::DoNotOptimize(fam.locate(q));
}
BENCHMARK(BM_WhitneyLocate)->Arg(2)->Arg(8)->Arg(16);

void BM_StageLocate(benchmark::State& state) {
  SparseVec one;
  one.set_block("y", 0, 1);
  StageTiling t(SpaceSpec::single("y", 1, NormKind::LInf), {one});
  t.build_stage(3);
  RationalSampler rs(4);
  std::vector<SparseVec> pts;
  for (int i = 0; i < 64; ++i) {
    SparseVec p;
    p.set_block("y", 0, rs.dyadic_in(-3, 3, 12));
    for (long k = 1; k <= 3; ++k) p.set_tail(TailIndex(k), rs.dyadic_in(-3, 3, 12));
    pts.push_back(p);
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(t.locate_point(pts[i++ % pts.size()], true));
}
BENCHMARK(BM_StageLocate)->Unit(benchmark::kMillisecond);

void BM_PairwiseCheck(benchmark::State& state) {
  const SpaceSpec s = SpaceSpec::single("z", 2, NormKind::LInf);
  std::vector<Member> ms;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SparseVec c;
      c.set_block("z", 0, 2 * i);
      c.set_block("z", 1, 2 * j);
      ms.push_back(Member{Ball(c, 1), "#" + std::to_string(i * n + j)});
    }
  for (auto _ : state) benchmark::DoNotOptimize(check_pairwise(s, ms));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_PairwiseCheck)->Arg(8)->Arg(16)->Arg(32)->Complexity();

void BM_SolidAngle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tangent_cone_angle({Scalar(1, 2), Scalar(1, 4), Scalar(1, 4)}));
}
BENCHMARK(BM_SolidAngle);

}  // namespace

BENCHMARK_MAIN();
