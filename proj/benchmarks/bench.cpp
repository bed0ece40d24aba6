#include <benchmark/benchmark.h>

#include "pfk3/correspondences.hpp"
#include "pfk3/expr.hpp"
#include "pfk3/families.hpp"
#include "pfk3/groebner.hpp"
#include "pfk3/ode_calculus.hpp"
#include "pfk3/random.hpp"

using namespace pfk3;

static void BM_WeierstrassODE(benchmark::State& st) {
  VarsPtr t = make_vars({"t"});
  RatFunc g2 = parse_ratfunc("3*t^2 - t + 2", t), g3 = parse_ratfunc("t^2 + 5", t);
  for (auto _ : st) benchmark::DoNotOptimize(picard_fuchs_ode(weierstrass_family(g2, g3, t), 2));
}
BENCHMARK(BM_WeierstrassODE)->Unit(benchmark::kMillisecond);

static void BM_InoseSystem(benchmark::State& st) {
  VarsPtr xyzw = make_vars({"x", "y", "z", "w"});
  VarsPtr bd = make_vars({"b", "d"});
  RatFunc q = parse_ratfunc("y^2*z*w - 4*x^3*z + 3*x*z*w^2 + b*z*w^3 - 1/2*(d*z^2*w^2 + w^4)",
                            make_vars({"x", "y", "z", "w", "b", "d"}));
  for (auto _ : st) {
    Hypersurface h(geometric_polynomial(q, xyzw, bd), bd);
    benchmark::DoNotOptimize(picard_fuchs_system(h, 2));
  }
}
BENCHMARK(BM_InoseSystem)->Unit(benchmark::kMillisecond);

static void BM_RestrictJPair(benchmark::State& st) {
  VarsPtr t = make_vars({"t"});
  inose_family();
  RatFunc j1 = parse_ratfunc("t", t), j2 = parse_ratfunc("(t^2 + 1)/(t - 3)", t);
  for (auto _ : st) benchmark::DoNotOptimize(restrict_j_pair(j1, j2, t));
}
BENCHMARK(BM_RestrictJPair)->Unit(benchmark::kMillisecond);

static void BM_Tensor4(benchmark::State& st) {
  VarsPtr t = make_vars({"t"});
  RatFunc p = box(parse_ratfunc("(t^3 + 2)/(t - 1)", t), "t"), q = box(parse_ratfunc("t^2 + 7", t), "t");
  for (auto _ : st) benchmark::DoNotOptimize(tensor_product_4(p, q, t));
}
BENCHMARK(BM_Tensor4)->Unit(benchmark::kMillisecond);

static void BM_Isogeny6(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(verify_isogeny(6));
}
BENCHMARK(BM_Isogeny6)->Unit(benchmark::kMillisecond);

static void BM_Buchberger(benchmark::State& st) {
  VarsPtr v = make_vars({"x", "y", "z"});
  RandomSource rs(5);
  std::vector<Poly> gens{rs.nonzero_poly(v, 3, 4, 5), rs.nonzero_poly(v, 3, 4, 5), rs.nonzero_poly(v, 2, 3, 5)};
  for (auto _ : st) benchmark::DoNotOptimize(buchberger(Ideal<Rational>(gens)));
}
BENCHMARK(BM_Buchberger)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
