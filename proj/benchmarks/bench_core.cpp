#include "assignlab/compatibility.hpp"
#include "assignlab/dynamics.hpp"

#include <benchmark/benchmark.h>

using namespace assignlab;

static void BM_EigvalsHermitian(benchmark::State& state) {
  Rng rng(1);
  const HermitianOperator h = random_hermitian(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eigvals_hermitian(h));
}
BENCHMARK(BM_EigvalsHermitian)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_LinearApply(benchmark::State& state) {
  Rng rng(2);
  const LinearAssignment xi = make_xi_assignment(canonical_basis(static_cast<int>(state.range(0))));
  const DensityOperator eta = random_density(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(xi.apply(eta));
}
BENCHMARK(BM_LinearApply)->Arg(2)->Arg(3);

static void BM_InducedMapZeroDiscord(benchmark::State& state) {
  Rng rng(3);
  const ZeroDiscordAssignment z(OrthogonalProjectorSet::from_unitary(random_unitary(2, rng)),
                                {random_density(2, rng).op(), random_density(2, rng).op()});
  const UnitaryOperator u = random_unitary(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cp_certificate(induced_map(z, u)));
}
BENCHMARK(BM_InducedMapZeroDiscord);

static void BM_InducedMapXi(benchmark::State& state) {
  Rng rng(4);
  const LinearAssignment xi = make_xi_assignment(qubit_axis_basis());
  const UnitaryOperator u = random_unitary(8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cp_certificate(induced_map(xi, u)));
}
BENCHMARK(BM_InducedMapXi);

static void BM_PositivityCertificate(benchmark::State& state) {
  Rng rng(5);
  const LinearAssignment a = make_product_assignment(qubit_axis_basis(), random_density(2, rng));
  for (auto _ : state) {
    Rng probe(6);
    benchmark::DoNotOptimize(positivity_certificate(a, static_cast<int>(state.range(0)), probe));
  }
}
BENCHMARK(BM_PositivityCertificate)->Arg(100)->Arg(1000);

static void BM_DomainVolume(benchmark::State& state) {
  const LinearAssignment xi = make_xi_assignment(qubit_axis_basis());
  for (auto _ : state) {
    Rng rng(7);
    benchmark::DoNotOptimize(domain_volume(xi, 1000, rng));
  }
}
BENCHMARK(BM_DomainVolume);

BENCHMARK_MAIN();
