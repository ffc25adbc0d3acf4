// Serial reference vs OpenMP kernels: system assembly and error evaluation.
// Argument: refinement level (n = 2^level cells per side).

#include <benchmark/benchmark.h>

#include "brinkman/analysis.hpp"
#include "brinkman/study.hpp"

using namespace brinkman;

namespace {

struct Problem {
  std::shared_ptr<const Mesh> mesh;
  SpaceSet spaces;
  ProblemCoefficients coeffs;
  Forcing forcing;

  explicit Problem(int level)
      : mesh(std::make_shared<const Mesh>(build_structured_mesh(cells_per_side(level)))),
        spaces(SpaceSet::taylor_hood(mesh)),
        coeffs(ProblemCoefficients::with_defaults(Viscosity::smooth_a(1e-4, 1.0), 1e-6)),
        forcing(coeffs, ExactSolution::manufactured())
  {
  }
};

void BM_AssembleSerial(benchmark::State& state)
{
  const Problem p(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_serial(p.spaces, p.coeffs, p.forcing));
  state.counters["cells"] = static_cast<double>(p.mesh->num_cells());
}

void BM_AssembleParallel(benchmark::State& state)
{
  const Problem p(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble(p.spaces, p.coeffs, p.forcing));
  state.counters["cells"] = static_cast<double>(p.mesh->num_cells());
}

template <Execution E>
void BM_FieldErrors(benchmark::State& state)
{
  const Problem p(static_cast<int>(state.range(0)));
  const auto layout = SystemLayout::of(p.spaces);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(layout.size, 0.1);
  const auto fields = DiscreteFields::split(layout, x);
  const auto exact = ExactSolution::manufactured();
  for (auto _ : state)
    benchmark::DoNotOptimize(field_errors(p.spaces, fields, exact, 10, -0.25, E));
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldErrors<Execution::Serial>)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldErrors<Execution::Parallel>)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
