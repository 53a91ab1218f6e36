#include <benchmark/benchmark.h>

#include "flowforms/flow_graph.hpp"
#include "flowforms/presets.hpp"
#include "flowforms/recurrence.hpp"
#include "flowforms/synthesis.hpp"

namespace ff = flowforms;

namespace {

ff::FlowGraph linear_graph(int res) {
  return ff::build_flow_graph(ff::preset_linear(), ff::form_dx(2, 0, -1.0),
                              ff::Grid::square(2, res), 2.0);
}

void bm_build_flow_graph(benchmark::State& state) {
  ff::TorusFlowSpec spec = ff::preset_linear();
  ff::ClosedOneForm form = ff::form_dx(2, 0, -1.0);
  ff::Grid grid = ff::Grid::square(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ff::FlowGraph g = ff::build_flow_graph(spec, form, grid, 2.0);
    benchmark::DoNotOptimize(g.edges.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.cell_count());
}
BENCHMARK(bm_build_flow_graph)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void bm_xi_recurrent_cells(benchmark::State& state) {
  ff::FlowGraph g = linear_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ff::RecurrenceReport rep = ff::xi_recurrent_cells(g, 0.0625);
    benchmark::DoNotOptimize(rep.R.data());
  }
  state.SetItemsProcessed(state.iterations() * g.cell_count());
}
BENCHMARK(bm_xi_recurrent_cells)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void bm_synthesize_potential(benchmark::State& state) {
  ff::FlowGraph g = linear_graph(static_cast<int>(state.range(0)));
  ff::RecurrenceReport rep = ff::xi_recurrent_cells(g, 0.0625);
  double eps = ff::default_epsilon(g);
  for (auto _ : state) {
    ff::PotentialResult pot = ff::synthesize_potential(g, rep, eps);
    benchmark::DoNotOptimize(pot.g.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.edges.size()));
}
BENCHMARK(bm_synthesize_potential)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void bm_integrate_trajectory(benchmark::State& state) {
  ff::TorusFlowSpec spec = ff::preset_morse_gradient();
  ff::Vec x0{0.3, 0.4};
  double t_total = static_cast<double>(state.range(0));
  for (auto _ : state) {
    ff::Trajectory traj = ff::integrate_trajectory(spec, x0, t_total, 0.01);
    benchmark::DoNotOptimize(traj.points.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(t_total / 0.01));
}
BENCHMARK(bm_integrate_trajectory)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
