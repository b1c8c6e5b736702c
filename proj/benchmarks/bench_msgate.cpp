// Microbenchmarks for the hot paths: Hamiltonian evaluation, RK4 stepping,
// batched propagation, and the analysis routines that sweeps call in a loop.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "msgate/msgate.hpp"

using namespace msgate;

namespace {

GateParams params(int N) { return GateParams(0.1, 0.025, 5.0, 0.025, N); }

void BM_ExactHamiltonian(benchmark::State& state) {
    const GateParams p = params(static_cast<int>(state.range(0)));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_hamiltonian(p, t));
        t += 0.1;
    }
}
BENCHMARK(BM_ExactHamiltonian)->Arg(4)->Arg(8)->Arg(16);

void BM_HarmonicDense(benchmark::State& state) {
    const HarmonicHamiltonian h =
        perturbative_harmonics(params(static_cast<int>(state.range(0))), 2);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h.at(t));
        t += 0.1;
    }
}
BENCHMARK(BM_HarmonicDense)->Arg(4)->Arg(8)->Arg(16);

void BM_HarmonicApply(benchmark::State& state) {
    const HarmonicHamiltonian h =
        perturbative_harmonics(params(static_cast<int>(state.range(0))), 2);
    ComplexMatrix x = ComplexMatrix::Zero(h.dim, 1);
    x(0, 0) = 1.0;
    ComplexMatrix y(h.dim, 1), scratch(h.dim, 1);
    double t = 0.0;
    for (auto _ : state) {
        h.apply(t, Complex(0.0, -1.0), x, y, scratch);
        benchmark::DoNotOptimize(y.data());
        t += 0.1;
    }
}
BENCHMARK(BM_HarmonicApply)->Arg(4)->Arg(8)->Arg(16);

void BM_Rk4Trajectory(benchmark::State& state) {
    const GateParams p = params(static_cast<int>(state.range(0)));
    const HarmonicHamiltonian h = perturbative_harmonics(p, 2);
    const StateVector psi0 = StateVector::basis_state(Level::g, Level::g, 0, p.phonon_dim);
    const TimeGrid grid{0.0, 50.0, TimeGrid::default_dt(p.nu), 1 << 30};
    const auto steps = static_cast<std::int64_t>(std::ceil(grid.t_end / grid.dt));
    for (auto _ : state) {
        benchmark::DoNotOptimize(schrodinger_evolve(h, psi0, grid));
    }
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_Rk4Trajectory)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_EvolveColumns(benchmark::State& state) {
    const GateParams p = params(4);
    const HarmonicHamiltonian h = perturbative_harmonics(p, 2);
    ComplexMatrix Psi0 = ComplexMatrix::Zero(16, state.range(0));
    for (int c = 0; c < Psi0.cols(); ++c)
        Psi0(basis_index(Level::g, Level::g, c % 4, 4), c) = 1.0;
    const double dt = TimeGrid::default_dt(p.nu);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_columns(h, Psi0, 50.0, dt));
    }
}
BENCHMARK(BM_EvolveColumns)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExtractPeriod(benchmark::State& state) {
    Trajectory traj;
    traj.phonon_dim = 4;
    const double period = 1000.0, dt = 0.5;
    for (double t = 0.0; t <= 20000.0; t += dt) {
        const double s = std::sin(M_PI * t / period);
        traj.times.push_back(t);
        traj.probs.push_back({1.0 - s * s, 0.0, 0.0, s * s});
        traj.norms.push_back(1.0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_period(traj));
    }
}
BENCHMARK(BM_ExtractPeriod);

void BM_ClosedFormT0(benchmark::State& state) {
    const GateParams p = params(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(closed_form_T0(p));
    }
}
BENCHMARK(BM_ClosedFormT0);

void BM_EigenPeriods(benchmark::State& state) {
    const ReducedSystem sys = reduced3(params(4));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigen_periods(sys.A));
    }
}
BENCHMARK(BM_EigenPeriods);

void BM_ToyFidelityThermal(benchmark::State& state) {
    const ToyParams tp(1.0, std::sqrt(2.0) - 1.0);
    const ThermalSpec spec(0.5, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(toy_fidelity_thermal(tp, spec));
    }
}
BENCHMARK(BM_ToyFidelityThermal);

}  // namespace

BENCHMARK_MAIN();
