#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "qsimnet/qsimnet.hpp"

using namespace qsimnet;

namespace {

Hamiltonian random_hamiltonian(Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  CMatrix h = (0.5 * (m + m.adjoint())).eval();
  h += 3.0 * CMatrix::Identity(n, n);  // keeps the real part well conditioned
  return Hamiltonian(h);
}

void BM_Propagate(benchmark::State& state) {
  const Index n = state.range(0);
  const Hamiltonian h = random_hamiltonian(n, 1);
  SimulationConfig cfg;
  const auto times = cfg.sample_times();
  for (auto _ : state) benchmark::DoNotOptimize(propagate(h, StateVector::basis(n, 0), times));
}
BENCHMARK(BM_Propagate)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SecondOrderCoeffs(benchmark::State& state) {
  const Hamiltonian h = random_hamiltonian(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(second_order_coeffs(h));
}
BENCHMARK(BM_SecondOrderCoeffs)->Arg(2)->Arg(8)->Arg(32);

void simulate(benchmark::State& state, Method method) {
  const Index n = state.range(0);
  const Hamiltonian h = random_hamiltonian(n, 3);
  const auto sys = second_order_coeffs(h);
  const InitialData init = initial_conditions(h, StateVector::basis(n, 0), Part::real_part);
  SimulationConfig cfg;
  cfg.method = method;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_second_order(sys.a, sys.b, init, cfg));
}

void BM_SimulateExact(benchmark::State& state) { simulate(state, Method::exact_spectral); }
void BM_SimulateRk4(benchmark::State& state) { simulate(state, Method::rk4); }
BENCHMARK(BM_SimulateExact)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateRk4)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_HilbertTransform(benchmark::State& state) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::cos(3e-3 * k) + 0.3 * std::sin(7.1e-3 * k);
  AnalyticOptions circular;
  circular.edge = EdgeMode::circular;
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_transform(x, circular));
}
BENCHMARK(BM_HilbertTransform)->Arg(1 << 12)->Arg(20001)->Unit(benchmark::kMicrosecond);

void BM_Envelope(benchmark::State& state) {
  std::vector<double> x(20001);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::cos(3e-3 * k) + 0.3 * std::sin(7.1e-3 * k);
  for (auto _ : state) benchmark::DoNotOptimize(envelope(x));
}
BENCHMARK(BM_Envelope)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const Index n = state.range(0);
  const Hamiltonian h = shift_spectrum(random_hamiltonian(n, 4), 0.5).hamiltonian;
  const StateVector psi0 = StateVector::basis(n, 0);
  SimulationConfig cfg;
  cfg.t_end = 20.0;
  for (auto _ : state) {
    CircuitDesign d = synthesize_network(second_order_coeffs(h), Vector::Ones(n));
    set_initial_state(d, initial_conditions(h, psi0, Part::real_part));
    const DampingStiffness ab = reconstruct_ab(d);
    const TraceSet tr = simulate_second_order(
        ab.a, ab.b, {d.initial_voltages(), d.initial_slopes(), Part::real_part}, cfg);
    benchmark::DoNotOptimize(export_netlist(d));
    benchmark::DoNotOptimize(verify_against_quantum(tr, propagate(h, psi0, tr.times), h));
  }
}
BENCHMARK(BM_Pipeline)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
