// Serial reference vs OpenMP kernels on the workloads the figures generate.
#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "macrolens/catalog.hpp"
#include "macrolens/kernels.hpp"

using namespace macrolens;
using kernels::Lattice;
using kernels::WeightedAmplitudes;

namespace {

const FockVector& cat_state() {
  static const FockVector psi = css(2.0).psi_minus;
  return psi;
}

template <auto Kernel>
void homodyne(benchmark::State& state) {
  const auto amps = cat_state().amplitudes();
  const WeightedAmplitudes part{1.0, amps};
  const Lattice grid{-8.0, 16.0 / static_cast<double>(state.range(0) - 1), static_cast<std::size_t>(state.range(0))};
  std::vector<double> out(grid.n);
  for (auto _ : state) {
    Kernel(std::span(&part, 1), grid, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.n));
}

template <auto Kernel>
void mixture(benchmark::State& state) {
  std::vector<double> weights(60);
  for (std::size_t n = 0; n < weights.size(); ++n) weights[n] = std::exp(-0.1 * static_cast<double>(n));
  const Lattice src{0.0, 1.0, weights.size()};
  const Lattice out_grid{-12.0, 84.0 / static_cast<double>(state.range(0) - 1), static_cast<std::size_t>(state.range(0))};
  std::vector<double> out(out_grid.n);
  for (auto _ : state) {
    Kernel(src, weights, out_grid, 2.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out_grid.n));
}

template <auto Kernel>
void convolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> masses(n, 1.0 / static_cast<double>(n));
  std::vector<double> kernel(n / 8 + 1);
  for (std::size_t k = 0; k < kernel.size(); ++k) kernel[k] = std::exp(-1e-4 * static_cast<double>(k * k));
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(masses, kernel, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto Kernel>
void wigner(benchmark::State& state) {
  const auto amps = cat_state().amplitudes();
  const WeightedAmplitudes part{1.0, amps};
  const auto n = static_cast<std::size_t>(state.range(0));
  const Lattice axis{-5.0, 10.0 / static_cast<double>(n - 1), n};
  std::vector<double> out(n * n);
  for (auto _ : state) {
    Kernel(std::span(&part, 1), axis, axis, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

}  // namespace

BENCHMARK(homodyne<kernels::serial::homodyne_density>)->Name("homodyne/serial")->Arg(2048)->Arg(8192);
BENCHMARK(homodyne<kernels::parallel::homodyne_density>)->Name("homodyne/omp")->Arg(2048)->Arg(8192)->UseRealTime();
BENCHMARK(mixture<kernels::serial::gaussian_mixture>)->Name("gaussian_mixture/serial")->Arg(2048)->Arg(8192);
BENCHMARK(mixture<kernels::parallel::gaussian_mixture>)->Name("gaussian_mixture/omp")->Arg(2048)->Arg(8192)->UseRealTime();
BENCHMARK(convolve<kernels::serial::lattice_convolve>)->Name("lattice_convolve/serial")->Arg(4096)->Arg(16384);
BENCHMARK(convolve<kernels::parallel::lattice_convolve>)->Name("lattice_convolve/omp")->Arg(4096)->Arg(16384)->UseRealTime();
BENCHMARK(wigner<kernels::serial::wigner_grid>)->Name("wigner/serial")->Arg(51)->Arg(101);
BENCHMARK(wigner<kernels::parallel::wigner_grid>)->Name("wigner/omp")->Arg(51)->Arg(101)->UseRealTime();

BENCHMARK_MAIN();
