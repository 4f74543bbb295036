#pragma once

// Grid kernels behind the measurement module.
//
// Every kernel exists twice with identical signatures: `serial` is the plain
// reference used by the tests, `parallel` is the OpenMP version the library
// calls. Each output element is written by exactly one iteration, so results
// do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <span>

namespace macrolens::kernels {

/// A weighted pure state whose amplitudes are already rotated by exp(-i n phi).
struct WeightedAmplitudes {
  double weight;
  std::span<const std::complex<double>> amplitudes;
};

/// Uniform 1-D lattice x_i = x0 + i * dx, i = 0..n-1.
struct Lattice {
  double x0;
  double dx;
  std::size_t n;
  double at(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * dx; }
};

namespace serial {

/// out[i] = sum_k w_k |sum_n a_kn psi_n(x_i)|^2
void homodyne_density(std::span<const WeightedAmplitudes> components, const Lattice& grid, std::span<double> out);

/// out[i] = sum_j weights[j] * g_sigma(out_grid.at(i) - src_grid.at(j)), g the unit-mass Gaussian.
void gaussian_mixture(const Lattice& src_grid, std::span<const double> weights, const Lattice& out_grid, double sigma,
                      std::span<double> out);

/// out[i] = sum_k kernel[|k|] * masses[i - k], |k| < kernel.size(); masses outside the range are zero.
void lattice_convolve(std::span<const double> masses, std::span<const double> kernel, std::span<double> out);

/// Wigner function of the weighted pure states on the tensor grid xs x ps,
/// out row-major with x as the fast index. Each point uses the displaced
/// parity W(x, p) = (1/pi) sum_k (-1)^k |<k|D(-A)|psi>|^2, A = (x + i p)/sqrt(2),
/// so a mixture of Gaussians never picks up cancellation noise.
void wigner_grid(std::span<const WeightedAmplitudes> components, const Lattice& xs, const Lattice& ps,
                 std::span<double> out);

}  // namespace serial

namespace parallel {

void homodyne_density(std::span<const WeightedAmplitudes> components, const Lattice& grid, std::span<double> out);
void gaussian_mixture(const Lattice& src_grid, std::span<const double> weights, const Lattice& out_grid, double sigma,
                      std::span<double> out);
void lattice_convolve(std::span<const double> masses, std::span<const double> kernel, std::span<double> out);
void wigner_grid(std::span<const WeightedAmplitudes> components, const Lattice& xs, const Lattice& ps,
                 std::span<double> out);

}  // namespace parallel

}  // namespace macrolens::kernels
