#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qsimnet::fft {

/// Unnormalized forward real-to-complex DFT; returns n/2 + 1 bins.
std::vector<std::complex<double>> forward_real(std::span<const double> x);

/// Inverse of the full complex DFT, normalized by 1/n.
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> spectrum);

/// Smallest 2^a 3^b 5^c 7^d >= n.
std::size_t good_size(std::size_t n);

}  // namespace qsimnet::fft
