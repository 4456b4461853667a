#pragma once

// Analytic signal, envelope and the envelope form of the Born rule.
//
// For a real port voltage V_k the analytic signal V_k + i H[V_k] carries the
// quadrature component, and env[V_k] = sqrt(V_k^2 + H[V_k]^2). When the
// quantum amplitude psi_k has a one-sided spectrum, |psi_k|^2 = env[Re psi_k]^2.
//
// The FFT treats a finite record as one period of a periodic signal; the
// wrap-around jump leaks into the quadrature everywhere, not only at the
// edges. EdgeMode::extrapolate removes most of it: the record is extended on
// both sides with a lagged linear predictor (port voltages of a linear
// network are finite sums of tones, which such a predictor continues
// exactly), the far ends of the extension are tapered to zero, and the
// transform is taken over the extended record.

#include <cstdint>
#include <span>
#include <vector>

#include "qsimnet/circuit_sim.hpp"

namespace qsimnet {

inline constexpr std::size_t kMinSignalLength = 16;
inline constexpr double kEdgeDiscardFraction = 0.1;

enum class HilbertConvention { plus, minus };  // sign applied to H[x]

const char* to_string(HilbertConvention c) noexcept;

enum class EdgeMode { circular, extrapolate };

struct AnalyticOptions {
  EdgeMode edge = EdgeMode::extrapolate;
  /// Predictor orders tried; the hold-out validation picks one. Empty means
  /// {2, 4, 8, 16}.
  std::vector<int> predictor_orders;
  /// Length of each extension as a multiple of the record length.
  double extension_factor = 3.0;
};

/// Circular FFT Hilbert transform: forward DFT, keep DC and Nyquist, double
/// the positive bins, drop the negative ones, inverse, imaginary part.
/// Throws Error(invalid_input) for fewer than 16 samples or non-finite data.
std::vector<double> discrete_hilbert(std::span<const double> x);

/// Hilbert transform with the requested edge handling.
std::vector<double> hilbert_transform(std::span<const double> x, const AnalyticOptions& opts = {});

struct AnalyticTrace {
  std::vector<double> real_part;
  std::vector<double> hilbert_part;  // +H[x] or -H[x] per convention
  HilbertConvention convention = HilbertConvention::plus;

  std::vector<double> envelope() const;
};

AnalyticTrace analytic_signal(std::span<const double> x,
                              HilbertConvention convention = HilbertConvention::plus,
                              const AnalyticOptions& opts = {});

/// sqrt(x^2 + H[x]^2).
std::vector<double> envelope(std::span<const double> x, const AnalyticOptions& opts = {});

/// True for samples not within kEdgeDiscardFraction of either end.
std::vector<std::uint8_t> interior_mask(std::size_t samples,
                                        double edge_fraction = kEdgeDiscardFraction);

struct BornEstimate {
  std::vector<double> times;
  std::vector<std::vector<double>> p;  // p[k][j] = env[V_k](t_j)^2
  std::vector<std::uint8_t> interior_mask;
};

/// opts with the predictor orders suited to an n-channel port recording.
AnalyticOptions port_channel_options(const AnalyticOptions& opts, std::size_t channels);

/// p_k(t) = env[V_k](t)^2 for each port channel.
BornEstimate born_from_traces(const TraceSet& traces, const AnalyticOptions& opts = {});

}  // namespace qsimnet
