#pragma once

// Time-domain solution of the port equations.
//
// The second-order system q'' + A q' + B q = 0 is always integrated in its
// companion form
//
//     d/dt [q; q'] = [[0, I], [-B, -A]] [q; q']
//
// so exact and numerical methods share one state vector.

#include <span>
#include <string>
#include <vector>

#include "qsimnet/realify.hpp"
#include "qsimnet/types.hpp"

namespace qsimnet {

enum class Method { exact_spectral, rk4, adaptive };

const char* to_string(Method m) noexcept;
Method method_from_string(const std::string& name);

struct SimulationConfig {
  double t_end = 10.0;
  double dt = 1e-3;
  Method method = Method::exact_spectral;
  double rel_tol = 1e-10;  // adaptive only
  double abs_tol = 1e-12;  // adaptive only

  /// Throws Error(invalid_input) unless 0 < dt < t_end and tolerances in (0,1).
  void validate() const;

  /// Number of samples on the grid 0, dt, 2dt, ..., <= t_end.
  std::size_t sample_count() const;

  /// t_k = k * dt, index-multiplied.
  std::vector<double> sample_times() const;
};

struct TraceSet {
  std::vector<double> times;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> channels;

  std::size_t sample_count() const { return times.size(); }
  std::size_t channel_count() const { return channels.size(); }
  std::span<const double> channel(std::size_t k) const { return channels[k]; }

  /// Lengths agree and every value is finite; throws Error(invalid_input).
  void validate() const;
};

/// Companion matrix [[0, I], [-B, -A]].
Matrix companion_matrix(const Matrix& a, const Matrix& b);

/// Solution operator x(t) = exp(K t) x0 for a constant real generator.
///
/// Uses the eigendecomposition of K when its eigenvector matrix is well
/// conditioned (cond <= kSpectralConditionLimit); otherwise falls back to a
/// scaled-and-squared Pade matrix exponential for every requested time.
class LinearFlow {
 public:
  static constexpr double kSpectralConditionLimit = 1e6;

  explicit LinearFlow(Matrix generator);

  bool spectral() const { return spectral_; }
  double eigenvector_condition() const { return condition_; }
  const Matrix& generator() const { return generator_; }

  Vector apply(double t, const Vector& x0) const;

  /// Columns are x(t_k); rows are state components.
  Matrix sample(std::span<const double> times, const Vector& x0) const;

 private:
  Matrix generator_;
  bool spectral_ = false;
  double condition_ = 0.0;
  CVector eigenvalues_;
  CMatrix eigenvectors_;
  Eigen::PartialPivLU<CMatrix> eigen_lu_;
};

/// q(t) on the cfg grid, channels V1..Vn.
TraceSet simulate_second_order(const Matrix& a, const Matrix& b, const InitialData& init,
                               const SimulationConfig& cfg);

/// x(t) = exp(M t) x0 on the cfg grid, channels x1..xm. Honors cfg.method.
TraceSet simulate_first_order(const Matrix& m, const Vector& x0, const SimulationConfig& cfg);

/// Spectral reference solution on arbitrary sample times (falls back to the
/// matrix exponential for defective companions). Channels V1..Vn.
TraceSet exact_linear_solution(const Matrix& a, const Matrix& b, const InitialData& init,
                               std::span<const double> times);

}  // namespace qsimnet
