#include "qsimnet/circuit_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "qsimnet/error.hpp"

namespace qsimnet {

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::exact_spectral: return "exact_spectral";
    case Method::rk4: return "rk4";
    case Method::adaptive: return "adaptive";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "exact_spectral") return Method::exact_spectral;
  if (name == "rk4") return Method::rk4;
  if (name == "adaptive") return Method::adaptive;
  throw Error(ErrorKind::invalid_input, "unknown simulation method '" + name + "'");
}

void SimulationConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::invalid_input, "t_end must be positive");
  }
  if (!(dt > 0.0) || !(dt < t_end)) {
    throw Error(ErrorKind::invalid_input, "dt must satisfy 0 < dt < t_end");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol > 0.0 && abs_tol < 1.0)) {
    throw Error(ErrorKind::invalid_input, "tolerances must lie in (0, 1)");
  }
}

std::size_t SimulationConfig::sample_count() const {
  validate();
  // Guard against t_end/dt landing a hair below an integer.
  const double steps = std::floor(t_end / dt * (1.0 + 1e-12));
  return static_cast<std::size_t>(steps) + 1;
}

std::vector<double> SimulationConfig::sample_times() const {
  const std::size_t count = sample_count();
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = static_cast<double>(k) * dt;
  return t;
}

void TraceSet::validate() const {
  if (labels.size() != channels.size()) {
    throw Error(ErrorKind::invalid_input, "trace labels and channels differ in count");
  }
  for (const auto& ch : channels) {
    if (ch.size() != times.size()) {
      throw Error(ErrorKind::invalid_input, "trace channel length differs from the time axis");
    }
    for (double v : ch) {
      if (!std::isfinite(v)) throw Error(ErrorKind::invalid_input, "trace has non-finite values");
    }
  }
}

Matrix companion_matrix(const Matrix& a, const Matrix& b) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n) {
    throw Error(ErrorKind::dimension_mismatch, "A and B must be square and of equal size");
  }
  Matrix k = Matrix::Zero(2 * n, 2 * n);
  k.topRightCorner(n, n).setIdentity();
  k.bottomLeftCorner(n, n) = -b;
  k.bottomRightCorner(n, n) = -a;
  return k;
}

LinearFlow::LinearFlow(Matrix generator) : generator_(std::move(generator)) {
  if (generator_.rows() != generator_.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "flow generator must be square");
  }
  if (!generator_.allFinite()) {
    throw Error(ErrorKind::invalid_input, "flow generator has non-finite entries");
  }
  if (generator_.rows() == 0) return;
  Eigen::ComplexEigenSolver<CMatrix> es(generator_.cast<Complex>());
  if (es.info() != Eigen::Success) return;
  Eigen::JacobiSVD<CMatrix> svd(es.eigenvectors());
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  condition_ = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (condition_ <= kSpectralConditionLimit) {
    spectral_ = true;
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
    eigen_lu_.compute(eigenvectors_);
  }
}

Vector LinearFlow::apply(double t, const Vector& x0) const {
  const double times[] = {t};
  return sample(times, x0).col(0);
}

Matrix LinearFlow::sample(std::span<const double> times, const Vector& x0) const {
  const Index m = generator_.rows();
  if (x0.size() != m) {
    throw Error(ErrorKind::dimension_mismatch, "initial state does not match the generator");
  }
  Matrix out(m, static_cast<Index>(times.size()));
  if (spectral_) {
    const CVector coeffs = eigen_lu_.solve(x0.cast<Complex>());
    CVector phased(m);
    for (std::size_t j = 0; j < times.size(); ++j) {
      for (Index i = 0; i < m; ++i) phased(i) = coeffs(i) * std::exp(eigenvalues_(i) * times[j]);
      out.col(static_cast<Index>(j)) = (eigenvectors_ * phased).real();
    }
  } else {
    for (std::size_t j = 0; j < times.size(); ++j) {
      const Matrix e = (generator_ * times[j]).exp();
      out.col(static_cast<Index>(j)) = e * x0;
    }
  }
  return out;
}

namespace {

Vector stacked(const InitialData& init, Index n) {
  if (init.q0.size() != n || init.qdot0.size() != n) {
    throw Error(ErrorKind::dimension_mismatch, "initial data does not match A and B");
  }
  if (!init.q0.allFinite() || !init.qdot0.allFinite()) {
    throw Error(ErrorKind::invalid_input, "initial data has non-finite entries");
  }
  Vector x0(2 * n);
  x0 << init.q0, init.qdot0;
  return x0;
}

Matrix integrate_rk4(const Matrix& k, const Vector& x0, std::span<const double> times, double h) {
  Matrix out(x0.size(), static_cast<Index>(times.size()));
  Vector x = x0;
  out.col(0) = x;
  for (std::size_t j = 1; j < times.size(); ++j) {
    const Vector k1 = k * x;
    const Vector k2 = k * (x + 0.5 * h * k1);
    const Vector k3 = k * (x + 0.5 * h * k2);
    const Vector k4 = k * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.col(static_cast<Index>(j)) = x;
  }
  return out;
}

// Dormand-Prince 5(4) with per-sample landing. The error norm is the max over
// components of |err| / (abs_tol + rel_tol * max(|x|, |x_new|)).
Matrix integrate_dopri5(const Matrix& k, const Vector& x0, std::span<const double> times,
                        double h0, double rel_tol, double abs_tol) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2, (void)c3, (void)c4, (void)c5;  // autonomous system

  Matrix out(x0.size(), static_cast<Index>(times.size()));
  Vector x = x0;
  out.col(0) = x;
  double t = times.empty() ? 0.0 : times[0];
  double h = h0;
  Vector f1 = k * x;
  for (std::size_t j = 1; j < times.size(); ++j) {
    const double target = times[j];
    while (t < target) {
      const bool last = t + h >= target;
      const double step = last ? target - t : h;
      const Vector f2 = k * (x + step * (a21 * f1));
      const Vector f3 = k * (x + step * (a31 * f1 + a32 * f2));
      const Vector f4 = k * (x + step * (a41 * f1 + a42 * f2 + a43 * f3));
      const Vector f5 = k * (x + step * (a51 * f1 + a52 * f2 + a53 * f3 + a54 * f4));
      const Vector f6 = k * (x + step * (a61 * f1 + a62 * f2 + a63 * f3 + a64 * f4 + a65 * f5));
      const Vector xn = x + step * (b1 * f1 + b3 * f3 + b4 * f4 + b5 * f5 + b6 * f6);
      const Vector f7 = k * xn;
      const Vector err =
          step * (e1 * f1 + e3 * f3 + e4 * f4 + e5 * f5 + e6 * f6 + e7 * f7);
      const Vector scale =
          (abs_tol + rel_tol * x.cwiseAbs().cwiseMax(xn.cwiseAbs()).array()).matrix();
      const double norm = err.cwiseQuotient(scale).cwiseAbs().maxCoeff();
      if (norm <= 1.0) {
        t = last ? target : t + step;
        x = xn;
        f1 = f7;
      }
      const double factor =
          norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      if (norm <= 1.0 && last) {
        // Keep the natural step; landing on a sample must not shrink it.
        h = std::max(h, step * factor);
      } else {
        h = step * factor;
      }
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        std::ostringstream os;
        os << "adaptive integrator step size underflow at t = " << t;
        throw Error(ErrorKind::integration, os.str());
      }
    }
    out.col(static_cast<Index>(j)) = x;
  }
  return out;
}

Matrix solve_linear(const Matrix& k, const Vector& x0, std::span<const double> times,
                    const SimulationConfig& cfg) {
  switch (cfg.method) {
    case Method::exact_spectral:
      return LinearFlow(k).sample(times, x0);
    case Method::rk4:
      return integrate_rk4(k, x0, times, cfg.dt);
    case Method::adaptive:
      return integrate_dopri5(k, x0, times, cfg.dt, cfg.rel_tol, cfg.abs_tol);
  }
  return {};
}

TraceSet to_traces(std::span<const double> times, const Matrix& states, Index channels,
                   const char* prefix) {
  TraceSet out;
  out.times.assign(times.begin(), times.end());
  out.channels.resize(static_cast<std::size_t>(channels));
  out.labels.resize(static_cast<std::size_t>(channels));
  for (Index c = 0; c < channels; ++c) {
    auto& ch = out.channels[static_cast<std::size_t>(c)];
    ch.resize(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) ch[j] = states(c, static_cast<Index>(j));
    out.labels[static_cast<std::size_t>(c)] = prefix + std::to_string(c + 1);
  }
  return out;
}

}  // namespace

TraceSet simulate_second_order(const Matrix& a, const Matrix& b, const InitialData& init,
                               const SimulationConfig& cfg) {
  cfg.validate();
  if (!a.allFinite() || !b.allFinite()) {
    throw Error(ErrorKind::invalid_input, "A and B must be finite");
  }
  const Matrix k = companion_matrix(a, b);
  const Vector x0 = stacked(init, a.rows());
  const auto times = cfg.sample_times();
  return to_traces(times, solve_linear(k, x0, times, cfg), a.rows(), "V");
}

TraceSet simulate_first_order(const Matrix& m, const Vector& x0, const SimulationConfig& cfg) {
  cfg.validate();
  if (m.rows() != m.cols() || x0.size() != m.rows()) {
    throw Error(ErrorKind::dimension_mismatch, "first-order system and state differ in size");
  }
  if (!m.allFinite() || !x0.allFinite()) {
    throw Error(ErrorKind::invalid_input, "first-order system must be finite");
  }
  const auto times = cfg.sample_times();
  return to_traces(times, solve_linear(m, x0, times, cfg), m.rows(), "x");
}

TraceSet exact_linear_solution(const Matrix& a, const Matrix& b, const InitialData& init,
                               std::span<const double> times) {
  const Matrix k = companion_matrix(a, b);
  const Vector x0 = stacked(init, a.rows());
  return to_traces(times, LinearFlow(k).sample(times, x0), a.rows(), "V");
}

}  // namespace qsimnet
