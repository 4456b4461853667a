#include "qsimnet/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "qsimnet/error.hpp"
#include "qsimnet/fft.hpp"

namespace qsimnet {

const char* to_string(HilbertConvention c) noexcept {
  return c == HilbertConvention::minus ? "minus" : "plus";
}

namespace {

void check_series(std::span<const double> x) {
  if (x.size() < kMinSignalLength) {
    throw Error(ErrorKind::invalid_input, "signal needs at least 16 samples, got " +
                                              std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorKind::invalid_input, "signal has non-finite samples");
  }
}

std::vector<double> circular_hilbert(std::span<const double> x) {
  const std::size_t n = x.size();
  const auto half = fft::forward_real(x);
  std::vector<std::complex<double>> spectrum(n, {0.0, 0.0});
  spectrum[0] = half[0];
  const std::size_t positive_end = (n + 1) / 2;  // exclusive; skips Nyquist for even n
  for (std::size_t k = 1; k < positive_end; ++k) spectrum[k] = 2.0 * half[k];
  if (n % 2 == 0) spectrum[n / 2] = half[n / 2];
  const auto analytic = fft::inverse(spectrum);
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = analytic[j].imag();
  return y;
}

constexpr std::size_t kMaxPredictorRows = 2048;

// x[j] ~ sum_i coeffs[i] * x[j - (i+1) * lag]
struct Predictor {
  Vector coeffs;
  std::size_t lag = 1;
};

std::optional<Predictor> fit_predictor(std::span<const double> x, int order, std::size_t lag) {
  const std::size_t p = static_cast<std::size_t>(order);
  const std::size_t start = p * lag;
  if (x.size() <= start + 4 * p) return std::nullopt;
  // The recurrence holds at every sample, so an evenly strided subset of
  // rows determines the same coefficients at a fraction of the cost.
  const std::size_t available = x.size() - start;
  const std::size_t stride = std::max<std::size_t>(1, available / kMaxPredictorRows);
  const std::size_t rows = (available + stride - 1) / stride;
  Matrix design(static_cast<Index>(rows), order);
  Vector rhs(static_cast<Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t j = start + r * stride;
    rhs(static_cast<Index>(r)) = x[j];
    for (std::size_t i = 0; i < p; ++i) {
      design(static_cast<Index>(r), static_cast<Index>(i)) = x[j - (i + 1) * lag];
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(design);
  cod.setThreshold(1e-12);
  return Predictor{cod.solve(rhs), lag};
}

std::vector<double> extend(std::span<const double> x, const Predictor& pred, std::size_t count) {
  std::vector<double> y(x.begin(), x.end());
  y.resize(x.size() + count);
  const std::size_t p = static_cast<std::size_t>(pred.coeffs.size());
  for (std::size_t j = x.size(); j < y.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) acc += pred.coeffs(static_cast<Index>(i)) * y[j - (i + 1) * pred.lag];
    y[j] = acc;
  }
  return y;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

struct Candidate {
  int order = 0;
  std::size_t lag = 1;
  double err = 0.0;
};

// (order, lag) pairs ranked by how well a fit on the first 70% predicts the
// rest.
std::vector<Candidate> rank_predictors(std::span<const double> x, const std::vector<int>& orders,
                                       double scale) {
  const std::size_t cut = x.size() * 7 / 10;
  const auto train = x.first(cut);
  std::vector<Candidate> out;
  for (int order : orders) {
    if (order < 1) continue;
    for (std::size_t divisions : {2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64}) {
      const std::size_t lag = cut / (divisions * static_cast<std::size_t>(order));
      if (lag < 1) continue;
      auto pred = fit_predictor(train, order, lag);
      if (!pred) continue;
      const auto y = extend(train, *pred, x.size() - cut);
      double err = 0.0;
      for (std::size_t j = cut; j < x.size(); ++j) err = std::max(err, std::abs(y[j] - x[j]));
      if (std::isfinite(err)) out.push_back({order, lag, err / scale});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) { return a.err < b.err; });
  return out;
}

// Extends x by count samples with the best-ranked predictor whose
// continuation, refit on the whole record, stays bounded. A predictor can
// validate well over the hold-out yet drift over a long extension.
std::optional<std::vector<double>> continue_record(std::span<const double> x,
                                                   const std::vector<int>& orders,
                                                   std::size_t count) {
  const double scale = max_abs(x);
  if (scale == 0.0) return std::nullopt;
  const double limit = 4.0 * scale;
  for (const Candidate& c : rank_predictors(x, orders, scale)) {
    const auto pred = fit_predictor(x, c.order, c.lag);
    if (!pred) continue;
    auto y = extend(x, *pred, count);
    if (max_abs(y) <= limit) return y;
  }
  return std::nullopt;
}

std::optional<std::vector<double>> extrapolated_hilbert(std::span<const double> x,
                                                        const AnalyticOptions& opts) {
  std::vector<int> orders = opts.predictor_orders;
  if (orders.empty()) orders = {2, 4, 8, 16};
  const std::size_t n = x.size();
  const std::size_t ext = static_cast<std::size_t>(std::ceil(opts.extension_factor * n));
  if (ext < 2) return std::nullopt;

  std::vector<double> reversed(x.rbegin(), x.rend());
  const auto fwd = continue_record(x, orders, ext);
  if (!fwd) return std::nullopt;
  const auto bwd = continue_record(reversed, orders, ext);
  if (!bwd) return std::nullopt;
  const auto& forward = *fwd;
  const auto& backward = *bwd;

  // [backward extension | record | forward extension | zero padding]
  const std::size_t total = n + 2 * ext;
  std::vector<double> full(fft::good_size(total), 0.0);
  for (std::size_t j = 0; j < ext; ++j) full[j] = backward[n + ext - 1 - j];
  std::copy(x.begin(), x.end(), full.begin() + static_cast<std::ptrdiff_t>(ext));
  std::copy(forward.begin() + static_cast<std::ptrdiff_t>(n), forward.end(),
            full.begin() + static_cast<std::ptrdiff_t>(ext + n));
  const std::size_t taper = ext / 2;
  for (std::size_t j = 0; j < taper; ++j) {
    const double w = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(j) /
                                          static_cast<double>(taper));
    full[j] *= w;
    full[total - 1 - j] *= w;
  }
  const auto y = circular_hilbert(full);
  return std::vector<double>(y.begin() + static_cast<std::ptrdiff_t>(ext),
                             y.begin() + static_cast<std::ptrdiff_t>(ext + n));
}

}  // namespace

std::vector<double> discrete_hilbert(std::span<const double> x) {
  check_series(x);
  return circular_hilbert(x);
}

std::vector<double> hilbert_transform(std::span<const double> x, const AnalyticOptions& opts) {
  check_series(x);
  if (opts.edge == EdgeMode::extrapolate) {
    if (auto y = extrapolated_hilbert(x, opts)) return std::move(*y);
  }
  return circular_hilbert(x);
}

std::vector<double> AnalyticTrace::envelope() const {
  std::vector<double> env(real_part.size());
  for (std::size_t j = 0; j < env.size(); ++j) env[j] = std::hypot(real_part[j], hilbert_part[j]);
  return env;
}

AnalyticTrace analytic_signal(std::span<const double> x, HilbertConvention convention,
                              const AnalyticOptions& opts) {
  AnalyticTrace out;
  out.real_part.assign(x.begin(), x.end());
  out.hilbert_part = hilbert_transform(x, opts);
  out.convention = convention;
  if (convention == HilbertConvention::minus) {
    for (double& v : out.hilbert_part) v = -v;
  }
  return out;
}

std::vector<double> envelope(std::span<const double> x, const AnalyticOptions& opts) {
  return analytic_signal(x, HilbertConvention::plus, opts).envelope();
}

std::vector<std::uint8_t> interior_mask(std::size_t samples, double edge_fraction) {
  const auto edge = static_cast<std::size_t>(std::floor(edge_fraction * static_cast<double>(samples)));
  std::vector<std::uint8_t> mask(samples, 0);
  for (std::size_t j = edge; j + edge < samples; ++j) mask[j] = 1;
  return mask;
}

AnalyticOptions port_channel_options(const AnalyticOptions& opts, std::size_t channels) {
  AnalyticOptions out = opts;
  if (out.predictor_orders.empty()) {
    // A channel of an n-port linear network holds at most n tones (2n poles).
    out.predictor_orders = {2, 4, 8, 16};
    const int poles = 2 * static_cast<int>(channels);
    if (std::find(out.predictor_orders.begin(), out.predictor_orders.end(), poles) ==
        out.predictor_orders.end()) {
      out.predictor_orders.push_back(poles);
    }
  }
  return out;
}

BornEstimate born_from_traces(const TraceSet& traces, const AnalyticOptions& opts) {
  traces.validate();
  const AnalyticOptions channel_opts = port_channel_options(opts, traces.channel_count());
  BornEstimate out;
  out.times = traces.times;
  out.interior_mask = interior_mask(traces.sample_count());
  out.p.reserve(traces.channel_count());
  for (std::size_t k = 0; k < traces.channel_count(); ++k) {
    auto env = envelope(traces.channel(k), channel_opts);
    for (double& v : env) v *= v;
    out.p.push_back(std::move(env));
  }
  return out;
}

}  // namespace qsimnet
