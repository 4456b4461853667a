#include "qsimnet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsimnet/error.hpp"

namespace qsimnet {

VerificationReport verify_against_quantum(const TraceSet& traces, const QuantumTrajectory& truth,
                                          const Hamiltonian& h,
                                          const VerificationTolerances& tol,
                                          const AnalyticOptions& opts) {
  traces.validate();
  const std::size_t samples = traces.sample_count();
  const auto n = static_cast<std::size_t>(h.dim());
  if (truth.times.size() != samples || truth.states.size() != samples) {
    std::ostringstream os;
    os << "trace grid has " << samples << " samples, quantum trajectory has "
       << truth.times.size();
    throw Error(ErrorKind::dimension_mismatch, os.str());
  }
  for (std::size_t j = 0; j < samples; ++j) {
    if (std::abs(traces.times[j] - truth.times[j]) > 1e-9 * std::max(1.0, std::abs(truth.times[j]))) {
      throw Error(ErrorKind::dimension_mismatch,
                  "trace time grid differs from the quantum trajectory at sample " +
                      std::to_string(j));
    }
  }
  if (traces.channel_count() != n) {
    throw Error(ErrorKind::dimension_mismatch, "expected one trace channel per basis state");
  }

  VerificationReport r;
  r.tolerances = tol;
  r.spectrum_one_sided = h.spectrum_one_sided();
  const auto mask = interior_mask(samples);
  const AnalyticOptions channel_opts = port_channel_options(opts, n);

  double im_plus = 0.0;
  double im_minus = 0.0;
  std::vector<double> total(samples, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = traces.channel(k);
    const auto quad = hilbert_transform(v, channel_opts);
    for (std::size_t j = 0; j < samples; ++j) {
      const Complex psi = truth.states[j][static_cast<Index>(k)];
      r.max_re_err = std::max(r.max_re_err, std::abs(v[j] - psi.real()));
      const double p = v[j] * v[j] + quad[j] * quad[j];
      total[j] += p;
      if (!mask[j]) continue;
      im_plus = std::max(im_plus, std::abs(quad[j] - psi.imag()));
      im_minus = std::max(im_minus, std::abs(-quad[j] - psi.imag()));
      r.max_born_err = std::max(r.max_born_err, std::abs(p - std::norm(psi)));
    }
  }
  for (std::size_t j = 0; j < samples; ++j) {
    if (mask[j]) r.norm_err = std::max(r.norm_err, std::abs(total[j] - 1.0));
  }
  r.im_convention = im_minus < im_plus ? HilbertConvention::minus : HilbertConvention::plus;
  r.max_im_err = std::min(im_plus, im_minus);

  r.pass.re = r.max_re_err <= tol.re;
  r.pass.im = r.max_im_err <= tol.im;
  r.pass.born = r.max_born_err <= tol.born;
  r.pass.norm = r.norm_err <= tol.norm;
  return r;
}

}  // namespace qsimnet
