#include "qsimnet/fft.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include <fftw3.h>

namespace qsimnet::fft {

namespace {

// FFTW's planner is not thread-safe; execution on distinct plans is.
// Wisdom is dropped before every plan so the chosen algorithm, and with it
// the last bits of the result, does not depend on earlier transforms.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

struct Buffer {
  explicit Buffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {}
  ~Buffer() { fftw_free(ptr); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  void* ptr;
};

}  // namespace

std::vector<std::complex<double>> forward_real(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t bins = n / 2 + 1;
  Buffer in(sizeof(double) * n);
  Buffer out(sizeof(fftw_complex) * bins);
  auto* src = static_cast<double*>(in.ptr);
  auto* dst = static_cast<fftw_complex*>(out.ptr);
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    fftw_forget_wisdom();
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), src, dst, FFTW_ESTIMATE));
  }
  std::copy(x.begin(), x.end(), src);
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(bins);
  for (std::size_t k = 0; k < bins; ++k) result[k] = {dst[k][0], dst[k][1]};
  return result;
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> spectrum) {
  const std::size_t n = spectrum.size();
  Buffer in(sizeof(fftw_complex) * n);
  Buffer out(sizeof(fftw_complex) * n);
  auto* src = static_cast<fftw_complex*>(in.ptr);
  auto* dst = static_cast<fftw_complex*>(out.ptr);
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    fftw_forget_wisdom();
    plan.reset(fftw_plan_dft_1d(static_cast<int>(n), src, dst, FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  for (std::size_t k = 0; k < n; ++k) {
    src[k][0] = spectrum[k].real();
    src[k][1] = spectrum[k].imag();
  }
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) result[k] = {dst[k][0] * scale, dst[k][1] * scale};
  return result;
}

std::size_t good_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2, 3, 5, 7}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

}  // namespace qsimnet::fft
