#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace bcdr {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("transform size must be > 0");
  std::vector<double> rbuf(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> cbuf(static_cast<std::size_t>(n / 2 + 1));
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_UNALIGNED lets the plan execute on arbitrary caller buffers.
  fwd_plan_ = fftw_plan_dft_r2c_1d(
      n, rbuf.data(), reinterpret_cast<fftw_complex*>(cbuf.data()),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  inv_plan_ = fftw_plan_dft_c2r_1d(
      n, reinterpret_cast<fftw_complex*>(cbuf.data()), rbuf.data(),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_plan_ || !inv_plan_) throw std::runtime_error("fftw plan creation failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inv_plan_));
}

void RealFft::forward(const double* in, std::complex<double>* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_plan_),
                       const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void RealFft::inverse(const std::complex<double>* in, double* out) const {
  std::vector<std::complex<double>> scratch(in, in + bins());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
  const double scale = 1.0 / n_;
  for (int i = 0; i < n_; ++i) out[i] *= scale;
}

}  // namespace bcdr
