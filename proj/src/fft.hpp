#pragma once

#include <complex>
#include <vector>

namespace bcdr {

// Thin wrapper over FFTW's 1-d real transforms. Plan creation and
// destruction are serialized globally (FFTW's planner is not thread-safe);
// forward()/inverse() may be called concurrently from multiple threads.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  int bins() const { return n_ / 2 + 1; }

  // Unnormalized DFT of n real samples into n/2+1 complex bins.
  void forward(const double* in, std::complex<double>* out) const;

  // Inverse of forward(), normalized by 1/n. The input is copied
  // internally (FFTW's c2r transform destroys its input).
  void inverse(const std::complex<double>* in, double* out) const;

 private:
  int n_;
  void* fwd_plan_;
  void* inv_plan_;
};

}  // namespace bcdr
