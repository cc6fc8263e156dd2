#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>

namespace cpo {

/// In-place 1-D complex FFT of fixed length. Plans are created with FFTW_ESTIMATE so
/// results are reproducible run to run. Plan creation is serialized internally;
/// distinct Fft objects may execute concurrently.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const;

  /// Unnormalized forward transform, sum_j x_j exp(-2 pi i jk / n).
  void forward(std::span<std::complex<double>> data);
  /// Inverse transform including the 1/n factor.
  void inverse(std::span<std::complex<double>> data);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Version string of the FFT backend.
std::string fft_backend_version();

}  // namespace cpo
