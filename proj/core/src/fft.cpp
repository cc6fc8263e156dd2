#include "cpo/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "cpo/error.hpp"

namespace cpo {

namespace {
// FFTW's planner is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Impl {
  std::size_t n;
  fftw_complex* buffer;
  fftw_plan fwd;
  fftw_plan inv;

  explicit Impl(std::size_t size) : n(size) {
    std::lock_guard lock(planner_mutex());
    buffer = fftw_alloc_complex(n);
    if (buffer == nullptr) throw Error("Fft: allocation failed");
    const int len = static_cast<int>(n);
    fwd = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    inv = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(buffer);
  }

  void run(fftw_plan plan, std::span<std::complex<double>> data) {
    if (data.size() != n) throw ConfigError("Fft: length mismatch");
    std::memcpy(buffer, data.data(), n * sizeof(fftw_complex));
    fftw_execute(plan);
    std::memcpy(static_cast<void*>(data.data()), buffer, n * sizeof(fftw_complex));
  }
};

Fft::Fft(std::size_t n) : impl_(std::make_unique<Impl>(n)) {}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

std::size_t Fft::size() const { return impl_->n; }

void Fft::forward(std::span<std::complex<double>> data) { impl_->run(impl_->fwd, data); }

void Fft::inverse(std::span<std::complex<double>> data) {
  impl_->run(impl_->inv, data);
  const double scale = 1.0 / static_cast<double>(impl_->n);
  for (auto& v : data) v *= scale;
}

std::string fft_backend_version() { return fftw_version; }

}  // namespace cpo
