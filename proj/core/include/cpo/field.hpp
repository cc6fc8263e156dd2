#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cpo {

using complex = std::complex<double>;

/// Uniform periodic grid x_j = x_min + j dx, j = 0..n-1, dx = (x_max - x_min) / n.
class TransverseGrid {
 public:
  /// n must be a power of two and at least 64.
  TransverseGrid(std::size_t n, double x_min, double x_max);

  /// Grid of the given width centred on x = 0.
  static TransverseGrid centered(std::size_t n, double width);

  std::size_t size() const { return n_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double width() const { return x_max_ - x_min_; }
  double dx() const { return dx_; }
  double x(std::size_t j) const { return x_min_ + dx_ * static_cast<double>(j); }
  std::vector<double> coordinates() const;

  /// Angular wavenumbers in FFT order.
  std::vector<double> wavenumbers() const;

  friend bool operator==(const TransverseGrid&, const TransverseGrid&) = default;

 private:
  std::size_t n_;
  double x_min_;
  double x_max_;
  double dx_;
};

/// Sampled slowly varying envelope at propagation coordinate z.
struct ComplexField1D {
  TransverseGrid grid;
  std::vector<complex> values;
  double z = 0.0;

  explicit ComplexField1D(TransverseGrid g, double z0 = 0.0)
      : grid(g), values(g.size()), z(z0) {}
};

struct BeamDiagnostics {
  double centroid = 0.0;
  double rms_width = 0.0;
  double norm = 0.0;
  double peak_position = 0.0;
};

/// Sum |field|^2 dx.
double field_norm(const ComplexField1D& field);

/// sqrt(sum |a - b|^2 dx); both fields must share a grid.
double l2_distance(const ComplexField1D& a, const ComplexField1D& b);

/// Moments by direct quadrature. Throws UndefinedCentroidError for a zero field.
BeamDiagnostics beam_diagnostics(const ComplexField1D& field);

/// exp(-(x - a)^2 / b^2) normalized to unit sum |field|^2 dx.
/// Throws ResolutionError if b < 4 dx.
ComplexField1D make_gaussian(const TransverseGrid& grid, double a, double b);

/// Largest |field| among the two outermost samples at each end, relative to the peak.
double edge_fraction(const ComplexField1D& field);

}  // namespace cpo
