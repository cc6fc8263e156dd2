#include "cpo/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cpo/error.hpp"

namespace cpo {

TransverseGrid::TransverseGrid(std::size_t n, double x_min, double x_max)
    : n_(n), x_min_(x_min), x_max_(x_max), dx_(0.0) {
  if (n < 64 || (n & (n - 1)) != 0) {
    throw ConfigError("grid.n must be a power of two >= 64 (got " + std::to_string(n) + ")");
  }
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw ConfigError("grid: x_max > x_min violated");
  }
  dx_ = (x_max - x_min) / static_cast<double>(n);
}

TransverseGrid TransverseGrid::centered(std::size_t n, double width) {
  return TransverseGrid(n, -0.5 * width, 0.5 * width);
}

std::vector<double> TransverseGrid::coordinates() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
  return xs;
}

std::vector<double> TransverseGrid::wavenumbers() const {
  std::vector<double> k(n_);
  const double dk = 2.0 * std::numbers::pi / width();
  const auto half = static_cast<std::ptrdiff_t>(n_ / 2);
  for (std::size_t j = 0; j < n_; ++j) {
    auto m = static_cast<std::ptrdiff_t>(j);
    if (m >= half) m -= static_cast<std::ptrdiff_t>(n_);
    k[j] = dk * static_cast<double>(m);
  }
  return k;
}

double field_norm(const ComplexField1D& field) {
  double s = 0.0;
  for (const auto& v : field.values) s += std::norm(v);
  return s * field.grid.dx();
}

double l2_distance(const ComplexField1D& a, const ComplexField1D& b) {
  if (!(a.grid == b.grid)) throw ConfigError("l2_distance: fields live on different grids");
  double s = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) s += std::norm(a.values[j] - b.values[j]);
  return std::sqrt(s * a.grid.dx());
}

BeamDiagnostics beam_diagnostics(const ComplexField1D& field) {
  const auto& g = field.grid;
  double s0 = 0.0, s1 = 0.0;
  double peak = -1.0;
  std::size_t peak_index = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double p = std::norm(field.values[j]);
    s0 += p;
    s1 += p * g.x(j);
    if (p > peak) {
      peak = p;
      peak_index = j;
    }
  }
  if (!(s0 > 0.0)) throw UndefinedCentroidError("beam_diagnostics: field carries no power");
  BeamDiagnostics d;
  d.centroid = s1 / s0;
  double s2 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double u = g.x(j) - d.centroid;
    s2 += std::norm(field.values[j]) * u * u;
  }
  d.rms_width = std::sqrt(s2 / s0);
  d.norm = s0 * g.dx();
  d.peak_position = g.x(peak_index);
  return d;
}

ComplexField1D make_gaussian(const TransverseGrid& grid, double a, double b) {
  if (!(b > 0.0)) throw ConfigError("make_gaussian: width b > 0 violated");
  if (b < 4.0 * grid.dx()) {
    std::ostringstream os;
    os << "make_gaussian: width b = " << b << " under-resolved (b < 4 dx = " << 4.0 * grid.dx()
       << ")";
    throw ResolutionError(os.str());
  }
  ComplexField1D f(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double u = (grid.x(j) - a) / b;
    f.values[j] = std::exp(-u * u);
  }
  const double scale = 1.0 / std::sqrt(field_norm(f));
  for (auto& v : f.values) v *= scale;
  return f;
}

double edge_fraction(const ComplexField1D& field) {
  const auto& v = field.values;
  double peak = 0.0;
  for (const auto& x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return 0.0;
  const std::size_t n = v.size();
  const double edge = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[n - 2]),
                                std::abs(v[n - 1])});
  return edge / peak;
}

}  // namespace cpo
