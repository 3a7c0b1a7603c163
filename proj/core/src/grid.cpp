#include "alcs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace alcs {

Grid2D::Grid2D(int n, double length) : n_(n), length_(length) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid: N must be a power of two >= 8 (got " + std::to_string(n) +
                                ")");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid: L must be finite and > 0");
}

double Grid2D::xi_unit() const { return 2.0 * std::numbers::pi / length_; }

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

double inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid, g.grid, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < f.v.size(); ++i) s += f.v[i] * g.v[i];
  return s * f.grid.cell();
}

double inner(const QTensorField& a, const QTensorField& b) {
  return 2.0 * (inner(a.q11, b.q11) + inner(a.q12, b.q12));
}

double inner(const VelocityField& a, const VelocityField& b) {
  return inner(a.x, b.x) + inner(a.y, b.y);
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace alcs
