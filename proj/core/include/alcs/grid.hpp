#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace alcs {

using Complex = std::complex<double>;

/// Uniform periodic N x N grid on [0, L)^2.
///
/// Physical values are row-major with row index along y and column index along x:
/// f(x_j, y_i) sits at i * N + j. Spectral values use the real-to-complex half layout
/// N x (N/2 + 1): the row index carries ky, the column index carries kx >= 0.
class Grid2D {
 public:
  /// Throws std::invalid_argument unless n >= 8 is a power of two and length > 0.
  Grid2D(int n = 64, double length = 6.283185307179586);

  int n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / n_; }
  double area() const { return length_ * length_; }
  /// Trapezoidal quadrature weight of one grid point.
  double cell() const { return dx() * dx(); }
  /// 2 pi / L, the physical wavenumber of k = 1.
  double xi_unit() const;

  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  int nkx() const { return n_ / 2 + 1; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * nkx(); }

  /// Signed integer wavenumber of spectral row i.
  int ky(int row) const { return row <= n_ / 2 ? row : row - n_; }
  /// Largest integer wavenumber kept by the two-thirds rule.
  int dealias_cutoff() const { return n_ / 3; }

  bool operator==(const Grid2D& o) const { return n_ == o.n_ && length_ == o.length_; }
  bool operator!=(const Grid2D& o) const { return !(*this == o); }

 private:
  int n_;
  double length_;
};

/// Throws std::invalid_argument("<what>: grid mismatch") when the grids differ.
void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what);

struct ScalarField {
  Grid2D grid;
  std::vector<double> v;

  ScalarField() : grid(), v(grid.size(), 0.0) {}
  explicit ScalarField(const Grid2D& g, double value = 0.0) : grid(g), v(g.size(), value) {}

  double& operator()(int row, int col) { return v[static_cast<std::size_t>(row) * grid.n() + col]; }
  double operator()(int row, int col) const {
    return v[static_cast<std::size_t>(row) * grid.n() + col];
  }
};

struct SpectralField {
  Grid2D grid;
  std::vector<Complex> c;

  SpectralField() : grid(), c(grid.spectral_size()) {}
  explicit SpectralField(const Grid2D& g) : grid(g), c(g.spectral_size()) {}
};

/// Traceless symmetric 2D tensor field: q22 = -q11, q21 = q12.
struct QTensorField {
  ScalarField q11;
  ScalarField q12;

  QTensorField() = default;
  explicit QTensorField(const Grid2D& g) : q11(g), q12(g) {}
  const Grid2D& grid() const { return q11.grid; }
};

struct VelocityField {
  ScalarField x;
  ScalarField y;

  VelocityField() = default;
  explicit VelocityField(const Grid2D& g) : x(g), y(g) {}
  const Grid2D& grid() const { return x.grid; }
};

/// Trapezoidal inner product (f, g) = int f g dx.
double inner(const ScalarField& f, const ScalarField& g);
/// Trapezoidal (A, B) = int A:B over full 2x2 matrices.
double inner(const QTensorField& a, const QTensorField& b);
double inner(const VelocityField& a, const VelocityField& b);
double max_abs(const ScalarField& f);

}  // namespace alcs
