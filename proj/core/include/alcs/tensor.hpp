#pragma once

#include <array>

#include "alcs/params.hpp"

namespace alcs {

/// Symmetric traceless d x d tensor stored by its independent components.
///
/// 2D: (q11, q12), with q22 = -q11.
/// 3D: (q11, q12, q13, q22, q23), with q33 = -q11 - q22.
struct QTensor {
  int d = 2;
  std::array<double, 5> c{};

  static QTensor two(double q11, double q12);
  static QTensor three(double q11, double q12, double q13, double q22, double q23);

  int size() const { return d == 2 ? 2 : 5; }
};

/// Dense d x d matrix (d <= 3), row-major in a fixed 3 x 3 buffer.
struct SquareMatrix {
  int d = 2;
  std::array<double, 9> m{};

  double& operator()(int i, int j) { return m[3 * i + j]; }
  double operator()(int i, int j) const { return m[3 * i + j]; }
};

SquareMatrix full_matrix(const QTensor& q);
SquareMatrix matmul(const SquareMatrix& x, const SquareMatrix& y);
double trace(const SquareMatrix& x);
/// Frobenius inner product sum_ij x_ij y_ij.
double frobenius(const SquareMatrix& x, const SquareMatrix& y);

struct TracePowers {
  double tr2 = 0.0;    ///< tr(Q^2) = |Q|^2
  double tr3 = 0.0;    ///< tr(Q^3)
  double norm4 = 0.0;  ///< |Q|^4
};

/// In 2D tr(Q^3) is returned as exactly zero (eigenvalues come in a +-x pair).
TracePowers trace_powers(const QTensor& q);

/// H = lap_q - aQ + b(Q^2 - tr(Q^2)/d I) - cQ tr(Q^2). Throws std::invalid_argument on
/// dimension mismatch.
QTensor molecular_field(const QTensor& q, const QTensor& lap_q, const ModelParams& p);

/// Same formula evaluated with dense matrix products, no symmetry or trace assumed.
SquareMatrix molecular_field_full(const SquareMatrix& q, const SquareMatrix& lap_q,
                                  const ModelParams& p);

/// (a/2)|Q|^2 - (b/3)tr(Q^3) + (c/4)|Q|^4.
double bulk_energy_density(const QTensor& q, const ModelParams& p);

struct CubicBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// tr(Q^3) <= (eps/4) tr(Q^2)^2 + tr(Q^2)/eps. Throws std::invalid_argument for eps <= 0.
CubicBoundCheck trace_cubic_bound_check(const QTensor& q, double eps);

/// Smallest M >= 0 obtainable from the cubic bound such that
/// (M + a/2)|Q|^2 - (b/3)tr(Q^3) + (c/4)|Q|^4 >= (M/2)|Q|^2 + (c/8)|Q|^4.
/// Throws std::invalid_argument for c <= 0.
double coercivity_shift(const ModelParams& p);

}  // namespace alcs
