#include "alcs/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alcs {

QTensor QTensor::two(double q11, double q12) {
  QTensor q;
  q.d = 2;
  q.c = {q11, q12, 0.0, 0.0, 0.0};
  return q;
}

QTensor QTensor::three(double q11, double q12, double q13, double q22, double q23) {
  QTensor q;
  q.d = 3;
  q.c = {q11, q12, q13, q22, q23};
  return q;
}

SquareMatrix full_matrix(const QTensor& q) {
  SquareMatrix x;
  x.d = q.d;
  if (q.d == 2) {
    x(0, 0) = q.c[0];
    x(0, 1) = q.c[1];
    x(1, 0) = q.c[1];
    x(1, 1) = -q.c[0];
    return x;
  }
  x(0, 0) = q.c[0];
  x(0, 1) = x(1, 0) = q.c[1];
  x(0, 2) = x(2, 0) = q.c[2];
  x(1, 1) = q.c[3];
  x(1, 2) = x(2, 1) = q.c[4];
  x(2, 2) = -(q.c[0] + q.c[3]);
  return x;
}

SquareMatrix matmul(const SquareMatrix& x, const SquareMatrix& y) {
  SquareMatrix z;
  z.d = x.d;
  for (int i = 0; i < x.d; ++i)
    for (int j = 0; j < x.d; ++j) {
      double s = 0.0;
      for (int k = 0; k < x.d; ++k) s += x(i, k) * y(k, j);
      z(i, j) = s;
    }
  return z;
}

double trace(const SquareMatrix& x) {
  double s = 0.0;
  for (int i = 0; i < x.d; ++i) s += x(i, i);
  return s;
}

double frobenius(const SquareMatrix& x, const SquareMatrix& y) {
  double s = 0.0;
  for (int i = 0; i < x.d; ++i)
    for (int j = 0; j < x.d; ++j) s += x(i, j) * y(i, j);
  return s;
}

namespace {

double tr2_of(const QTensor& q) {
  if (q.d == 2) return 2.0 * (q.c[0] * q.c[0] + q.c[1] * q.c[1]);
  const double q33 = -(q.c[0] + q.c[3]);
  return q.c[0] * q.c[0] + q.c[3] * q.c[3] + q33 * q33 +
         2.0 * (q.c[1] * q.c[1] + q.c[2] * q.c[2] + q.c[4] * q.c[4]);
}

}  // namespace

TracePowers trace_powers(const QTensor& q) {
  TracePowers t;
  t.tr2 = tr2_of(q);
  t.norm4 = t.tr2 * t.tr2;
  if (q.d == 3) {
    const SquareMatrix x = full_matrix(q);
    t.tr3 = trace(matmul(matmul(x, x), x));
  }
  return t;
}

QTensor molecular_field(const QTensor& q, const QTensor& lap_q, const ModelParams& p) {
  if (q.d != lap_q.d) throw std::invalid_argument("molecular_field: dimension mismatch");
  const double tr2 = tr2_of(q);
  QTensor h;
  h.d = q.d;
  for (int i = 0; i < q.size(); ++i)
    h.c[i] = lap_q.c[i] - p.a * q.c[i] - p.c * q.c[i] * tr2;
  if (q.d == 3 && p.b != 0.0) {
    // Q^2 - tr(Q^2)/3 I on the independent components.
    const SquareMatrix x = full_matrix(q);
    const SquareMatrix x2 = matmul(x, x);
    const double third = tr2 / 3.0;
    h.c[0] += p.b * (x2(0, 0) - third);
    h.c[1] += p.b * x2(0, 1);
    h.c[2] += p.b * x2(0, 2);
    h.c[3] += p.b * (x2(1, 1) - third);
    h.c[4] += p.b * x2(1, 2);
  }
  return h;
}

SquareMatrix molecular_field_full(const SquareMatrix& q, const SquareMatrix& lap_q,
                                  const ModelParams& p) {
  if (q.d != lap_q.d) throw std::invalid_argument("molecular_field_full: dimension mismatch");
  const SquareMatrix q2 = matmul(q, q);
  const double tr2 = trace(q2);
  SquareMatrix h;
  h.d = q.d;
  for (int i = 0; i < q.d; ++i)
    for (int j = 0; j < q.d; ++j) {
      const double id = i == j ? 1.0 : 0.0;
      h(i, j) = lap_q(i, j) - p.a * q(i, j) + p.b * (q2(i, j) - tr2 / q.d * id) -
                p.c * q(i, j) * tr2;
    }
  return h;
}

double bulk_energy_density(const QTensor& q, const ModelParams& p) {
  const TracePowers t = trace_powers(q);
  return 0.5 * p.a * t.tr2 - p.b / 3.0 * t.tr3 + 0.25 * p.c * t.norm4;
}

CubicBoundCheck trace_cubic_bound_check(const QTensor& q, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("trace_cubic_bound_check: eps must be > 0");
  const TracePowers t = trace_powers(q);
  CubicBoundCheck r;
  r.lhs = t.tr3;
  r.rhs = 0.25 * eps * t.tr2 * t.tr2 + t.tr2 / eps;
  r.holds = r.lhs <= r.rhs;
  return r;
}

double coercivity_shift(const ModelParams& p) {
  if (!(p.c > 0.0)) throw std::invalid_argument("coercivity_shift: c must be > 0");
  // Applying the cubic bound to Q and -Q gives |b tr(Q^3)| <= |b|((e/4) r^4 + r^2/e), r^2 =
  // tr(Q^2). The surrogate then needs M/2 + a/2 - |b|/(3e) >= 0 and c/8 - |b|e/12 >= 0.
  // The smallest M is reached at the largest admissible e = 3c/(2|b|).
  const double ab = std::abs(p.b);
  const double m = ab > 0.0 ? -p.a + 4.0 * ab * ab / (9.0 * p.c) : -p.a;
  return std::max(0.0, m);
}

}  // namespace alcs
