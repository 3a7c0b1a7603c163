#include "alcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace alcs {

namespace {

constexpr Complex kI{0.0, 1.0};

// Pointwise kernels shared by the assembler and the standalone operators.

// (Q Omega - Omega Q) for Q = [[q11, q12], [q12, -q11]], Omega = [[0, w], [-w, 0]].
inline void corotation_kernel(double q11, double q12, double w, double& r11, double& r12) {
  r11 = -2.0 * q12 * w;
  r12 = 2.0 * q11 * w;
}

// (Q P - P Q)_12 for traceless symmetric Q, P; the (2,1) entry is its negative.
inline double commutator12(double q11, double q12, double p11, double p12) {
  return 2.0 * (q11 * p12 - q12 * p11);
}

bool all_finite(const SpectralField& f) {
  for (const Complex& z : f.c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

enum Buf : int {
  Q11, Q12, Q11X, Q11Y, Q12X, Q12Y, L11, L12,
  UX, UY, UXX, UXY, UYX, UYY,
  VX, VY, VXX, VXY, VYX, VYY,
  HB11, HB12, H11, H12, NQ11, NQ12,
  SXX, SXY, SYX, SYY, AX, AY, GX, GY,
  kBufCount
};

}  // namespace

SpectralState to_spectral(SpectralContext& ctx, const StateFields& s) {
  SpectralState r;
  r.t = s.t;
  r.q11 = ctx.forward(s.q.q11);
  r.q12 = ctx.forward(s.q.q12);
  r.ux = ctx.forward(s.u.x);
  r.uy = ctx.forward(s.u.y);
  return r;
}

StateFields to_physical(SpectralContext& ctx, const SpectralState& s) {
  StateFields r;
  r.t = s.t;
  r.q.q11 = ctx.inverse(s.q11);
  r.q.q12 = ctx.inverse(s.q12);
  r.u.x = ctx.inverse(s.ux);
  r.u.y = ctx.inverse(s.uy);
  return r;
}

StrainVorticity strain_vorticity(SpectralContext& ctx, const VelocityField& u) {
  const auto gx = gradient(ctx, u.x);
  const auto gy = gradient(ctx, u.y);
  const Grid2D& g = u.grid();
  StrainVorticity r{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};
  for (std::size_t i = 0; i < g.size(); ++i) {
    r.d11.v[i] = gx[0].v[i];
    r.d22.v[i] = gy[1].v[i];
    r.d12.v[i] = 0.5 * (gx[1].v[i] + gy[0].v[i]);
    r.w12.v[i] = 0.5 * (gx[1].v[i] - gy[0].v[i]);
  }
  return r;
}

RhsAssembler::RhsAssembler(SpectralContext& ctx, const ModelParams& p, RhsOptions opt)
    : ctx_(ctx), p_(p), opt_(opt) {
  p_.validate();
  const Wavenumbers& wn = ctx_.wn();
  if (p_.mode != Mode::direct && p_.eps > 0.0) moll_ = mollifier_symbol(wn, p_.eps);
  if (p_.mode == Mode::friedrichs) jn_ = jn_mask(wn, p_.n_trunc, p_.keep_mean);
  buf_.assign(kBufCount, std::vector<double>(wn.grid.size()));
  spec_.resize(wn.size());
  acc_x_.resize(wn.size());
  acc_y_.resize(wn.size());
}

void RhsAssembler::regularize_initial(SpectralState& s) const {
  const Wavenumbers& wn = ctx_.wn();
  leray_project(wn, s.ux, s.uy);
  for (SpectralField* f : {&s.q11, &s.q12, &s.ux, &s.uy}) {
    if (!moll_.empty()) apply_multiplier(moll_, *f);
    if (!jn_.empty()) apply_multiplier(jn_, *f);
  }
}

void RhsAssembler::load(const SpectralState& s) {
  require_same_grid(s.grid(), ctx_.grid(), "rhs");
  const Wavenumbers& wn = ctx_.wn();
  const std::size_t m = wn.size();
  auto plain = [&](const SpectralField& f, int b) { ctx_.inverse(f.c.data(), buf_[b].data()); };
  auto deriv = [&](const SpectralField& f, const std::vector<double>& sym, int b,
                   const std::vector<double>* r) {
    for (std::size_t i = 0; i < m; ++i) spec_[i] = kI * sym[i] * (r ? (*r)[i] : 1.0) * f.c[i];
    ctx_.inverse(spec_.data(), buf_[b].data());
  };
  auto lap = [&](const SpectralField& f, int b) {
    for (std::size_t i = 0; i < m; ++i) spec_[i] = -wn.xi2[i] * f.c[i];
    ctx_.inverse(spec_.data(), buf_[b].data());
  };
  plain(s.q11, Q11);
  plain(s.q12, Q12);
  deriv(s.q11, wn.dx, Q11X, nullptr);
  deriv(s.q11, wn.dy, Q11Y, nullptr);
  deriv(s.q12, wn.dx, Q12X, nullptr);
  deriv(s.q12, wn.dy, Q12Y, nullptr);
  lap(s.q11, L11);
  lap(s.q12, L12);
  plain(s.ux, UX);
  plain(s.uy, UY);
  deriv(s.ux, wn.dx, UXX, nullptr);
  deriv(s.ux, wn.dy, UXY, nullptr);
  deriv(s.uy, wn.dx, UYX, nullptr);
  deriv(s.uy, wn.dy, UYY, nullptr);
  if (!moll_.empty()) {
    for (std::size_t i = 0; i < m; ++i) spec_[i] = moll_[i] * s.ux.c[i];
    ctx_.inverse(spec_.data(), buf_[VX].data());
    for (std::size_t i = 0; i < m; ++i) spec_[i] = moll_[i] * s.uy.c[i];
    ctx_.inverse(spec_.data(), buf_[VY].data());
    deriv(s.ux, wn.dx, VXX, &moll_);
    deriv(s.ux, wn.dy, VXY, &moll_);
    deriv(s.uy, wn.dx, VYX, &moll_);
    deriv(s.uy, wn.dy, VYY, &moll_);
  } else {
    for (int b : {VX, VY, VXX, VXY, VYX, VYY}) buf_[b] = buf_[b - (VX - UX)];
  }
}

void RhsAssembler::assemble(SpectralRhs& out, bool eps_only) {
  const Wavenumbers& wn = ctx_.wn();
  const std::size_t n = wn.grid.size();
  const std::size_t m = wn.size();
  auto& B = buf_;
  const double a = p_.a, c = p_.c, lam = p_.lambda, gam = p_.gamma, eps = p_.eps;
  const bool eps_on = has_eps_terms();

  // Forward transform with two-thirds dealiasing.
  auto fwd = [&](int b, Complex* dst) {
    ctx_.forward(B[b].data(), dst);
    for (std::size_t i = 0; i < m; ++i) dst[i] *= wn.dealias[i];
  };

  if (!eps_only) {
    for (std::size_t i = 0; i < n; ++i) {
      const double q11 = B[Q11][i], q12 = B[Q12][i];
      const double tr2 = 2.0 * (q11 * q11 + q12 * q12);
      B[HB11][i] = -a * q11 - c * q11 * tr2;
      B[HB12][i] = -a * q12 - c * q12 * tr2;
    }
    // H = lap Q + P_d hb (then J_n in friedrichs mode): the molecular field paired with both
    // stresses is exactly the one the Q equation relaxes along.
    for (int k = 0; k < 2; ++k) {
      fwd(HB11 + k, spec_.data());
      if (!jn_.empty())
        for (std::size_t i = 0; i < m; ++i) spec_[i] *= jn_[i];
      ctx_.inverse(spec_.data(), B[H11 + k].data());
      for (std::size_t i = 0; i < n; ++i) B[H11 + k][i] += B[L11 + k][i];
    }
    const double sign = opt_.stress_sign;
    for (std::size_t i = 0; i < n; ++i) {
      const double q11 = B[Q11][i], q12 = B[Q12][i];
      const double nq = std::sqrt(2.0 * (q11 * q11 + q12 * q12));
      const double vx = B[VX][i], vy = B[VY][i];
      const double vxx = B[VXX][i], vxy = B[VXY][i], vyx = B[VYX][i], vyy = B[VYY][i];
      const double w = 0.5 * (vxy - vyx);
      const double d11 = 0.5 * (vxx - vyy), d12 = 0.5 * (vxy + vyx);
      const double q11x = B[Q11X][i], q11y = B[Q11Y][i], q12x = B[Q12X][i], q12y = B[Q12Y][i];
      const double adv11 = vx * q11x + vy * q11y;
      const double adv12 = vx * q12x + vy * q12y;
      double r11, r12;
      corotation_kernel(q11, q12, w, r11, r12);
      B[NQ11][i] = -adv11 - r11 + lam * nq * d11 + gam * B[HB11][i];
      B[NQ12][i] = -adv12 - r12 + lam * nq * d12 + gam * B[HB12][i];

      const double exx = 2.0 * (q11x * q11x + q12x * q12x);
      const double exy = 2.0 * (q11x * q11y + q12x * q12y);
      const double eyy = 2.0 * (q11y * q11y + q12y * q12y);
      const double l11 = lam * nq * B[H11][i], l12 = lam * nq * B[H12][i];
      const double an = sign * commutator12(q11, q12, B[H11][i], B[H12][i]);
      B[SXX][i] = -exx - l11;
      B[SYY][i] = -eyy + l11;
      B[SXY][i] = -exy - l12 + an;
      B[SYX][i] = -exy - l12 - an;
      B[AX][i] = vx * B[UXX][i] + vy * B[UXY][i];
      B[AY][i] = vx * B[UYX][i] + vy * B[UYY][i];
    }
  } else {
    for (int b : {SXX, SXY, SYX, SYY}) std::fill(B[b].begin(), B[b].end(), 0.0);
  }

  if (eps_on) {
    for (std::size_t i = 0; i < n; ++i) {
      const double vx = B[VX][i], vy = B[VY][i];
      const double q11x = B[Q11X][i], q11y = B[Q11Y][i], q12x = B[Q12X][i], q12y = B[Q12Y][i];
      const double w11 = vx * q11x + vy * q11y;
      const double w12 = vx * q12x + vy * q12y;
      const double wn_ = std::sqrt(2.0 * (w11 * w11 + w12 * w12));
      B[GX][i] = 2.0 * (q11x * w11 + q12x * w12) * wn_;
      B[GY][i] = 2.0 * (q11y * w11 + q12y * w12) * wn_;
      const double vxx = B[VXX][i], vxy = B[VXY][i], vyx = B[VYX][i], vyy = B[VYY][i];
      const double g2 = vxx * vxx + vxy * vxy + vyx * vyx + vyy * vyy;
      B[SXX][i] += eps * vxx * g2;
      B[SXY][i] += eps * vxy * g2;
      B[SYX][i] += eps * vyx * g2;
      B[SYY][i] += eps * vyy * g2;
    }
  }

  // Q equation.
  if (!eps_only) {
    fwd(NQ11, out.q11.c.data());
    fwd(NQ12, out.q12.c.data());
    if (!jn_.empty()) {
      apply_multiplier(jn_, out.q11);
      apply_multiplier(jn_, out.q12);
    }
  }

  // Momentum: divergence of the stress, active term, advection and the non-divergence eps-term.
  std::fill(acc_x_.begin(), acc_x_.end(), Complex{});
  std::fill(acc_y_.begin(), acc_y_.end(), Complex{});
  fwd(SXX, spec_.data());
  for (std::size_t i = 0; i < m; ++i) acc_x_[i] += kI * wn.dx[i] * spec_[i];
  fwd(SXY, spec_.data());
  for (std::size_t i = 0; i < m; ++i) acc_x_[i] += kI * wn.dy[i] * spec_[i];
  fwd(SYX, spec_.data());
  for (std::size_t i = 0; i < m; ++i) acc_y_[i] += kI * wn.dx[i] * spec_[i];
  fwd(SYY, spec_.data());
  for (std::size_t i = 0; i < m; ++i) acc_y_[i] += kI * wn.dy[i] * spec_[i];
  if (eps_on) {
    fwd(GX, spec_.data());
    for (std::size_t i = 0; i < m; ++i) acc_x_[i] -= eps * spec_[i];
    fwd(GY, spec_.data());
    for (std::size_t i = 0; i < m; ++i) acc_y_[i] -= eps * spec_[i];
  }
  if (!eps_only && p_.kappa != 0.0) {
    const double k = p_.kappa;
    for (std::size_t i = 0; i < m; ++i) {
      // (div Q)_x = d_x q11 + d_y q12, (div Q)_y = d_x q12 - d_y q11.
      acc_x_[i] += k * kI * (wn.dx[i] * cur_q11_[i] + wn.dy[i] * cur_q12_[i]);
      acc_y_[i] += k * kI * (wn.dx[i] * cur_q12_[i] - wn.dy[i] * cur_q11_[i]);
    }
  }
  if (!moll_.empty())
    for (std::size_t i = 0; i < m; ++i) {
      acc_x_[i] *= moll_[i];
      acc_y_[i] *= moll_[i];
    }
  if (!eps_only) {
    fwd(AX, spec_.data());
    for (std::size_t i = 0; i < m; ++i) acc_x_[i] -= spec_[i];
    fwd(AY, spec_.data());
    for (std::size_t i = 0; i < m; ++i) acc_y_[i] -= spec_[i];
  }
  std::copy(acc_x_.begin(), acc_x_.end(), out.ux.c.begin());
  std::copy(acc_y_.begin(), acc_y_.end(), out.uy.c.begin());
  leray_project(wn, out.ux, out.uy);
  if (!jn_.empty()) {
    apply_multiplier(jn_, out.ux);
    apply_multiplier(jn_, out.uy);
  }
}

void RhsAssembler::nonlinear(const SpectralState& s, SpectralRhs& out) {
  load(s);
  cur_q11_ = s.q11.c.data();
  cur_q12_ = s.q12.c.data();
  for (SpectralField* f : {&out.q11, &out.q12, &out.ux, &out.uy})
    if (f->grid != ctx_.grid() || f->c.size() != ctx_.wn().size()) *f = SpectralField(ctx_.grid());
  assemble(out, false);
  for (const SpectralField* f : {&out.q11, &out.q12, &out.ux, &out.uy})
    if (!all_finite(*f)) throw BlowUpError("non-finite value in right-hand side at t = " +
                                           std::to_string(s.t));
}

void RhsAssembler::full(const SpectralState& s, SpectralRhs& out) {
  nonlinear(s, out);
  const Wavenumbers& wn = ctx_.wn();
  for (std::size_t i = 0; i < wn.size(); ++i) {
    out.q11.c[i] -= p_.gamma * wn.xi2[i] * s.q11.c[i];
    out.q12.c[i] -= p_.gamma * wn.xi2[i] * s.q12.c[i];
    out.ux.c[i] -= p_.mu * wn.xi2[i] * s.ux.c[i];
    out.uy.c[i] -= p_.mu * wn.xi2[i] * s.uy.c[i];
  }
}

void RhsAssembler::eps_terms(const SpectralState& s, SpectralField& ex, SpectralField& ey) {
  ex = SpectralField(ctx_.grid());
  ey = SpectralField(ctx_.grid());
  if (!has_eps_terms()) return;
  load(s);
  cur_q11_ = s.q11.c.data();
  cur_q12_ = s.q12.c.data();
  SpectralRhs tmp(ctx_.grid());
  assemble(tmp, true);
  ex = std::move(tmp.ux);
  ey = std::move(tmp.uy);
}

QTensorField molecular_field(SpectralContext& ctx, const QTensorField& q, const ModelParams& p) {
  QTensorField h(q.grid());
  const ScalarField l11 = laplacian(ctx, q.q11);
  const ScalarField l12 = laplacian(ctx, q.q12);
  for (std::size_t i = 0; i < q.grid().size(); ++i) {
    const double q11 = q.q11.v[i], q12 = q.q12.v[i];
    const double tr2 = 2.0 * (q11 * q11 + q12 * q12);
    h.q11.v[i] = l11.v[i] - p.a * q11 - p.c * q11 * tr2;
    h.q12.v[i] = l12.v[i] - p.a * q12 - p.c * q12 * tr2;
  }
  return h;
}

QTensorField corotation(const QTensorField& q, const ScalarField& w12) {
  require_same_grid(q.grid(), w12.grid, "corotation");
  QTensorField r(q.grid());
  for (std::size_t i = 0; i < w12.v.size(); ++i)
    corotation_kernel(q.q11.v[i], q.q12.v[i], w12.v[i], r.q11.v[i], r.q12.v[i]);
  return r;
}

namespace {

// div of a full 2x2 tensor field given by its entries, dealiased before differentiation.
VelocityField tensor_divergence(SpectralContext& ctx, const ScalarField& sxx, const ScalarField& sxy,
                                const ScalarField& syx, const ScalarField& syy) {
  const Wavenumbers& wn = ctx.wn();
  SpectralField a = ctx.forward(sxx), b = ctx.forward(sxy), c = ctx.forward(syx),
                d = ctx.forward(syy);
  for (SpectralField* f : {&a, &b, &c, &d}) dealias(wn, *f);
  SpectralField rx(ctx.grid()), ry(ctx.grid());
  for (std::size_t i = 0; i < wn.size(); ++i) {
    rx.c[i] = kI * (wn.dx[i] * a.c[i] + wn.dy[i] * b.c[i]);
    ry.c[i] = kI * (wn.dx[i] * c.c[i] + wn.dy[i] * d.c[i]);
  }
  VelocityField r;
  r.x = ctx.inverse(rx);
  r.y = ctx.inverse(ry);
  return r;
}

}  // namespace

VelocityField antisymmetric_stress_divergence(SpectralContext& ctx, const QTensorField& qp,
                                              const QTensorField& lap_q, double sign) {
  require_same_grid(qp.grid(), lap_q.grid(), "antisymmetric_stress_divergence");
  const Grid2D& g = qp.grid();
  ScalarField zero(g), axy(g), ayx(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    axy.v[i] = sign * commutator12(qp.q11.v[i], qp.q12.v[i], lap_q.q11.v[i], lap_q.q12.v[i]);
    ayx.v[i] = -axy.v[i];
  }
  return tensor_divergence(ctx, zero, axy, ayx, zero);
}

VelocityField elastic_stress_divergence(SpectralContext& ctx, const QTensorField& q) {
  const auto g11 = gradient(ctx, q.q11);
  const auto g12 = gradient(ctx, q.q12);
  const Grid2D& g = q.grid();
  ScalarField exx(g), exy(g), eyy(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    exx.v[i] = 2.0 * (g11[0].v[i] * g11[0].v[i] + g12[0].v[i] * g12[0].v[i]);
    exy.v[i] = 2.0 * (g11[0].v[i] * g11[1].v[i] + g12[0].v[i] * g12[1].v[i]);
    eyy.v[i] = 2.0 * (g11[1].v[i] * g11[1].v[i] + g12[1].v[i] * g12[1].v[i]);
  }
  return tensor_divergence(ctx, exx, exy, exy, eyy);
}

QTensorField q_rhs(SpectralContext& ctx, const StateFields& s, const ModelParams& p) {
  RhsAssembler rhs(ctx, p);
  SpectralRhs out(ctx.grid());
  rhs.full(to_spectral(ctx, s), out);
  QTensorField r;
  r.q11 = ctx.inverse(out.q11);
  r.q12 = ctx.inverse(out.q12);
  return r;
}

VelocityField u_rhs(SpectralContext& ctx, const StateFields& s, const ModelParams& p) {
  RhsAssembler rhs(ctx, p);
  SpectralRhs out(ctx.grid());
  rhs.full(to_spectral(ctx, s), out);
  VelocityField r;
  r.x = ctx.inverse(out.ux);
  r.y = ctx.inverse(out.uy);
  return r;
}

VelocityField eps_terms(SpectralContext& ctx, const StateFields& s, const ModelParams& p) {
  RhsAssembler rhs(ctx, p);
  SpectralField ex, ey;
  rhs.eps_terms(to_spectral(ctx, s), ex, ey);
  VelocityField r;
  r.x = ctx.inverse(ex);
  r.y = ctx.inverse(ey);
  return r;
}

RhsFields assemble_rhs(SpectralContext& ctx, const StateFields& s, const ModelParams& p) {
  RhsAssembler rhs(ctx, p);
  SpectralRhs out(ctx.grid());
  rhs.full(to_spectral(ctx, s), out);
  RhsFields r;
  r.dq.q11 = ctx.inverse(out.q11);
  r.dq.q12 = ctx.inverse(out.q12);
  r.du.x = ctx.inverse(out.ux);
  r.du.y = ctx.inverse(out.uy);
  return r;
}

}  // namespace alcs
