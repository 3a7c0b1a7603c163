#include "alcs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alcs {

namespace {

constexpr Complex kI{0.0, 1.0};

double grad2(const Wavenumbers& wn, std::size_t i) { return wn.dx[i] * wn.dx[i] + wn.dy[i] * wn.dy[i]; }

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const std::size_t n = x.size();
  if (n == 0) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.r2 = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

// Smallest (c, rate >= 0) with y <= c e^{rate t} y0, rate from a log-linear fit.
void exp_cover(const std::vector<double>& t, const std::vector<double>& y, double y0, double& c,
               double& rate) {
  c = 0.0;
  rate = 0.0;
  if (y0 <= 0.0) return;
  std::vector<double> xs, ls;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (y[i] > 0.0) {
      xs.push_back(t[i]);
      ls.push_back(std::log(y[i] / y0));
    }
  if (xs.size() >= 2) rate = std::max(0.0, least_squares(xs, ls).slope);
  for (std::size_t i = 0; i < t.size(); ++i) c = std::max(c, y[i] * std::exp(-rate * t[i]) / y0);
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  std::vector<double> r(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i)
    r[i] = r[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return r;
}

}  // namespace

EnergyEvaluator::EnergyEvaluator(SpectralContext& ctx, const ModelParams& p, double s_exponent)
    : ctx_(ctx), p_(p) {
  const Wavenumbers& wn = ctx_.wn();
  if (p_.mode != Mode::direct && p_.eps > 0.0) moll_ = mollifier_symbol(wn, p_.eps);
  if (p_.mode == Mode::friedrichs) jn_ = jn_mask(wn, p_.n_trunc, p_.keep_mean);
  hs_w_ = build_partition(wn.grid).hs_weight(s_exponent);
  const std::size_t n = wn.grid.size();
  for (auto* v : {&q11_, &q12_, &f1_, &f2_, &vx_, &vy_}) v->resize(n);
  for (int k = 0; k < 4; ++k) {
    g_[k].resize(n);
    gq_[k].resize(n);
  }
  spec_.resize(wn.size());
}

EnergyRecord EnergyEvaluator::operator()(const SpectralState& s) {
  require_same_grid(s.grid(), ctx_.grid(), "energy");
  const Wavenumbers& wn = ctx_.wn();
  const Grid2D& g = wn.grid;
  const std::size_t n = g.size(), m = wn.size();
  const double area = g.area(), cell = g.cell();
  EnergyRecord r;
  r.t = s.t;

  double u2 = 0.0, gu2 = 0.0, gq2 = 0.0, lq2 = 0.0, phi = 0.0, act = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double w = wn.weight[i];
    const double uu = std::norm(s.ux.c[i]) + std::norm(s.uy.c[i]);
    const double qq = 2.0 * (std::norm(s.q11.c[i]) + std::norm(s.q12.c[i]));
    const double k2 = grad2(wn, i);
    u2 += w * uu;
    gu2 += w * k2 * uu;
    gq2 += w * k2 * qq;
    lq2 += w * wn.xi2[i] * wn.xi2[i] * qq;
    phi += w * hs_w_[i] * (k2 * qq + uu);
    const double rm = moll_.empty() ? 1.0 : moll_[i];
    const Complex dqx = kI * (wn.dx[i] * s.q11.c[i] + wn.dy[i] * s.q12.c[i]);
    const Complex dqy = kI * (wn.dx[i] * s.q12.c[i] - wn.dy[i] * s.q11.c[i]);
    act += w * rm * (std::conj(s.ux.c[i]) * dqx + std::conj(s.uy.c[i]) * dqy).real();
  }
  r.u_sq = u2 * area;
  r.grad_u_sq = gu2 * area;
  r.grad_q_sq = gq2 * area;
  r.lap_q_sq = lq2 * area;
  r.hs_phi = phi * area;
  r.activity = p_.kappa * act * area;

  ctx_.inverse(s.q11.c.data(), q11_.data());
  ctx_.inverse(s.q12.c.data(), q12_.data());
  double l2 = 0.0, l4 = 0.0, l6 = 0.0, bulk = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double q11 = q11_[i], q12 = q12_[i];
    const double tr2 = 2.0 * (q11 * q11 + q12 * q12);
    l2 += tr2;
    l4 += tr2 * tr2;
    l6 += tr2 * tr2 * tr2;
    bulk += 0.5 * p_.a * tr2 + 0.25 * p_.c * tr2 * tr2;
    f1_[i] = -p_.a * q11 - p_.c * q11 * tr2;
    f2_[i] = -p_.a * q12 - p_.c * q12 * tr2;
  }
  r.l2_Q = l2 * cell;
  r.l4_Q = l4 * cell;
  r.l6_Q = l6 * cell;
  r.bulk = bulk * cell;

  // Dissipation with the same dealiased (and truncated) molecular field the dynamics use.
  double h2 = 0.0;
  std::vector<Complex> h12(m);
  ctx_.forward(f1_.data(), spec_.data());
  ctx_.forward(f2_.data(), h12.data());
  for (std::size_t i = 0; i < m; ++i) {
    const double mask = wn.dealias[i] * (jn_.empty() ? 1.0 : jn_[i]);
    const Complex a = mask * spec_[i] - wn.xi2[i] * s.q11.c[i];
    const Complex b = mask * h12[i] - wn.xi2[i] * s.q12.c[i];
    h2 += wn.weight[i] * 2.0 * (std::norm(a) + std::norm(b));
  }
  r.diss_H = p_.gamma * h2 * area;
  r.diss_u = p_.mu * r.grad_u_sq;
  r.diss_lap = p_.gamma * r.lap_q_sq;
  r.kinetic = 0.5 * r.u_sq;
  r.elastic = 0.5 * r.grad_q_sq;
  r.E = r.kinetic + r.elastic + r.bulk;

  if (!moll_.empty()) {
    auto inv = [&](const SpectralField& f, const std::vector<double>* sym, const std::vector<double>& mult,
                   std::vector<double>& out) {
      for (std::size_t i = 0; i < m; ++i)
        spec_[i] = (sym ? kI * (*sym)[i] : Complex{1.0, 0.0}) * mult[i] * f.c[i];
      ctx_.inverse(spec_.data(), out.data());
    };
    const std::vector<double> one(m, 1.0);
    inv(s.ux, nullptr, moll_, vx_);
    inv(s.uy, nullptr, moll_, vy_);
    inv(s.ux, &wn.dx, moll_, g_[0]);
    inv(s.ux, &wn.dy, moll_, g_[1]);
    inv(s.uy, &wn.dx, moll_, g_[2]);
    inv(s.uy, &wn.dy, moll_, g_[3]);
    inv(s.q11, &wn.dx, one, gq_[0]);
    inv(s.q11, &wn.dy, one, gq_[1]);
    inv(s.q12, &wn.dx, one, gq_[2]);
    inv(s.q12, &wn.dy, one, gq_[3]);
    double cub = 0.0, quart = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w11 = vx_[i] * gq_[0][i] + vy_[i] * gq_[1][i];
      const double w12 = vx_[i] * gq_[2][i] + vy_[i] * gq_[3][i];
      const double ww = 2.0 * (w11 * w11 + w12 * w12);
      cub += ww * std::sqrt(ww);
      const double gg = g_[0][i] * g_[0][i] + g_[1][i] * g_[1][i] + g_[2][i] * g_[2][i] +
                        g_[3][i] * g_[3][i];
      quart += gg * gg;
    }
    r.eps_u_gradQ = p_.eps * cub * cell;
    r.eps_grad_u = p_.eps * quart * cell;
  }
  return r;
}

EnergyRecord energy(SpectralContext& ctx, const StateFields& s, const ModelParams& p, double s_exponent) {
  EnergyEvaluator ev(ctx, p, s_exponent);
  return ev(to_spectral(ctx, s));
}

double identity_residual(const EnergyRecord& r, double dEdt) {
  const double sum = dEdt + r.diss_u + r.diss_H - r.activity + r.eps_u_gradQ + r.eps_grad_u;
  const double scale = std::max({std::abs(dEdt), r.diss_u + r.diss_H, std::abs(r.activity), 1e-30});
  return std::abs(sum) / scale;
}

double centered_rate(double t0, double e0, double t1, double e1, double t2, double e2) {
  const double h1 = t1 - t0, h2 = t2 - t1;
  return -h2 / (h1 * (h1 + h2)) * e0 + (h2 - h1) / (h1 * h2) * e1 + h1 / (h2 * (h1 + h2)) * e2;
}

double one_sided_rate(double t0, double e0, double t1, double e1, double t2, double e2) {
  if (t2 == t1) return (e1 - e0) / (t1 - t0);
  // Derivative of the quadratic interpolant at t0.
  return e0 * (1.0 / (t0 - t1) + 1.0 / (t0 - t2)) + e1 * (t0 - t2) / ((t1 - t0) * (t1 - t2)) +
         e2 * (t0 - t1) / ((t2 - t0) * (t2 - t1));
}

double energy_identity(const EnergyRecord& prev, const EnergyRecord& cur, const EnergyRecord& next) {
  const double h1 = cur.t - prev.t, h2 = next.t - cur.t;
  if (!(h1 > 0.0) || !(h2 > 0.0) || std::abs(h1 - h2) > 1e-9 * std::max(h1, h2))
    throw std::invalid_argument("energy_identity: records must be equally spaced in time");
  return identity_residual(cur, (next.E - prev.E) / (h1 + h2));
}

void fill_energy_rates(std::vector<EnergyRecord>& s) {
  const std::size_t n = s.size();
  if (n == 0) return;
  if (n == 1) {
    s[0].dEdt = 0.0;
    s[0].residual = 0.0;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double d;
    if (i == 0) {
      const std::size_t k = n > 2 ? 2 : 1;
      d = one_sided_rate(s[0].t, s[0].E, s[1].t, s[1].E, s[k].t, s[k].E);
    } else if (i == n - 1) {
      const std::size_t k = n > 2 ? n - 3 : n - 2;
      d = one_sided_rate(s[i].t, s[i].E, s[i - 1].t, s[i - 1].E, s[k].t, s[k].E);
    } else {
      d = centered_rate(s[i - 1].t, s[i - 1].E, s[i].t, s[i].E, s[i + 1].t, s[i + 1].E);
    }
    s[i].dEdt = d;
    s[i].residual = identity_residual(s[i], d);
  }
}

double energy_inequality(const EnergyRecord& r, const ModelParams& p) {
  const double rhs = p.kappa * p.kappa / (2.0 * p.mu) * r.l2_Q;
  return rhs - (r.dEdt + 0.5 * p.mu * r.grad_u_sq + r.diss_H);
}

double inequality_scale(const EnergyRecord& r, const ModelParams& p) {
  return std::max({std::abs(r.dEdt), r.diss_u + r.diss_H, std::abs(r.activity),
                   p.kappa * p.kappa / (2.0 * p.mu) * r.l2_Q, 1e-30});
}

AprioriReport apriori_monitor(const std::vector<EnergyRecord>& series, const ModelParams& p) {
  (void)p;
  if (series.empty()) throw std::invalid_argument("apriori_monitor: empty series");
  AprioriReport rep;
  rep.y0 = series.front().h1_Q() + series.front().u_sq;
  const std::size_t n = series.size();
  std::vector<double> t(n), y1(n), diss(n), y2(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = series[i].t;
    y1[i] = series[i].h1_Q();
    diss[i] = series[i].diss_u + series[i].diss_lap;
  }
  const auto integ = cumulative_trapezoid(t, diss);
  for (std::size_t i = 0; i < n; ++i) y2[i] = series[i].u_sq + integ[i];
  if (rep.y0 <= 0.0) {
    rep.covered = std::all_of(y1.begin(), y1.end(), [](double v) { return v <= 0.0; }) &&
                  std::all_of(y2.begin(), y2.end(), [](double v) { return v <= 0.0; });
    return rep;
  }
  exp_cover(t, y1, rep.y0, rep.c1, rep.c2);
  exp_cover(t, y2, rep.y0, rep.c3, rep.c4);
  for (std::size_t i = 0; i < n; ++i) {
    const double b1 = rep.c1 * std::exp(rep.c2 * t[i]) * rep.y0;
    const double b2 = rep.c3 * std::exp(rep.c4 * t[i]) * rep.y0;
    if (y1[i] > b1 * (1.0 + 1e-12) || y2[i] > b2 * (1.0 + 1e-12)) rep.covered = false;
  }
  return rep;
}

GrowthReport growth_bound_check(const std::vector<double>& t, const std::vector<double>& phi) {
  if (t.size() != phi.size()) throw std::invalid_argument("growth_bound_check: length mismatch");
  GrowthReport rep;
  if (t.empty()) return rep;
  std::vector<double> y(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(phi[i] >= 0.0) || !std::isfinite(phi[i])) {
      rep.covered = false;
      return rep;
    }
    y[i] = std::log(std::log(std::numbers::e + phi[i]));
  }
  const LineFit f = least_squares(t, y);
  rep.beta = std::max(0.0, f.slope);
  rep.r2 = f.r2;
  rep.alpha = -INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i) rep.alpha = std::max(rep.alpha, y[i] - rep.beta * t[i]);
  rep.alpha = std::max(rep.alpha, 0.0);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (y[i] > rep.alpha + rep.beta * t[i] + 1e-14) rep.covered = false;
  return rep;
}

TwinDelta twin_delta(SpectralContext& ctx, const StateFields& a, const StateFields& b) {
  require_same_grid(a.q.grid(), b.q.grid(), "twin_delta");
  require_same_grid(a.u.grid(), b.u.grid(), "twin_delta");
  require_same_grid(a.q.grid(), ctx.grid(), "twin_delta");
  const Grid2D& g = ctx.grid();
  ScalarField d11(g), d12(g);
  TwinDelta r;
  r.t = a.t;
  double q2 = 0.0, u2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    d11.v[i] = a.q.q11.v[i] - b.q.q11.v[i];
    d12.v[i] = a.q.q12.v[i] - b.q.q12.v[i];
    q2 += 2.0 * (d11.v[i] * d11.v[i] + d12.v[i] * d12.v[i]);
    const double ex = a.u.x.v[i] - b.u.x.v[i], ey = a.u.y.v[i] - b.u.y.v[i];
    u2 += ex * ex + ey * ey;
  }
  const auto g11 = gradient(ctx, d11);
  const auto g12 = gradient(ctx, d12);
  double gq = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    gq += 2.0 * (g11[0].v[i] * g11[0].v[i] + g11[1].v[i] * g11[1].v[i] + g12[0].v[i] * g12[0].v[i] +
                 g12[1].v[i] * g12[1].v[i]);
  r.dQ_l2 = q2 * g.cell();
  r.dQ_h1 = (gq + q2) * g.cell();
  r.du_l2 = u2 * g.cell();
  return r;
}

double twin_growth_rate(SpectralContext& ctx, const SpectralState& s) {
  const Wavenumbers& wn = ctx.wn();
  const std::size_t n = wn.grid.size(), m = wn.size();
  std::vector<Complex> tmp(m);
  auto field = [&](const SpectralField& f, int kind) {
    // kind: 0 value, 1 d/dx, 2 d/dy, 3 laplacian
    for (std::size_t i = 0; i < m; ++i) {
      switch (kind) {
        case 0: tmp[i] = f.c[i]; break;
        case 1: tmp[i] = kI * wn.dx[i] * f.c[i]; break;
        case 2: tmp[i] = kI * wn.dy[i] * f.c[i]; break;
        default: tmp[i] = -wn.xi2[i] * f.c[i]; break;
      }
    }
    std::vector<double> out(n);
    ctx.inverse(tmp.data(), out.data());
    return out;
  };
  const auto q11 = field(s.q11, 0), q12 = field(s.q12, 0);
  const auto ux = field(s.ux, 0), uy = field(s.uy, 0);
  const auto q11x = field(s.q11, 1), q11y = field(s.q11, 2), q12x = field(s.q12, 1), q12y = field(s.q12, 2);
  const auto uxx = field(s.ux, 1), uxy = field(s.ux, 2), uyx = field(s.uy, 1), uyy = field(s.uy, 2);
  const auto l11 = field(s.q11, 3), l12 = field(s.q12, 3);
  double su = 0.0, sgq = 0.0, sq = 0.0, sgu = 0.0, sl = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    su = std::max(su, ux[i] * ux[i] + uy[i] * uy[i]);
    sgq = std::max(sgq, 2.0 * (q11x[i] * q11x[i] + q11y[i] * q11y[i] + q12x[i] * q12x[i] + q12y[i] * q12y[i]));
    sq = std::max(sq, 2.0 * (q11[i] * q11[i] + q12[i] * q12[i]));
    sgu = std::max(sgu, uxx[i] * uxx[i] + uxy[i] * uxy[i] + uyx[i] * uyx[i] + uyy[i] * uyy[i]);
    sl = std::max(sl, 2.0 * (l11[i] * l11[i] + l12[i] * l12[i]));
  }
  return 2.0 * (1.0 + su + sgq + sq + sgu + sl);
}

GronwallReport gronwall_envelope(const std::vector<double>& t, const std::vector<double>& y,
                                 const std::vector<double>& alpha, const std::vector<double>& beta,
                                 double rel_tol) {
  const std::size_t n = t.size();
  if (y.size() != n || alpha.size() != n || beta.size() != n)
    throw std::invalid_argument("gronwall_envelope: series lengths differ");
  for (std::size_t i = 0; i < n; ++i)
    if (alpha[i] < 0.0 || beta[i] < 0.0)
      throw std::invalid_argument("gronwall_envelope: alpha and beta must be >= 0");
  GronwallReport rep;
  rep.envelope.resize(n);
  if (n == 0) return rep;
  const auto a = cumulative_trapezoid(t, alpha);
  std::vector<double> src(n);
  for (std::size_t i = 0; i < n; ++i) src[i] = beta[i] * std::exp(-a[i]);
  const auto b = cumulative_trapezoid(t, src);
  for (std::size_t i = 0; i < n; ++i) {
    rep.envelope[i] = std::exp(a[i]) * (y[0] + b[i]);
    if (rep.holds && y[i] > rep.envelope[i] * (1.0 + rel_tol) + 1e-300) {
      rep.holds = false;
      rep.first_violation = i;
    }
  }
  return rep;
}

double fit_gronwall_source(const std::vector<double>& t, const std::vector<double>& y,
                           const std::vector<double>& alpha, std::size_t fit_end) {
  const std::size_t n = std::min(fit_end, t.size());
  if (n == 0) return 0.0;
  const auto a = cumulative_trapezoid(t, alpha);
  std::vector<double> e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) e[i] = std::exp(-a[i]);
  const auto unit = cumulative_trapezoid(t, e);  // envelope per unit beta, times e^{-A}
  double beta = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double lin = std::exp(a[i]) * unit[i];
    const double excess = y[i] - std::exp(a[i]) * y[0];
    if (lin > 0.0 && excess > 0.0) beta = std::max(beta, excess / lin);
  }
  return beta;
}

InterpolationReport interpolation_check(SpectralContext& ctx, const QTensorField& q) {
  const Wavenumbers& wn = ctx.wn();
  const Grid2D& g = ctx.grid();
  const SpectralField a = ctx.forward(q.q11), b = ctx.forward(q.q12);
  double d2 = 0.0;
  for (std::size_t i = 0; i < wn.size(); ++i)
    d2 += wn.weight[i] * wn.xi2[i] * wn.xi2[i] * 2.0 * (std::norm(a.c[i]) + std::norm(b.c[i]));
  d2 *= g.area();
  const auto g11 = gradient(ctx, q.q11);
  const auto g12 = gradient(ctx, q.q12);
  double l3 = 0.0, l6 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double gg = 2.0 * (g11[0].v[i] * g11[0].v[i] + g11[1].v[i] * g11[1].v[i] +
                             g12[0].v[i] * g12[0].v[i] + g12[1].v[i] * g12[1].v[i]);
    l3 += gg * std::sqrt(gg);
    const double qq = 2.0 * (q.q11.v[i] * q.q11.v[i] + q.q12.v[i] * q.q12.v[i]);
    l6 += qq * qq * qq;
  }
  if (!(l6 > 0.0)) throw std::invalid_argument("interpolation_check: zero field");
  InterpolationReport r;
  r.grad_l3 = std::cbrt(l3 * g.cell());
  r.d2_l2 = std::sqrt(d2);
  r.q_l6 = std::pow(l6 * g.cell(), 1.0 / 6.0);
  const double den = std::sqrt(r.d2_l2) * std::sqrt(r.q_l6);
  r.constant = den > 0.0 ? r.grad_l3 / den : 0.0;
  return r;
}

}  // namespace alcs
