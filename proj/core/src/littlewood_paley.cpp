#include "alcs/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace alcs {

namespace {

constexpr double kInner = 0.75;
constexpr double kOuter = 4.0 / 3.0;

double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

bool valid_exponent(double p) { return p == 2.0 || p == 4.0 || p == kLinf; }

double inv(double p) { return p == kLinf ? 0.0 : 1.0 / p; }

double lp_norm(const std::vector<double>& f, double cell, double p) {
  if (p == kLinf) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (double x : f) s += std::pow(std::abs(x), p);
  return std::pow(s * cell, 1.0 / p);
}

ScalarField filtered(SpectralContext& ctx, const SpectralField& fh, const std::vector<double>& m) {
  SpectralField s = fh;
  apply_multiplier(m, s);
  return ctx.inverse(s);
}

void check_block(const DyadicPartition& part, int j) {
  if (j < 0 || j > part.j_max)
    throw std::out_of_range("block index " + std::to_string(j) + " outside 0.." +
                            std::to_string(part.j_max));
}

}  // namespace

double lp_chi(double r) {
  if (r <= kInner) return 1.0;
  if (r >= kOuter) return 0.0;
  const double t = (r - kInner) / (kOuter - kInner);
  const double a = glue(1.0 - t), b = glue(t);
  return a / (a + b);
}

double lp_phi(double r) { return lp_chi(0.5 * r) - lp_chi(r); }

DyadicPartition build_partition(const Grid2D& g) {
  const Wavenumbers wn(g);
  DyadicPartition part;
  part.grid = g;
  double rmax = 0.0;
  for (double k2 : wn.xi2) rmax = std::max(rmax, std::sqrt(k2));
  int j = 0;
  while (std::ldexp(kInner, j + 1) < rmax) ++j;
  part.j_max = j;
  part.chi.resize(wn.size());
  for (std::size_t m = 0; m < wn.size(); ++m) part.chi[m] = lp_chi(std::sqrt(wn.xi2[m]));
  part.phi.assign(part.j_max + 1, std::vector<double>(wn.size()));
  for (int b = 0; b <= part.j_max; ++b)
    for (std::size_t m = 0; m < wn.size(); ++m)
      part.phi[b][m] = lp_phi(std::ldexp(std::sqrt(wn.xi2[m]), -b));
  return part;
}

std::vector<double> DyadicPartition::low_cut(int j) const {
  if (j < 0) return std::vector<double>(chi.size(), 0.0);
  const Wavenumbers wn(grid);
  std::vector<double> m(wn.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = lp_chi(std::ldexp(std::sqrt(wn.xi2[i]), -j));
  return m;
}

std::vector<double> DyadicPartition::hs_weight(double s) const {
  std::vector<double> w(chi.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = chi[i] * chi[i];
  for (int j = 0; j <= j_max; ++j) {
    const double f = std::exp2(2.0 * j * s);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += f * phi[j][i] * phi[j][i];
  }
  return w;
}

ScalarField delta_j(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& f, int j) {
  check_block(part, j);
  require_same_grid(part.grid, f.grid, "delta_j");
  return filtered(ctx, ctx.forward(f), part.phi[j]);
}

ScalarField s_j(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& f, int j) {
  require_same_grid(part.grid, f.grid, "s_j");
  return filtered(ctx, ctx.forward(f), part.low_cut(j));
}

DyadicBlocks decompose(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& f) {
  require_same_grid(part.grid, f.grid, "decompose");
  const SpectralField fh = ctx.forward(f);
  DyadicBlocks out;
  out.s0 = filtered(ctx, fh, part.chi);
  for (int j = 0; j <= part.j_max; ++j) out.blocks.push_back(filtered(ctx, fh, part.phi[j]));
  return out;
}

double hs_norm_sq(const Wavenumbers& wn, const std::vector<double>& weight, const SpectralField& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.c.size(); ++i) s += wn.weight[i] * weight[i] * std::norm(f.c[i]);
  return s * wn.grid.area();
}

double hs_norm(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& f, double s) {
  require_same_grid(part.grid, f.grid, "hs_norm");
  return std::sqrt(hs_norm_sq(ctx.wn(), part.hs_weight(s), ctx.forward(f)));
}

BonyParts bony_decompose(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& u,
                         const ScalarField& v) {
  require_same_grid(u.grid, v.grid, "bony_decompose");
  require_same_grid(part.grid, u.grid, "bony_decompose");
  // Level 0 holds S_0, level b >= 1 holds Delta_{b-1}.
  auto levels = [&](const ScalarField& f) {
    DyadicBlocks d = decompose(ctx, part, f);
    std::vector<ScalarField> out;
    out.push_back(std::move(d.s0));
    for (auto& b : d.blocks) out.push_back(std::move(b));
    return out;
  };
  const auto lu = levels(u);
  const auto lv = levels(v);
  const int nl = static_cast<int>(lu.size());
  const std::size_t np = u.grid.size();

  BonyParts out{ScalarField(u.grid), ScalarField(u.grid), ScalarField(u.grid)};
  std::vector<double> low_u(np, 0.0), low_v(np, 0.0);  // sum of levels <= b - 2
  for (int b = 0; b < nl; ++b) {
    if (b >= 2)
      for (std::size_t i = 0; i < np; ++i) {
        low_u[i] += lu[b - 2].v[i];
        low_v[i] += lv[b - 2].v[i];
      }
    for (std::size_t i = 0; i < np; ++i) {
      out.t_uv.v[i] += low_u[i] * lv[b].v[i];
      out.t_vu.v[i] += low_v[i] * lu[b].v[i];
    }
    for (int c = std::max(0, b - 1); c <= std::min(nl - 1, b + 1); ++c)
      for (std::size_t i = 0; i < np; ++i) out.r.v[i] += lu[b].v[i] * lv[c].v[i];
  }
  return out;
}

BernsteinReport bernstein_check(SpectralContext& ctx, const DyadicPartition& part,
                                const ScalarField& f, int j, double p, double q) {
  check_block(part, j);
  if (!valid_exponent(p) || !valid_exponent(q) || inv(p) < inv(q))
    throw std::invalid_argument("bernstein_check: need p <= q with p, q in {2, 4, inf}");
  SpectralField g = ctx.forward(f);
  apply_multiplier(part.phi[j], g);
  if (std::all_of(g.c.begin(), g.c.end(), [](const Complex& z) { return z == Complex{}; }))
    throw std::invalid_argument("bernstein_check: block " + std::to_string(j) + " is empty");
  const Wavenumbers& wn = ctx.wn();
  SpectralField gx(g.grid), gy(g.grid);
  for (std::size_t i = 0; i < g.c.size(); ++i) {
    gx.c[i] = Complex(0.0, wn.dx[i]) * g.c[i];
    gy.c[i] = Complex(0.0, wn.dy[i]) * g.c[i];
  }
  const ScalarField gp = ctx.inverse(g);
  const ScalarField gxp = ctx.inverse(gx), gyp = ctx.inverse(gy);
  std::vector<double> mag(gp.v.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(gxp.v[i], gyp.v[i]);

  const double cell = f.grid.cell();
  const double np = lp_norm(gp.v, cell, p);
  const double nq = lp_norm(gp.v, cell, q);
  const double ng = lp_norm(mag, cell, p);
  const double scale = std::ldexp(1.0, j);
  BernsteinReport r;
  r.derivative_ratio = ng / np;
  r.lower_constant = scale * np / ng;
  r.upper_constant = ng / (scale * np);
  r.integrability_constant = nq / (std::exp2(2.0 * j * (inv(p) - inv(q))) * np);
  return r;
}

CommutatorReport commutator_check(SpectralContext& ctx, const DyadicPartition& part,
                                  const ScalarField& u, const ScalarField& v, int j) {
  check_block(part, j);
  require_same_grid(u.grid, v.grid, "commutator_check");
  ScalarField uv(u.grid);
  for (std::size_t i = 0; i < uv.v.size(); ++i) uv.v[i] = u.v[i] * v.v[i];
  const ScalarField a = delta_j(ctx, part, uv, j);
  const ScalarField dv = delta_j(ctx, part, v, j);
  ScalarField comm(u.grid);
  for (std::size_t i = 0; i < comm.v.size(); ++i) comm.v[i] = a.v[i] - u.v[i] * dv.v[i];
  const auto gu = gradient(ctx, u);
  double gmax = 0.0;
  for (std::size_t i = 0; i < gu[0].v.size(); ++i)
    gmax = std::max(gmax, std::hypot(gu[0].v[i], gu[1].v[i]));

  CommutatorReport r;
  r.commutator_l2 = std::sqrt(inner(comm, comm));
  r.reference = std::ldexp(1.0, -j) * gmax * std::sqrt(inner(v, v));
  r.constant = r.reference > 0.0 ? r.commutator_l2 / r.reference : 0.0;
  return r;
}

ProductReport product_estimate_check(SpectralContext& ctx, const DyadicPartition& part,
                                     const ScalarField& u, int k, double p, double s) {
  if (k < 2 || k > 4) throw std::invalid_argument("product_estimate_check: k must be in 2..4");
  if (p != 2.0) throw std::invalid_argument("product_estimate_check: only p = 2 is supported");
  require_same_grid(part.grid, u.grid, "product_estimate_check");
  ScalarField uk(u.grid);
  for (std::size_t i = 0; i < uk.v.size(); ++i) uk.v[i] = std::pow(u.v[i], k);

  const double cell = u.grid.cell();
  const double lower = std::pow(lp_norm(u.v, cell, 2.0 * (k - 1)), k - 1);
  const auto gu = gradient(ctx, u);
  const auto w = part.hs_weight(s);
  const double grad_hs = std::sqrt(hs_norm_sq(ctx.wn(), w, ctx.forward(gu[0])) +
                                   hs_norm_sq(ctx.wn(), w, ctx.forward(gu[1])));

  ProductReport r;
  const SpectralField ukh = ctx.forward(uk);
  std::vector<double> ratio;
  for (int q = 0; q <= part.j_max; ++q) {
    const ScalarField b = filtered(ctx, ukh, part.phi[q]);
    const double bn = std::sqrt(inner(b, b));
    r.block_norms.push_back(bn);
    const double ref = std::exp2(-q * s) * lower * grad_hs;
    ratio.push_back(ref > 0.0 ? bn / ref : 0.0);
  }
  double total = 0.0;
  for (double x : ratio) total += x * x;
  r.constant = std::sqrt(total);
  r.sequence.resize(ratio.size(), 0.0);
  if (r.constant > 0.0) {
    double tail = 0.0, sum = 0.0;
    for (std::size_t q = 0; q < ratio.size(); ++q) {
      r.sequence[q] = ratio[q] / r.constant;
      sum += r.sequence[q] * r.sequence[q];
      if (static_cast<int>(q) > part.j_max - 2) tail += r.sequence[q] * r.sequence[q];
    }
    r.ell2 = std::sqrt(sum);
    r.tail_fraction = tail / sum;
  }
  return r;
}

LowHighSplit split_low_high(SpectralContext& ctx, const DyadicPartition& part,
                            const QTensorField& q, const VelocityField& u, double s) {
  require_same_grid(q.grid(), u.grid(), "split_low_high");
  require_same_grid(part.grid, q.grid(), "split_low_high");
  const Wavenumbers& wn = ctx.wn();
  const auto w = part.hs_weight(s);
  const SpectralField a = ctx.forward(q.q11), b = ctx.forward(q.q12);
  const SpectralField ux = ctx.forward(u.x), uy = ctx.forward(u.y);
  double phi1 = 0.0, phi2 = 0.0;
  for (std::size_t i = 0; i < wn.size(); ++i) {
    const double g2 = wn.dx[i] * wn.dx[i] + wn.dy[i] * wn.dy[i];
    const double e = 2.0 * g2 * (std::norm(a.c[i]) + std::norm(b.c[i])) + std::norm(ux.c[i]) +
                     std::norm(uy.c[i]);
    const double low = part.chi[i] * part.chi[i];
    phi1 += wn.weight[i] * low * e;
    phi2 += wn.weight[i] * (w[i] - low) * e;
  }
  LowHighSplit r;
  r.phi1 = phi1 * wn.grid.area();
  r.phi2 = phi2 * wn.grid.area();
  r.phi = r.phi1 + r.phi2;
  return r;
}

}  // namespace alcs
