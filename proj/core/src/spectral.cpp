#include "alcs/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace alcs {

Wavenumbers::Wavenumbers(const Grid2D& g) : grid(g) {
  const int n = g.n();
  const int nk = g.nkx();
  const std::size_t m = g.spectral_size();
  kx.resize(m);
  ky.resize(m);
  xi_x.resize(m);
  xi_y.resize(m);
  xi2.resize(m);
  dx.resize(m);
  dy.resize(m);
  weight.resize(m);
  dealias.resize(m);
  const double unit = g.xi_unit();
  const int cut = g.dealias_cutoff();
  for (int r = 0; r < n; ++r) {
    const int kyr = g.ky(r);
    for (int col = 0; col < nk; ++col) {
      const std::size_t i = static_cast<std::size_t>(r) * nk + col;
      kx[i] = col;
      ky[i] = kyr;
      xi_x[i] = unit * col;
      xi_y[i] = unit * kyr;
      xi2[i] = xi_x[i] * xi_x[i] + xi_y[i] * xi_y[i];
      dx[i] = col == n / 2 ? 0.0 : xi_x[i];
      dy[i] = kyr == n / 2 ? 0.0 : xi_y[i];
      weight[i] = (col == 0 || col == n / 2) ? 1.0 : 2.0;
      dealias[i] = (col <= cut && std::abs(kyr) <= cut) ? 1.0 : 0.0;
    }
  }
}

namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SpectralContext::Plans {
  int n = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Plans(const Grid2D& g) : n(g.n()) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    real = fftw_alloc_real(g.size());
    spec = fftw_alloc_complex(g.spectral_size());
    if (!real || !spec) throw std::bad_alloc();
    // FFTW_ESTIMATE keeps plan choice independent of timing, so output bits are reproducible.
    r2c = fftw_plan_dft_r2c_2d(n, n, real, spec, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_2d(n, n, spec, real, FFTW_ESTIMATE);
    if (!r2c || !c2r) throw std::runtime_error("fftw: plan creation failed");
  }
  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spec);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

SpectralContext::SpectralContext(const Grid2D& g)
    : wn_(std::make_shared<const Wavenumbers>(g)), plans_(std::make_unique<Plans>(g)) {}
SpectralContext::~SpectralContext() = default;
SpectralContext::SpectralContext(SpectralContext&&) noexcept = default;
SpectralContext& SpectralContext::operator=(SpectralContext&&) noexcept = default;

void SpectralContext::forward(const double* in, Complex* out) {
  const Grid2D& g = grid();
  std::copy(in, in + g.size(), plans_->real);
  fftw_execute(plans_->r2c);
  const double scale = 1.0 / static_cast<double>(g.size());
  const auto* s = reinterpret_cast<const Complex*>(plans_->spec);
  for (std::size_t i = 0; i < g.spectral_size(); ++i) out[i] = s[i] * scale;
}

void SpectralContext::inverse(const Complex* in, double* out) {
  const Grid2D& g = grid();
  std::copy(in, in + g.spectral_size(), reinterpret_cast<Complex*>(plans_->spec));
  fftw_execute(plans_->c2r);
  std::copy(plans_->real, plans_->real + g.size(), out);
}

SpectralField SpectralContext::forward(const ScalarField& f) {
  require_same_grid(f.grid, grid(), "forward transform");
  SpectralField s(grid());
  forward(f.v.data(), s.c.data());
  return s;
}

ScalarField SpectralContext::inverse(const SpectralField& f) {
  require_same_grid(f.grid, grid(), "inverse transform");
  ScalarField r(grid());
  inverse(f.c.data(), r.v.data());
  return r;
}

void apply_multiplier(const std::vector<double>& m, SpectralField& f) {
  for (std::size_t i = 0; i < f.c.size(); ++i) f.c[i] *= m[i];
}

namespace {

constexpr Complex kI{0.0, 1.0};

SpectralField times_i(const std::vector<double>& sym, const SpectralField& f) {
  SpectralField r(f.grid);
  for (std::size_t i = 0; i < f.c.size(); ++i) r.c[i] = kI * sym[i] * f.c[i];
  return r;
}

}  // namespace

std::array<ScalarField, 2> gradient(SpectralContext& ctx, const ScalarField& f) {
  const SpectralField s = ctx.forward(f);
  const Wavenumbers& wn = ctx.wn();
  return {ctx.inverse(times_i(wn.dx, s)), ctx.inverse(times_i(wn.dy, s))};
}

ScalarField laplacian(SpectralContext& ctx, const ScalarField& f) {
  SpectralField s = ctx.forward(f);
  const Wavenumbers& wn = ctx.wn();
  for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] *= -wn.xi2[i];
  return ctx.inverse(s);
}

ScalarField divergence(SpectralContext& ctx, const VelocityField& v) {
  require_same_grid(v.x.grid, v.y.grid, "divergence");
  const SpectralField sx = ctx.forward(v.x);
  const SpectralField sy = ctx.forward(v.y);
  const Wavenumbers& wn = ctx.wn();
  SpectralField d(ctx.grid());
  for (std::size_t i = 0; i < d.c.size(); ++i) d.c[i] = kI * (wn.dx[i] * sx.c[i] + wn.dy[i] * sy.c[i]);
  return ctx.inverse(d);
}

void leray_project(const Wavenumbers& wn, SpectralField& vx, SpectralField& vy) {
  for (std::size_t i = 0; i < vx.c.size(); ++i) {
    const double k2 = wn.xi2[i];
    if (k2 == 0.0) continue;
    const double ax = wn.xi_x[i], ay = wn.xi_y[i];
    const Complex dot = (ax * vx.c[i] + ay * vy.c[i]) / k2;
    vx.c[i] -= ax * dot;
    vy.c[i] -= ay * dot;
  }
}

VelocityField leray_project(SpectralContext& ctx, const VelocityField& v) {
  SpectralField sx = ctx.forward(v.x);
  SpectralField sy = ctx.forward(v.y);
  leray_project(ctx.wn(), sx, sy);
  VelocityField r;
  r.x = ctx.inverse(sx);
  r.y = ctx.inverse(sy);
  return r;
}

std::vector<double> jn_mask(const Wavenumbers& wn, int n, bool keep_mean) {
  if (n < 1) throw std::invalid_argument("truncate_Jn: n must be >= 1");
  const double lo = std::ldexp(1.0, -n), hi = std::ldexp(1.0, n);
  std::vector<double> m(wn.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double r = std::sqrt(wn.xi2[i]);
    m[i] = (r >= lo && r <= hi) ? 1.0 : 0.0;
    if (keep_mean && wn.xi2[i] == 0.0) m[i] = 1.0;
  }
  return m;
}

ScalarField truncate_jn(SpectralContext& ctx, const ScalarField& f, int n, bool keep_mean) {
  const auto m = jn_mask(ctx.wn(), n, keep_mean);
  SpectralField s = ctx.forward(f);
  apply_multiplier(m, s);
  return ctx.inverse(s);
}

std::vector<double> mollifier_symbol(const Wavenumbers& wn, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("mollify: eps must be >= 0");
  std::vector<double> m(wn.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::exp(-0.5 * eps * eps * wn.xi2[i]);
  return m;
}

ScalarField mollify(SpectralContext& ctx, const ScalarField& f, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("mollify: eps must be >= 0");
  if (eps == 0.0) return f;
  const auto m = mollifier_symbol(ctx.wn(), eps);
  SpectralField s = ctx.forward(f);
  apply_multiplier(m, s);
  return ctx.inverse(s);
}

void dealias(const Wavenumbers& wn, SpectralField& f) { apply_multiplier(wn.dealias, f); }

ScalarField dealias(SpectralContext& ctx, const ScalarField& f) {
  SpectralField s = ctx.forward(f);
  dealias(ctx.wn(), s);
  return ctx.inverse(s);
}

int jn_max_index(const Grid2D& g) {
  const double top = g.xi_unit() * g.dealias_cutoff();
  if (top < 2.0) return 0;
  return static_cast<int>(std::floor(std::log2(top)));
}

double spectral_inner(const Wavenumbers& wn, const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid, g.grid, "spectral_inner");
  double s = 0.0;
  for (std::size_t i = 0; i < f.c.size(); ++i)
    s += wn.weight[i] * (f.c[i].real() * g.c[i].real() + f.c[i].imag() * g.c[i].imag());
  return s * wn.grid.area();
}

double divergence_defect(const Wavenumbers& wn, const SpectralField& vx, const SpectralField& vy) {
  double top = 0.0, div = 0.0;
  for (std::size_t i = 0; i < vx.c.size(); ++i) {
    top = std::max({top, std::abs(vx.c[i]), std::abs(vy.c[i])});
    div = std::max(div, std::abs(wn.xi_x[i] * vx.c[i] + wn.xi_y[i] * vy.c[i]));
  }
  return top > 0.0 ? div / top : 0.0;
}

bool is_divergence_free(SpectralContext& ctx, const VelocityField& v, double tol) {
  const SpectralField sx = ctx.forward(v.x);
  const SpectralField sy = ctx.forward(v.y);
  return divergence_defect(ctx.wn(), sx, sy) <= tol;
}

}  // namespace alcs
