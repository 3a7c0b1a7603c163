#include "alcs/initial.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "alcs/snapshot.hpp"

namespace alcs {

double PortableRng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double PortableRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string PortableRng::state() const {
  std::ostringstream o;
  o << eng_;
  return o.str();
}

void PortableRng::restore(const std::string& text) {
  std::istringstream in(text);
  std::mt19937_64 e;
  in >> e;
  if (in.fail()) throw std::invalid_argument("malformed RNG state");
  eng_ = e;
}

namespace {

// Random half-spectrum coefficients inside the envelope; inverse and forward transforms make
// the result Hermitian-consistent on the kx = 0 column.
SpectralField random_coefficients(SpectralContext& ctx, PortableRng& rng, const SpectrumShape& sh) {
  const Wavenumbers& wn = ctx.wn();
  SpectralField f(ctx.grid());
  for (std::size_t i = 0; i < wn.size(); ++i) {
    const double re = rng.normal(), im = rng.normal();
    const double k = std::hypot(static_cast<double>(wn.kx[i]), static_cast<double>(wn.ky[i]));
    if (k < 0.5 || wn.dealias[i] == 0.0 || k > sh.kmax) continue;
    const double z = (k - sh.peak) / sh.width;
    f.c[i] = std::exp(-0.5 * z * z) * Complex(re, im);
  }
  const ScalarField phys = ctx.inverse(f);
  return ctx.forward(phys);
}

double rms_of(const ScalarField& a, const ScalarField* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) s += a.v[i] * a.v[i] + (b ? b->v[i] * b->v[i] : 0.0);
  return std::sqrt(s / static_cast<double>(a.v.size()));
}

}  // namespace

ScalarField random_field(SpectralContext& ctx, PortableRng& rng, const SpectrumShape& shape, double rms) {
  ScalarField f = ctx.inverse(random_coefficients(ctx, rng, shape));
  const double r = rms_of(f, nullptr);
  if (r > 0.0)
    for (double& v : f.v) v *= rms / r;
  return f;
}

VelocityField random_velocity(SpectralContext& ctx, PortableRng& rng, const SpectrumShape& shape,
                              double rms) {
  const SpectralField psi = random_coefficients(ctx, rng, shape);
  const Wavenumbers& wn = ctx.wn();
  SpectralField ux(ctx.grid()), uy(ctx.grid());
  const Complex I{0.0, 1.0};
  for (std::size_t i = 0; i < wn.size(); ++i) {
    ux.c[i] = I * wn.dy[i] * psi.c[i];
    uy.c[i] = -I * wn.dx[i] * psi.c[i];
  }
  VelocityField u;
  u.x = ctx.inverse(ux);
  u.y = ctx.inverse(uy);
  const double r = rms_of(u.x, &u.y);
  if (r > 0.0)
    for (std::size_t i = 0; i < u.x.v.size(); ++i) {
      u.x.v[i] *= rms / r;
      u.y.v[i] *= rms / r;
    }
  return u;
}

StateFields make_initial(const RunConfig& cfg, PortableRng* rng_out) {
  const Grid2D g = cfg.grid();
  SpectralContext ctx(g);
  const InitialSpec& ic = cfg.ic;
  PortableRng rng(ic.seed);
  StateFields s;
  s.q = QTensorField(g);
  s.u = VelocityField(g);

  if (ic.type == IcType::file) {
    s = to_state(read_snapshot(ic.file));
    if (s.q.grid() != g)
      throw std::invalid_argument("ic_file grid (N = " + std::to_string(s.q.grid().n()) +
                                  ") does not match the configured grid (N = " + std::to_string(g.n()) + ")");
    s.u = leray_project(ctx, s.u);
    if (rng_out) *rng_out = rng;
    return s;
  }

  const SpectrumShape shape{ic.peak_wavenumber, 1.0, 1e300};
  const double k = g.xi_unit();
  switch (ic.type) {
    case IcType::taylor_green:
      for (int r = 0; r < g.n(); ++r)
        for (int c = 0; c < g.n(); ++c) {
          const double x = c * g.dx(), y = r * g.dx();
          s.u.x(r, c) = ic.amplitude * std::sin(k * x) * std::cos(k * y);
          s.u.y(r, c) = -ic.amplitude * std::cos(k * x) * std::sin(k * y);
        }
      break;
    case IcType::random_spectrum:
    case IcType::uniform_director:
      if (ic.amplitude > 0.0) s.u = random_velocity(ctx, rng, shape, ic.amplitude);
      break;
    case IcType::file: break;
  }
  if (ic.type == IcType::uniform_director) {
    const double q11 = 0.5 * ic.s_order * std::cos(2.0 * ic.director_angle);
    const double q12 = 0.5 * ic.s_order * std::sin(2.0 * ic.director_angle);
    for (std::size_t i = 0; i < g.size(); ++i) {
      s.q.q11.v[i] = q11;
      s.q.q12.v[i] = q12;
    }
  }
  if (ic.q_amplitude > 0.0) {
    const ScalarField n11 = random_field(ctx, rng, shape, ic.q_amplitude);
    const ScalarField n12 = random_field(ctx, rng, shape, ic.q_amplitude);
    for (std::size_t i = 0; i < g.size(); ++i) {
      s.q.q11.v[i] += n11.v[i];
      s.q.q12.v[i] += n12.v[i];
    }
  }
  s.u = leray_project(ctx, s.u);
  if (rng_out) *rng_out = rng;
  return s;
}

}  // namespace alcs
