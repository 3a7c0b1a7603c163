#include <doctest.h>

#include <cmath>

#include "alcs/config.hpp"
#include "alcs/diagnostics.hpp"
#include "alcs/dynamics.hpp"
#include "alcs/initial.hpp"
#include "alcs/integrator.hpp"

using namespace alcs;

namespace {

StateFields uniform_state(const Grid2D& g, double q11, double q12) {
  StateFields s;
  s.q = QTensorField(g);
  s.u = VelocityField(g);
  for (double& v : s.q.q11.v) v = q11;
  for (double& v : s.q.q12.v) v = q12;
  return s;
}

double max_coeff(const SpectralRhs& r) {
  double m = 0.0;
  for (const SpectralField* f : {&r.q11, &r.q12, &r.ux, &r.uy})
    for (const Complex& z : f->c) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

TEST_CASE("ordered uniform state is stationary") {
  // |Q|^2 = -a/c makes the bulk field vanish.
  const Grid2D g(32);
  SpectralContext ctx(g);
  for (Mode mode : {Mode::direct, Mode::mollified, Mode::friedrichs}) {
    ModelParams p;
    p.mode = mode;
    p.eps = 0.1;
    p.kappa = 0.5;
    p.keep_mean = true;
    const double theta = 0.3, half_s = 0.5;
    SpectralState s = to_spectral(ctx, uniform_state(g, half_s * std::cos(2 * theta), half_s * std::sin(2 * theta)));
    RhsAssembler rhs(ctx, p);
    SpectralRhs out(g);
    rhs.full(s, out);
    CHECK(max_coeff(out) < 1e-15);
  }
}

TEST_CASE("pure diffusion single mode is integrated exactly") {
  const Grid2D g(32);
  SpectralContext ctx(g);
  ModelParams p;
  p.a = 0.0;
  p.gamma = 0.7;
  p.mu = 1.3;
  const double amp = 1e-7, dt = 1e-2;
  // A small Q mode with u = 0, and separately a shear mode with Q = 0; neither is advected.
  StateFields sq = uniform_state(g, 0.0, 0.0), su = uniform_state(g, 0.0, 0.0);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) {
      const double x = c * g.dx(), y = r * g.dx();
      sq.q.q11(r, c) = amp * std::cos(2 * x + y);
      su.u.x(r, c) = std::sin(3 * y);
    }
  RhsAssembler rhs(ctx, p);
  const double dq = std::exp(-p.gamma * 5.0 * dt), du = std::exp(-p.mu * 9.0 * dt);
  for (int scheme : {1, 2}) {
    Integrator integ(rhs, scheme);
    SpectralState wq = to_spectral(ctx, sq), wu = to_spectral(ctx, su);
    integ.step(wq, dt);
    integ.step(wu, dt);
    const StateFields fq = to_physical(ctx, wq), fu = to_physical(ctx, wu);
    double eq = 0.0, eu = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      eq = std::max(eq, std::abs(fq.q.q11.v[i] - dq * sq.q.q11.v[i]) / amp);
      eu = std::max(eu, std::abs(fu.u.x.v[i] - du * su.u.x.v[i]));
    }
    CHECK(eq < 1e-13);
    CHECK(eu < 1e-13);
  }
}

TEST_CASE("ETD coefficients agree across the series switch") {
  for (double z : {-0.0999999, -0.1000001, 0.0999999, 0.1000001}) {
    CHECK(etd_phi1(z) == doctest::Approx(std::expm1(z) / z).epsilon(1e-13));
    CHECK(etd_phi2(z) == doctest::Approx((std::expm1(z) - z) / (z * z)).epsilon(1e-9));
  }
  CHECK(etd_phi1(0.0) == 1.0);
  CHECK(etd_phi2(0.0) == 0.5);
  CHECK(step_count(1.0, 1e-3) == 1000);
  CHECK(step_count(0.0, 1e-3) == 0);
  CHECK(step_count(1.0, 0.3) == 4);
}

TEST_CASE("Q stays symmetric traceless and u divergence-free along a run") {
  RunConfig cfg;
  cfg.N = 32;
  cfg.ic.type = IcType::random_spectrum;
  cfg.ic.seed = 4;
  cfg.ic.q_amplitude = 0.2;
  cfg.model.kappa = 0.5;
  cfg.model.mode = Mode::mollified;
  cfg.model.eps = 0.1;
  SpectralContext ctx(cfg.grid());
  TimeSetup t;
  t.t_end = 0.1;
  const RunResult r = run(ctx, to_spectral(ctx, make_initial(cfg)), cfg.model, t, {}, {});
  CHECK_FALSE(r.blew_up);
  CHECK(r.steps == 100);
  CHECK(divergence_defect(ctx.wn(), r.state.ux, r.state.uy) < 1e-12);
}

TEST_CASE("blow-up is reported, not thrown") {
  RunConfig cfg;
  cfg.N = 32;
  cfg.ic.type = IcType::random_spectrum;
  cfg.ic.amplitude = 5.0;
  cfg.ic.q_amplitude = 5.0;
  SpectralContext ctx(cfg.grid());
  TimeSetup t;
  t.dt = 10.0;
  t.t_end = 1000.0;
  const RunResult r = run(ctx, to_spectral(ctx, make_initial(cfg)), cfg.model, t, {}, {});
  CHECK(r.blew_up);
  CHECK_FALSE(r.message.empty());
}

TEST_CASE("corotation of a diagonal tensor") {
  const Grid2D g(8);
  QTensorField q(g);
  ScalarField w(g, 0.5);
  for (double& v : q.q11.v) v = 1.0;
  const QTensorField r = corotation(q, w);
  // Q Omega - Omega Q with Q = diag(1,-1), Omega_12 = 1/2 gives off-diagonal entry 1.
  CHECK(r.q11.v[0] == 0.0);
  CHECK(std::abs(r.q12.v[0]) == doctest::Approx(1.0));
}
