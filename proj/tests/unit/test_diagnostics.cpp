#include <doctest.h>

#include <cmath>
#include <numbers>

#include "alcs/diagnostics.hpp"
#include "alcs/dynamics.hpp"
#include "alcs/initial.hpp"

using namespace alcs;
using std::numbers::pi;

TEST_CASE("Taylor-Green kinetic energy") {
  RunConfig cfg;
  cfg.N = 32;
  cfg.ic.amplitude = 0.7;
  cfg.ic.peak_wavenumber = 1;
  SpectralContext ctx(cfg.grid());
  const EnergyRecord r = energy(ctx, make_initial(cfg), cfg.model);
  CHECK(r.kinetic == doctest::Approx(0.5 * 4 * pi * pi * 0.5 * 0.49).epsilon(1e-13));
  CHECK(r.elastic == 0.0);
}

TEST_CASE("bulk energy of a uniform state") {
  RunConfig cfg;
  cfg.N = 16;
  cfg.ic.type = IcType::uniform_director;
  cfg.ic.amplitude = 0.0;
  cfg.model.a = -1.0;
  SpectralContext ctx(cfg.grid());
  const StateFields s = make_initial(cfg);
  CHECK(s.q.q11.v[5] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(s.q.q12.v[5]) < 1e-16);
  const EnergyRecord r = energy(ctx, s, cfg.model);
  CHECK(r.bulk == doctest::Approx(4 * pi * pi * -0.05859375).epsilon(1e-13));
  CHECK(r.kinetic == 0.0);
  CHECK(r.l2_Q == doctest::Approx(4 * pi * pi * 0.125).epsilon(1e-13));
}

TEST_CASE("interpolation quantities in closed form") {
  // Q = diag(A sin x, -A sin x).
  const Grid2D g(64);
  SpectralContext ctx(g);
  const double a = 0.3;
  QTensorField q(g);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) q.q11(r, c) = a * std::sin(c * g.dx());
  const InterpolationReport rep = interpolation_check(ctx, q);
  // |cos x|^3 has a kink, so the grid sum converges only algebraically (about 1e-6 at N = 64).
  CHECK(std::pow(rep.grad_l3, 3) == doctest::Approx(std::pow(2.0, 1.5) * a * a * a * 2 * pi * 8.0 / 3.0).epsilon(1e-5));
  CHECK(rep.d2_l2 * rep.d2_l2 == doctest::Approx(4 * pi * pi * a * a).epsilon(1e-12));
  CHECK(std::pow(rep.q_l6, 6) == doctest::Approx(10 * pi * pi * std::pow(a, 6)).epsilon(1e-12));
  CHECK(rep.constant == doctest::Approx(rep.grad_l3 / std::sqrt(rep.d2_l2 * rep.q_l6)));
  CHECK_THROWS(interpolation_check(ctx, QTensorField(g)));
}

TEST_CASE("finite-difference rates are exact on quadratics") {
  auto e = [](double t) { return 3.0 - 2.0 * t + 0.5 * t * t; };
  auto de = [](double t) { return -2.0 + t; };
  CHECK(centered_rate(0.1, e(0.1), 0.2, e(0.2), 0.3, e(0.3)) == doctest::Approx(de(0.2)).epsilon(1e-12));
  CHECK(one_sided_rate(0.0, e(0.0), 0.1, e(0.1), 0.2, e(0.2)) == doctest::Approx(de(0.0)).epsilon(1e-12));
  CHECK(one_sided_rate(0.2, e(0.2), 0.1, e(0.1), 0.0, e(0.0)) == doctest::Approx(de(0.2)).epsilon(1e-12));
}

TEST_CASE("energy identity residual of a hand record") {
  EnergyRecord r;
  r.diss_u = 1.0;
  r.diss_H = 2.0;
  r.activity = 0.5;
  CHECK(identity_residual(r, -2.5) == doctest::Approx(0.0));
  CHECK(identity_residual(r, -2.0) == doctest::Approx(0.5 / 3.0));
}

TEST_CASE("Gronwall envelope covers exact exponential growth") {
  std::vector<double> t, y, alpha;
  for (int i = 0; i <= 50; ++i) {
    t.push_back(0.02 * i);
    y.push_back(1e-6 * std::exp(1.5 * t.back()));
    alpha.push_back(1.5);
  }
  const GronwallReport ok = gronwall_envelope(t, y, alpha, std::vector<double>(t.size(), 0.0), 1e-9);
  CHECK(ok.holds);
  std::vector<double> low(alpha.size(), 1.0);
  const GronwallReport bad = gronwall_envelope(t, y, low, std::vector<double>(t.size(), 0.0), 1e-9);
  CHECK_FALSE(bad.holds);
  CHECK(bad.first_violation > 0);
}

TEST_CASE("growth cover of a double exponential") {
  std::vector<double> t, phi;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    phi.push_back(std::exp(std::exp(0.2 * t.back()) * 2.0) - std::exp(1.0));
  }
  const GrowthReport r = growth_bound_check(t, phi);
  CHECK(r.covered);
  CHECK(r.r2 > 0.99);
}

TEST_CASE("twin delta of identical states is zero") {
  RunConfig cfg;
  cfg.N = 16;
  cfg.ic.type = IcType::random_spectrum;
  cfg.ic.q_amplitude = 0.1;
  SpectralContext ctx(cfg.grid());
  const StateFields s = make_initial(cfg);
  const TwinDelta d = twin_delta(ctx, s, s);
  CHECK(d.dQ_h1 == 0.0);
  CHECK(d.du_l2 == 0.0);
}
