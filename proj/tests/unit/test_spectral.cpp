#include <doctest.h>

#include <cmath>

#include "alcs/initial.hpp"
#include "alcs/spectral.hpp"

using namespace alcs;

namespace {

ScalarField sample(const Grid2D& g, double (*f)(double, double)) {
  ScalarField s(g);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) s(r, c) = f(c * g.dx(), r * g.dx());
  return s;
}

}  // namespace

TEST_CASE("forward/inverse roundtrip and normalization") {
  const Grid2D g(32);
  SpectralContext ctx(g);
  const ScalarField one(g, 1.0);
  const SpectralField h = ctx.forward(one);
  CHECK(h.c[0].real() == doctest::Approx(1.0).epsilon(1e-15));
  PortableRng rng(3);
  const ScalarField f = random_field(ctx, rng, {}, 1.0);
  const ScalarField back = ctx.inverse(ctx.forward(f));
  for (std::size_t i = 0; i < f.v.size(); ++i) CHECK(back.v[i] == doctest::Approx(f.v[i]).epsilon(1e-13));
}

TEST_CASE("spectral derivatives of trigonometric fields") {
  const Grid2D g(32);
  SpectralContext ctx(g);
  const ScalarField f = sample(g, [](double x, double y) { return std::sin(2 * x) * std::cos(3 * y); });
  const auto gr = gradient(ctx, f);
  const ScalarField lap = laplacian(ctx, f);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) {
      const double x = c * g.dx(), y = r * g.dx();
      CHECK(std::abs(gr[0](r, c) - 2 * std::cos(2 * x) * std::cos(3 * y)) < 1e-12);
      CHECK(std::abs(gr[1](r, c) + 3 * std::sin(2 * x) * std::sin(3 * y)) < 1e-12);
      CHECK(std::abs(lap(r, c) + 13 * f(r, c)) < 1e-11);
    }
}

TEST_CASE("Leray projection removes gradients and keeps solenoidal fields") {
  const Grid2D g(32);
  SpectralContext ctx(g);
  VelocityField grad_field(g);
  const auto gp = gradient(ctx, sample(g, [](double x, double y) { return std::sin(x + 2 * y); }));
  grad_field.x = gp[0];
  grad_field.y = gp[1];
  const VelocityField p = leray_project(ctx, grad_field);
  CHECK(max_abs(p.x) < 1e-13);
  CHECK(max_abs(p.y) < 1e-13);

  VelocityField tg(g);
  tg.x = sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
  tg.y = sample(g, [](double x, double y) { return -std::cos(x) * std::sin(y); });
  CHECK(is_divergence_free(ctx, tg));
  const VelocityField q = leray_project(ctx, tg);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(q.x.v[i] - tg.x.v[i]) < 1e-14);
}

TEST_CASE("truncation, mollifier and dealiasing symbols") {
  CHECK(jn_max_index(Grid2D(128)) == 5);
  CHECK(jn_max_index(Grid2D(64)) == 4);
  const Grid2D g(64);
  const Wavenumbers wn(g);
  const auto jn = jn_mask(wn, 2);
  const auto moll = mollifier_symbol(wn, 0.1);
  for (std::size_t m = 0; m < wn.size(); ++m) {
    const double r = std::sqrt(wn.xi2[m]);
    CHECK(jn[m] == ((r >= 0.25 && r <= 4.0) ? 1.0 : 0.0));
    CHECK(moll[m] == doctest::Approx(std::exp(-0.005 * wn.xi2[m])));
    const bool keep = std::abs(wn.kx[m]) <= 21 && std::abs(wn.ky[m]) <= 21;
    CHECK(wn.dealias[m] == (keep ? 1.0 : 0.0));
  }
  CHECK(jn_mask(wn, 2, true)[0] == 1.0);
  CHECK(jn_mask(wn, 2, false)[0] == 0.0);
}

TEST_CASE("spectral inner product matches grid quadrature") {
  const Grid2D g(32);
  SpectralContext ctx(g);
  PortableRng rng(9);
  const ScalarField a = random_field(ctx, rng, {}, 1.0);
  const ScalarField b = random_field(ctx, rng, {}, 1.0);
  CHECK(spectral_inner(ctx.wn(), ctx.forward(a), ctx.forward(b)) == doctest::Approx(inner(a, b)).epsilon(1e-12));
}

TEST_CASE("grid mismatch is rejected") {
  CHECK_THROWS(require_same_grid(Grid2D(32), Grid2D(64), "test"));
}
