#include <doctest.h>

#include <cmath>

#include "alcs/initial.hpp"
#include "alcs/littlewood_paley.hpp"

using namespace alcs;

TEST_CASE("radial profiles") {
  CHECK(lp_chi(0.0) == 1.0);
  CHECK(lp_chi(0.5) == 1.0);
  CHECK(lp_chi(10.0) == 0.0);
  for (double r = 0.0; r < 40.0; r += 0.01) {
    CHECK(lp_chi(r) >= 0.0);
    CHECK(lp_chi(r) <= 1.0);
    CHECK(lp_phi(r) >= 0.0);
  }
  // phi vanishes near zero and far out.
  CHECK(lp_phi(0.1) == 0.0);
  CHECK(lp_phi(100.0) == 0.0);
}

TEST_CASE("partition of unity on the grid") {
  const DyadicPartition part = build_partition(Grid2D(64));
  for (std::size_t m = 0; m < part.chi.size(); ++m) {
    double s = part.chi[m];
    for (const auto& ph : part.phi) s += ph[m];
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("H^s norm of a constant and of a single mode") {
  const Grid2D g(32);
  SpectralContext ctx(g);
  const DyadicPartition part = build_partition(g);
  const ScalarField one(g, 1.0);
  CHECK(hs_norm(ctx, part, one, 1.0) == doctest::Approx(g.length()).epsilon(1e-12));
  // The weight chi^2 + sum phi_j^2 lies in [1/2, 1] since at most two profiles overlap.
  ScalarField s(g);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) s(r, c) = std::sin(4.0 * c * g.dx());
  const double n0 = hs_norm(ctx, part, s, 0.0);
  const double l2 = std::sqrt(0.5) * g.length();
  CHECK(n0 <= l2 * (1 + 1e-12));
  CHECK(n0 >= l2 * std::sqrt(0.5) * (1 - 1e-12));
  const double n1 = hs_norm(ctx, part, s, 1.0);
  CHECK(n1 > n0);
}

TEST_CASE("block decomposition reconstructs") {
  const Grid2D g(64);
  SpectralContext ctx(g);
  const DyadicPartition part = build_partition(g);
  PortableRng rng(1);
  const ScalarField f = random_field(ctx, rng, {4.0, 6.0}, 1.0);
  const DyadicBlocks b = decompose(ctx, part, f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = b.s0.v[i];
    for (const auto& blk : b.blocks) s += blk.v[i];
    CHECK(std::abs(s - f.v[i]) < 1e-12);
  }
  CHECK_THROWS_AS(delta_j(ctx, part, f, part.j_max + 1), std::out_of_range);
}
