#include <benchmark/benchmark.h>

#include "alcs/config.hpp"
#include "alcs/dynamics.hpp"
#include "alcs/initial.hpp"
#include "alcs/integrator.hpp"

namespace {

alcs::RunConfig bench_config(int n) {
  alcs::RunConfig cfg;
  cfg.N = n;
  cfg.ic.type = alcs::IcType::random_spectrum;
  cfg.ic.seed = 7;
  cfg.ic.q_amplitude = 0.1;
  cfg.model.kappa = 0.5;
  return cfg;
}

void BM_FftRoundTrip(benchmark::State& st) {
  const alcs::Grid2D g(static_cast<int>(st.range(0)));
  alcs::SpectralContext ctx(g);
  alcs::PortableRng rng(1);
  const alcs::ScalarField f = alcs::random_field(ctx, rng, {}, 1.0);
  alcs::SpectralField h(g);
  alcs::ScalarField back(g);
  for (auto _ : st) {
    ctx.forward(f.v.data(), h.c.data());
    ctx.inverse(h.c.data(), back.v.data());
    benchmark::DoNotOptimize(back.v.data());
  }
}
BENCHMARK(BM_FftRoundTrip)->Arg(64)->Arg(128)->Arg(256);

void BM_Nonlinear(benchmark::State& st, alcs::Mode mode) {
  alcs::RunConfig cfg = bench_config(static_cast<int>(st.range(0)));
  cfg.model.mode = mode;
  if (mode == alcs::Mode::mollified) cfg.model.eps = 0.1;
  alcs::SpectralContext ctx(cfg.grid());
  const alcs::SpectralState s = alcs::to_spectral(ctx, alcs::make_initial(cfg));
  alcs::RhsAssembler rhs(ctx, cfg.model);
  alcs::SpectralRhs out(cfg.grid());
  for (auto _ : st) {
    rhs.nonlinear(s, out);
    benchmark::DoNotOptimize(out.q11.c.data());
  }
}
BENCHMARK_CAPTURE(BM_Nonlinear, direct, alcs::Mode::direct)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(BM_Nonlinear, mollified, alcs::Mode::mollified)->Arg(64)->Arg(128);

void BM_Etd2Step(benchmark::State& st) {
  alcs::RunConfig cfg = bench_config(static_cast<int>(st.range(0)));
  alcs::SpectralContext ctx(cfg.grid());
  alcs::SpectralState s = alcs::to_spectral(ctx, alcs::make_initial(cfg));
  alcs::RhsAssembler rhs(ctx, cfg.model);
  alcs::Integrator integ(rhs, 2);
  for (auto _ : st) {
    integ.step(s, 1e-4);
    benchmark::DoNotOptimize(s.q11.c.data());
  }
}
BENCHMARK(BM_Etd2Step)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
