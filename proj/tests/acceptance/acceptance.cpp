// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "alcs/checks.hpp"
#include "alcs/config.hpp"
#include "alcs/diagnostics.hpp"
#include "alcs/dynamics.hpp"
#include "alcs/experiments.hpp"
#include "alcs/initial.hpp"
#include "alcs/integrator.hpp"

using namespace alcs;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;

// Energy identity and inequality.
constexpr double kIdentityTol = 1e-4;
constexpr double kIdentityRatioLo = 3.5, kIdentityRatioHi = 4.5;
constexpr double kIdentitySeconds = 60.0;
constexpr double kInequalityTol = -1e-6;
// Co-rotation cancellation ensemble.
constexpr int kCorotationSamples = 100;
constexpr double kCorotationSeconds = 10.0;
// Tensor ensembles.
constexpr long kTensorSamples = 100000;
// H^s equivalence.
constexpr int kHsFields = 100;
// Friedrichs n-sweep.
constexpr double kSweepSpread = 0.20;
constexpr double kSweepSeconds = 600.0;
// Mollified eps-sweep.
constexpr double kEpsSpread = 2.0;
// Twins.
constexpr double kTwinIdentical = 1e-12;
constexpr double kTwinSlope = 2.0, kTwinSlopeTol = 0.3;
// Integrator.
constexpr double kDiffusionTol = 1e-13;
constexpr double kSelfSlope = 2.0, kSelfSlopeTol = 0.2;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s  %-34s  %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char b[96];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

double seconds_of(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Smooth small active data on 64^2, the base of the identity, twin and determinism runs.
RunConfig active_base() {
  RunConfig c;
  c.N = 64;
  c.model.kappa = 0.5;
  c.ic.type = IcType::random_spectrum;
  c.ic.seed = 11;
  c.ic.amplitude = 0.1;
  c.ic.q_amplitude = 0.1;
  c.ic.peak_wavenumber = 1.0;
  c.time.dt = 1e-3;
  c.time.t_end = 1.0;
  return c;
}

RunArtifacts run_quiet(const RunConfig& c) {
  ExecuteOptions o;
  o.write_files = false;
  return execute_run(c, {}, o);
}

double max_interior_residual(const std::vector<EnergyRecord>& r) {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) m = std::max(m, r[i].residual);
  return m;
}

void energy_criteria() {
  RunConfig c = active_base();
  RunArtifacts coarse, fine;
  const double secs = seconds_of([&] { coarse = run_quiet(c); });
  c.time.dt = 5e-4;
  fine = run_quiet(c);
  const double r1 = max_interior_residual(coarse.records), r2 = max_interior_residual(fine.records);
  const double ratio = r1 / r2;
  const bool ok = coarse.status == kExitOk && fine.status == kExitOk && r1 <= kIdentityTol &&
                  ratio >= kIdentityRatioLo && ratio <= kIdentityRatioHi && secs <= kIdentitySeconds;
  report(ok, "energy identity",
         fmt("max residual %.3e", r1) + fmt(" (dt/2: %.3e,", r2) + fmt(" ratio %.3f)", ratio) +
             fmt(" run %.1f s", secs));

  double worst = INFINITY;
  for (const auto& r : coarse.records)
    worst = std::min(worst, energy_inequality(r, c.model) / inequality_scale(r, c.model));
  report(worst >= kInequalityTol, "energy inequality", fmt("min margin/scale %.3e", worst));
}

void corotation_criterion() {
  CheckResult r;
  const double secs = seconds_of([&] { r = check_corotation_cancellation(Grid2D(64), kCorotationSamples, kSeed); });
  report(r.passed && secs <= kCorotationSeconds, "co-rotation cancellation",
         fmt("max relative defect %.3e", r.value) + fmt(" in %.2f s", secs));
}

void tensor_criteria() {
  const CheckResult sq = check_square_identity_2d(kTensorSamples, kSeed);
  const CheckResult cu = check_cubic_trace_2d(kTensorSamples, kSeed + 1);
  report(sq.passed && cu.passed, "2D traceless identities",
         fmt("max |Q^2 - tr/2 I| %.3e", sq.value) + fmt(", max |tr Q^3| %.3e", cu.value));
  const CheckResult b = check_trace_cubic_bound(kTensorSamples, kSeed + 2);
  report(b.passed, "trace-cubic bound", fmt("%.0f violations", b.value) + " over " + b.detail);
}

void operator_criteria() {
  std::vector<CheckResult> all = check_leray(Grid2D(64), kSeed + 3);
  for (auto& c : check_littlewood_paley(Grid2D(64), kSeed + 4)) all.push_back(c);
  bool ok = true;
  std::string detail;
  for (const auto& c : all) {
    ok = ok && c.passed;
    detail += (detail.empty() ? "" : ", ") + c.name + fmt(" %.1e", c.value);
  }
  report(ok, "Leray / LP operators", detail);
  const CheckResult h = check_hs_equivalence(Grid2D(64), kHsFields, kSeed + 5);
  report(h.passed, "H^s norm equivalence", h.detail);
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? *hi / *lo : INFINITY;
}

void friedrichs_criterion() {
  RunConfig c;
  c.N = 128;
  c.model.mode = Mode::friedrichs;
  c.model.kappa = 0.5;
  c.ic.type = IcType::random_spectrum;
  c.ic.seed = 5;
  c.ic.amplitude = 0.1;
  c.ic.q_amplitude = 0.1;
  c.ic.peak_wavenumber = 1.5;
  c.time.t_end = 2.0;
  c.energy_every = 10;
  std::vector<SweepRow> rows;
  bool ran = true;
  const double secs = seconds_of([&] {
    for (int n : {3, 4, 5}) {
      c.model.n_trunc = n;
      const RunArtifacts a = run_quiet(c);
      ran = ran && a.status == kExitOk;
      rows.push_back(summarize(n, a, c.model));
    }
  });
  double worst = 0.0;
  for (double SweepRow::*f : {&SweepRow::max_h1_Q, &SweepRow::max_l2_u, &SweepRow::int_grad_u_sq,
                              &SweepRow::int_lap_q_sq}) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.*f);
    worst = std::max(worst, spread(v) - 1.0);
  }
  report(ran && worst <= kSweepSpread && secs <= kSweepSeconds, "Friedrichs n-sweep",
         fmt("max relative variation %.3e", worst) + fmt(" in %.1f s", secs));
}

void mollified_criterion() {
  RunConfig c;
  c.N = 64;
  c.model.mode = Mode::mollified;
  c.model.kappa = 0.5;
  c.ic.type = IcType::random_spectrum;
  c.ic.seed = 5;
  c.ic.amplitude = 0.1;
  c.ic.q_amplitude = 0.1;
  c.ic.peak_wavenumber = 1.5;
  c.time.t_end = 2.0;
  c.energy_every = 10;
  std::vector<double> a, b;
  bool ran = true;
  for (double e : {0.2, 0.1, 0.05}) {
    c.model.eps = e;
    const RunArtifacts r = run_quiet(c);
    ran = ran && r.status == kExitOk;
    const SweepRow row = summarize(e, r, c.model);
    a.push_back(row.max_eps_u_gradQ);
    b.push_back(row.max_eps_grad_u);
  }
  const double s1 = spread(a), s2 = spread(b);
  report(ran && s1 <= kEpsSpread && s2 <= kEpsSpread, "mollified eps-sweep",
         fmt("spread eps|Ru.gradQ|^3 %.3f", s1) + fmt(", eps|grad Ru|^4 %.3f", s2) +
             fmt(" (C = %.3e", *std::max_element(a.begin(), a.end())) +
             fmt(", %.3e)", *std::max_element(b.begin(), b.end())));
}

void eps_consistency_criterion() {
  const CheckResult r = check_eps_consistency(Grid2D(64), 10, kSeed + 6);
  report(r.passed, "eps-term energy consistency", fmt("max relative defect %.3e", r.value));
}

double final_y(const TwinResult& t) { return t.deltas.back().dQ_h1 + t.deltas.back().du_l2; }

void twin_criterion() {
  auto with_dt = [](double dt) {
    RunConfig c = active_base();
    c.time.dt = dt;
    c.energy_every = std::lround(1e-2 / dt);
    return c;
  };
  const TwinResult same = run_twin(with_dt(1e-3), with_dt(1e-3));
  double worst = 0.0;
  for (const auto& d : same.deltas) worst = std::max({worst, d.dQ_h1, d.du_l2});
  const TwinResult coarse = run_twin(with_dt(2e-3), with_dt(1e-3));
  const TwinResult fine = run_twin(with_dt(1e-3), with_dt(5e-4));
  // Deltas are squared norms; the order is read off their square roots.
  const double slope = 0.5 * std::log2(final_y(coarse) / final_y(fine));
  const bool env = same.envelope.holds && coarse.envelope.holds && fine.envelope.holds;
  const bool ok = same.status == kExitOk && coarse.status == kExitOk && fine.status == kExitOk &&
                  worst <= kTwinIdentical && std::abs(slope - kTwinSlope) <= kTwinSlopeTol && env;
  report(ok, "weak-strong twins",
         fmt("identical max %.1e", worst) + fmt(", refinement slope %.3f", slope) +
             ", envelope " + (env ? "covers" : "violated"));
}

void growth_criterion() {
  RunConfig c = active_base();
  c.time.dt = 2e-3;
  c.time.t_end = 20.0;
  c.energy_every = 5;
  const RunArtifacts r = run_quiet(c);
  std::vector<double> t, phi;
  for (const auto& e : r.records) {
    t.push_back(e.t);
    phi.push_back(e.hs_phi);
  }
  const GrowthReport g = growth_bound_check(t, phi);
  report(r.status == kExitOk && g.covered, "double-exponential growth cover",
         fmt("alpha %.4f", g.alpha) + fmt(", beta %.4f", g.beta) + fmt(" over %.0f samples", t.size()));
}

double state_distance(SpectralContext& ctx, const SpectralState& a, const SpectralState& b) {
  double s = 0.0;
  for (auto f : {&SpectralState::q11, &SpectralState::q12, &SpectralState::ux, &SpectralState::uy}) {
    SpectralField d = a.*f;
    for (std::size_t i = 0; i < d.c.size(); ++i) d.c[i] -= (b.*f).c[i];
    s += spectral_inner(ctx.wn(), d, d);
  }
  return std::sqrt(s);
}

void integrator_criterion() {
  // Pure diffusion of one small Q mode (u = 0) and one shear mode (Q = 0).
  const Grid2D g(32);
  SpectralContext ctx(g);
  ModelParams p;
  p.a = 0.0;
  const double amp = 1e-7, dt = 1e-2;
  StateFields sq, su;
  sq.q = su.q = QTensorField(g);
  sq.u = su.u = VelocityField(g);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) {
      sq.q.q11(r, c) = amp * std::cos(2 * c * g.dx() + r * g.dx());
      su.u.x(r, c) = std::sin(3 * r * g.dx());
    }
  RhsAssembler rhs(ctx, p);
  Integrator integ(rhs, 2);
  SpectralState wq = to_spectral(ctx, sq), wu = to_spectral(ctx, su);
  integ.step(wq, dt);
  integ.step(wu, dt);
  const StateFields fq = to_physical(ctx, wq), fu = to_physical(ctx, wu);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    err = std::max(err, std::abs(fq.q.q11.v[i] - std::exp(-p.gamma * 5 * dt) * sq.q.q11.v[i]) / amp);
    err = std::max(err, std::abs(fu.u.x.v[i] - std::exp(-p.mu * 9 * dt) * su.u.x.v[i]));
  }

  RunConfig c = active_base();
  c.time.t_end = 0.5;
  SpectralContext ctx64(c.grid());
  const SpectralState s0 = to_spectral(ctx64, make_initial(c));
  std::vector<SpectralState> finals;
  for (double h : {4e-3, 2e-3, 1e-3}) {
    c.time.dt = h;
    finals.push_back(run(ctx64, s0, c.model, c.time, {}, {}).state);
  }
  const double e1 = state_distance(ctx64, finals[0], finals[1]);
  const double e2 = state_distance(ctx64, finals[1], finals[2]);
  const double slope = std::log2(e1 / e2);
  report(err <= kDiffusionTol && std::abs(slope - kSelfSlope) <= kSelfSlopeTol, "integrator exactness",
         fmt("diffusion error %.2e", err) + fmt(", self-convergence slope %.3f", slope));
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void determinism_criterion() {
  const fs::path root = fs::temp_directory_path() / "alcs_acceptance_determinism";
  fs::remove_all(root);
  RunConfig c = active_base();
  c.time.t_end = 0.2;
  execute_run(c, root / "a");
  execute_run(c, root / "b");
  const std::string a = slurp(root / "a" / "energy.csv"), b = slurp(root / "b" / "energy.csv");
  report(!a.empty() && a == b, "determinism", std::to_string(a.size()) + " bytes compared");
  fs::remove_all(root);
}

}  // namespace

int main() {
  energy_criteria();
  corotation_criterion();
  tensor_criteria();
  operator_criteria();
  friedrichs_criterion();
  mollified_criterion();
  eps_consistency_criterion();
  twin_criterion();
  growth_criterion();
  integrator_criterion();
  determinism_criterion();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
