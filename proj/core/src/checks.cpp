#include "alcs/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "alcs/diagnostics.hpp"
#include "alcs/dynamics.hpp"
#include "alcs/initial.hpp"
#include "alcs/integrator.hpp"
#include "alcs/littlewood_paley.hpp"
#include "alcs/tensor.hpp"

namespace alcs {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

CheckResult below(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value <= tol, value, tol, std::move(detail)};
}

const SpectrumShape kFlat{0.0, 1e300, 1e300};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Uniform on [-1, 1] times a log-uniform scale in [1e-3, 1e3].
double wide(PortableRng& rng, double scale) { return (2.0 * rng.uniform() - 1.0) * scale; }
double log_scale(PortableRng& rng) { return std::pow(10.0, 6.0 * rng.uniform() - 3.0); }

}  // namespace

CheckResult check_square_identity_2d(long samples, std::uint64_t seed) {
  PortableRng rng(seed);
  double worst = 0.0;
  for (long k = 0; k < samples; ++k) {
    const QTensor q = QTensor::two(wide(rng, 1.0), wide(rng, 1.0));
    const SquareMatrix m = full_matrix(q);
    SquareMatrix sq = matmul(m, m);
    const double half = 0.5 * trace(sq);
    sq(0, 0) -= half;
    sq(1, 1) -= half;
    worst = std::max(worst, std::sqrt(frobenius(sq, sq)));
  }
  return below("2D Q^2 = tr(Q^2)/2 I", worst, 1e-14, std::to_string(samples) + " tensors");
}

CheckResult check_cubic_trace_2d(long samples, std::uint64_t seed) {
  PortableRng rng(seed);
  double worst = 0.0;
  for (long k = 0; k < samples; ++k) {
    const SquareMatrix m = full_matrix(QTensor::two(wide(rng, 1.0), wide(rng, 1.0)));
    worst = std::max(worst, std::abs(trace(matmul(matmul(m, m), m))));
  }
  return below("2D tr(Q^3) = 0", worst, 1e-15, std::to_string(samples) + " tensors");
}

CheckResult check_trace_cubic_bound(long samples, std::uint64_t seed) {
  PortableRng rng(seed);
  const double eps_grid[] = {1e-2, 1e-1, 1.0, 1e1, 1e2};
  long violations = 0;
  for (long k = 0; k < samples; ++k) {
    const double s = log_scale(rng);
    const QTensor q = QTensor::three(wide(rng, s), wide(rng, s), wide(rng, s), wide(rng, s), wide(rng, s));
    for (double e : eps_grid)
      if (!trace_cubic_bound_check(q, e).holds) ++violations;
  }
  return below("trace-cubic bound", static_cast<double>(violations), 0.0,
               std::to_string(samples) + " tensors x 5 eps");
}

CheckResult check_corotation_cancellation(const Grid2D& g, int samples, std::uint64_t seed,
                                          double stress_sign) {
  SpectralContext ctx(g);
  PortableRng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    QTensorField q(g), qp(g);
    q.q11 = random_field(ctx, rng, kFlat, 1.0);
    q.q12 = random_field(ctx, rng, kFlat, 1.0);
    qp.q11 = random_field(ctx, rng, kFlat, 1.0);
    qp.q12 = random_field(ctx, rng, kFlat, 1.0);
    const VelocityField u = random_velocity(ctx, rng, kFlat, 1.0);
    QTensorField lap(g);
    lap.q11 = laplacian(ctx, q.q11);
    lap.q12 = laplacian(ctx, q.q12);
    const StrainVorticity sv = strain_vorticity(ctx, u);
    QTensorField rot = corotation(qp, sv.w12);  // Q' Omega - Omega Q'
    for (auto* f : {&rot.q11, &rot.q12})
      for (double& v : f->v) v = -v;
    const double first = inner(rot, lap);
    const double second = inner(antisymmetric_stress_divergence(ctx, qp, lap, stress_sign), u);
    const double scale = std::min(std::abs(first), std::abs(second));
    const double rel = scale > 0.0 ? std::abs(first - second) / scale : std::abs(first - second);
    worst = std::max(worst, rel);
  }
  return below("co-rotation / antisymmetric stress cancellation", worst, 1e-10,
               std::to_string(samples) + " triples on " + std::to_string(g.n()) + "^2");
}

std::vector<CheckResult> check_leray(const Grid2D& g, std::uint64_t seed) {
  SpectralContext ctx(g);
  PortableRng rng(seed);
  VelocityField v(g);
  v.x = random_field(ctx, rng, kFlat, 1.0);
  v.y = random_field(ctx, rng, kFlat, 1.0);
  const VelocityField p = leray_project(ctx, v);
  const VelocityField pp = leray_project(ctx, p);
  const double div = max_abs(divergence(ctx, p).v);
  const double idem = std::max(max_abs_diff(pp.x.v, p.x.v), max_abs_diff(pp.y.v, p.y.v));
  return {below("Leray divergence", div, 1e-12), below("Leray idempotence", idem, 1e-13)};
}

std::vector<CheckResult> check_littlewood_paley(const Grid2D& g, std::uint64_t seed) {
  SpectralContext ctx(g);
  PortableRng rng(seed);
  const DyadicPartition part = build_partition(g);
  double pou = 0.0;
  for (std::size_t i = 0; i < part.chi.size(); ++i) {
    double s = part.chi[i];
    for (const auto& ph : part.phi) s += ph[i];
    pou = std::max(pou, std::abs(s - 1.0));
  }
  const SpectrumShape broad{0.0, 1e300, 1e300};
  const ScalarField f = random_field(ctx, rng, broad, 1.0);
  const DyadicBlocks b = decompose(ctx, part, f);
  std::vector<double> sum = b.s0.v;
  for (const auto& blk : b.blocks)
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += blk.v[i];
  const double rec = max_abs_diff(sum, f.v) / max_abs(f.v);

  const ScalarField u = random_field(ctx, rng, broad, 1.0);
  const ScalarField v = random_field(ctx, rng, broad, 1.0);
  const BonyParts bp = bony_decompose(ctx, part, u, v);
  std::vector<double> prod(u.v.size()), parts(u.v.size());
  for (std::size_t i = 0; i < prod.size(); ++i) {
    prod[i] = u.v[i] * v.v[i];
    parts[i] = bp.t_uv.v[i] + bp.t_vu.v[i] + bp.r.v[i];
  }
  const double bony = max_abs_diff(parts, prod) / max_abs(prod);
  return {below("partition of unity", pou, 1e-12), below("dyadic block reconstruction", rec, 1e-10),
          below("Bony reconstruction", bony, 1e-9)};
}

CheckResult check_hs_equivalence(const Grid2D& g, int fields, std::uint64_t seed) {
  SpectralContext ctx(g);
  PortableRng rng(seed);
  const Wavenumbers& wn = ctx.wn();
  const DyadicPartition part = build_partition(g);
  const double exps[] = {0.0, 0.5, 1.0, 2.0};
  std::vector<std::vector<double>> weights;
  for (double s : exps) weights.push_back(part.hs_weight(s));
  double lo = INFINITY, hi = 0.0;
  for (int k = 0; k < fields; ++k) {
    const SpectrumShape sh{rng.uniform() * g.dealias_cutoff(), 0.5 + 3.0 * rng.uniform(), 1e300};
    const SpectralField f = ctx.forward(random_field(ctx, rng, sh, 1.0));
    for (std::size_t e = 0; e < std::size(exps); ++e) {
      double direct = 0.0;
      for (std::size_t i = 0; i < wn.size(); ++i)
        direct += wn.weight[i] * std::pow(1.0 + wn.xi2[i], exps[e]) * std::norm(f.c[i]);
      direct *= g.area();
      const double r = std::sqrt(hs_norm_sq(wn, weights[e], f) / direct);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  CheckResult c;
  c.name = "dyadic vs Fourier H^s norm";
  c.passed = lo >= 0.25 && hi <= 4.0;
  c.value = std::max(1.0 / lo, hi);
  c.tolerance = 4.0;
  c.detail = "ratio range [" + num(lo) + ", " + num(hi) + "] over " + std::to_string(fields) + " fields";
  return c;
}

CheckResult check_eps_consistency(const Grid2D& g, int samples, std::uint64_t seed) {
  SpectralContext ctx(g);
  PortableRng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    ModelParams p;
    p.mode = Mode::mollified;
    p.eps = 0.05 + 0.2 * rng.uniform();
    StateFields s;
    s.q = QTensorField(g);
    s.q.q11 = random_field(ctx, rng, kFlat, 0.5);
    s.q.q12 = random_field(ctx, rng, kFlat, 0.5);
    s.u = random_velocity(ctx, rng, kFlat, 0.5);
    const VelocityField e = eps_terms(ctx, s, p);
    const EnergyRecord r = energy(ctx, s, p);
    const double dissip = r.eps_u_gradQ + r.eps_grad_u;
    const double rel = std::abs(inner(e, s.u) + dissip) / std::max(dissip, 1e-300);
    worst = std::max(worst, rel);
  }
  return below("eps-term energy consistency", worst, 1e-8, std::to_string(samples) + " states");
}

CheckResult check_energy_short_run(const Grid2D& g, std::uint64_t seed, double stress_sign) {
  RunConfig cfg;
  cfg.N = g.n();
  cfg.L = g.length();
  cfg.ic.type = IcType::random_spectrum;
  cfg.ic.seed = seed;
  cfg.ic.amplitude = 0.1;
  cfg.ic.q_amplitude = 0.1;
  cfg.ic.peak_wavenumber = 1.0;
  cfg.model.kappa = 0.5;
  cfg.time.dt = 1e-3;
  cfg.time.t_end = 0.05;
  SpectralContext ctx(g);
  const SpectralState s0 = to_spectral(ctx, make_initial(cfg));
  RunOptions opt;
  opt.rhs.stress_sign = stress_sign;
  double worst = 0.0;
  RunSinks sinks;
  std::vector<EnergyRecord> rec;
  sinks.energy = [&](const EnergyRecord& r) { rec.push_back(r); };
  run(ctx, s0, cfg.model, cfg.time, opt, sinks);
  for (std::size_t i = 1; i + 1 < rec.size(); ++i) worst = std::max(worst, rec[i].residual);
  return below("energy identity (short run)", worst, 1e-4,
               std::to_string(rec.size()) + " records on " + std::to_string(g.n()) + "^2");
}

std::vector<CheckResult> run_check_suite(const RunConfig& cfg, const CheckOptions& opt) {
  const Grid2D g = cfg.grid();
  std::vector<CheckResult> out;
  out.push_back(check_square_identity_2d(opt.tensor_samples, opt.seed));
  out.push_back(check_cubic_trace_2d(opt.tensor_samples, opt.seed + 1));
  out.push_back(check_trace_cubic_bound(opt.tensor_samples, opt.seed + 2));
  out.push_back(check_corotation_cancellation(g, opt.corotation_samples, opt.seed + 3, opt.stress_sign));
  for (auto& c : check_leray(g, opt.seed + 4)) out.push_back(std::move(c));
  for (auto& c : check_littlewood_paley(g, opt.seed + 5)) out.push_back(std::move(c));
  out.push_back(check_hs_equivalence(g, opt.lp_fields, opt.seed + 6));
  out.push_back(check_eps_consistency(g, 10, opt.seed + 7));
  out.push_back(check_energy_short_run(g, opt.seed + 8, opt.stress_sign));
  return out;
}

int cmd_check(const RunConfig& cfg, const CheckOptions& opt, std::ostream& out) {
  const auto results = run_check_suite(cfg, opt);
  bool ok = true;
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s  %-48s  %-10s  tol %-10s  ", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), num(r.value).c_str(), num(r.tolerance).c_str());
    out << line << r.detail << "\n";
    ok = ok && r.passed;
  }
  if (!ok) {
    out << "failing:";
    for (const auto& r : results)
      if (!r.passed) out << " [" << r.name << "]";
    out << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace alcs
