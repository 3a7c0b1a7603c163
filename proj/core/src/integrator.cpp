#include "alcs/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace alcs {

void TimeSetup::validate() const {
  std::string msg;
  auto add = [&](const char* m) { msg += msg.empty() ? m : std::string("; ") + m; };
  if (!(dt > 0.0) || !std::isfinite(dt)) add("dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) add("t_end must be >= 0");
  if (scheme != 1 && scheme != 2) add("scheme must be 1 or 2");
  if (!(cfl_target > 0.0 && cfl_target <= 1.0)) add("cfl_target must be in (0, 1]");
  if (!(dt_max > 0.0)) add("dt_max must be > 0");
  if (!msg.empty()) throw std::invalid_argument(msg);
}

double cfl_dt(SpectralContext& ctx, const SpectralState& s, const ModelParams& p, double cfl_target,
              double dt_max) {
  const Grid2D& g = ctx.grid();
  std::vector<double> a(g.size()), b(g.size());
  ctx.inverse(s.ux.c.data(), a.data());
  ctx.inverse(s.uy.c.data(), b.data());
  double umax = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = std::sqrt(a[i] * a[i] + b[i] * b[i]);
    if (!std::isfinite(v)) throw BlowUpError("cfl_dt: non-finite velocity");
    umax = std::max(umax, v);
  }
  ctx.inverse(s.q11.c.data(), a.data());
  ctx.inverse(s.q12.c.data(), b.data());
  double qmax = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = 2.0 * (a[i] * a[i] + b[i] * b[i]);
    if (!std::isfinite(v)) throw BlowUpError("cfl_dt: non-finite Q");
    qmax = std::max(qmax, v);
  }
  double dt = dt_max;
  if (umax > 0.0) dt = std::min(dt, cfl_target * g.dx() / umax);
  const double rate = p.gamma * (std::abs(p.a) + 3.0 * p.c * qmax);
  if (rate > 0.0) dt = std::min(dt, cfl_target / rate);
  return dt;
}

double etd_phi1(double z) {
  if (std::abs(z) < 0.1) {
    double term = 1.0, sum = 1.0;
    for (int k = 2; k <= 10; ++k) {
      term *= z / k;
      sum += term;
    }
    return sum;
  }
  return std::expm1(z) / z;
}

double etd_phi2(double z) {
  if (std::abs(z) < 0.1) {
    double term = 0.5, sum = 0.5;
    for (int k = 3; k <= 12; ++k) {
      term *= z / k;
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

long step_count(double t_end, double dt) {
  if (t_end <= 0.0) return 0;
  return static_cast<long>(std::ceil(t_end / dt - 1e-9));
}

Integrator::Integrator(RhsAssembler& rhs, int scheme) : rhs_(rhs), scheme_(scheme) {
  if (scheme != 1 && scheme != 2) throw std::invalid_argument("scheme must be 1 or 2");
  const Grid2D& g = rhs_.context().grid();
  n0_ = SpectralRhs(g);
  n1_ = SpectralRhs(g);
  a_ = SpectralState(g);
}

void Integrator::prepare(double dt) {
  if (dt == cached_dt_) return;
  const Wavenumbers& wn = rhs_.context().wn();
  const double rate[2] = {rhs_.params().gamma, rhs_.params().mu};
  for (int k = 0; k < 2; ++k) {
    ex_[k].resize(wn.size());
    p1_[k].resize(wn.size());
    p2_[k].resize(wn.size());
    for (std::size_t i = 0; i < wn.size(); ++i) {
      const double z = -rate[k] * wn.xi2[i] * dt;
      ex_[k][i] = std::exp(z);
      p1_[k][i] = dt * etd_phi1(z);
      p2_[k][i] = dt * etd_phi2(z);
    }
  }
  cached_dt_ = dt;
}

namespace {

bool finite(const SpectralState& s) {
  for (const SpectralField* f : {&s.q11, &s.q12, &s.ux, &s.uy})
    for (const Complex& z : f->c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

void Integrator::step(SpectralState& s, double dt) {
  prepare(dt);
  const Wavenumbers& wn = rhs_.context().wn();
  const std::size_t m = wn.size();
  rhs_.nonlinear(s, n0_);
  a_.t = s.t + dt;
  for (std::size_t i = 0; i < m; ++i) {
    a_.q11.c[i] = ex_[0][i] * s.q11.c[i] + p1_[0][i] * n0_.q11.c[i];
    a_.q12.c[i] = ex_[0][i] * s.q12.c[i] + p1_[0][i] * n0_.q12.c[i];
    a_.ux.c[i] = ex_[1][i] * s.ux.c[i] + p1_[1][i] * n0_.ux.c[i];
    a_.uy.c[i] = ex_[1][i] * s.uy.c[i] + p1_[1][i] * n0_.uy.c[i];
  }
  leray_project(wn, a_.ux, a_.uy);
  if (scheme_ == 2) {
    rhs_.nonlinear(a_, n1_);
    for (std::size_t i = 0; i < m; ++i) {
      a_.q11.c[i] += p2_[0][i] * (n1_.q11.c[i] - n0_.q11.c[i]);
      a_.q12.c[i] += p2_[0][i] * (n1_.q12.c[i] - n0_.q12.c[i]);
      a_.ux.c[i] += p2_[1][i] * (n1_.ux.c[i] - n0_.ux.c[i]);
      a_.uy.c[i] += p2_[1][i] * (n1_.uy.c[i] - n0_.uy.c[i]);
    }
    leray_project(wn, a_.ux, a_.uy);
  }
  if (!finite(a_)) throw BlowUpError("non-finite state after step at t = " + std::to_string(a_.t));
  std::swap(s, a_);
}

namespace {

// Holds the last three records so each one can be emitted as soon as its rate is known.
class EnergyStream {
 public:
  explicit EnergyStream(const std::function<void(const EnergyRecord&)>& sink) : sink_(sink) {}

  void push(EnergyRecord r) {
    w_.push_back(r);
    ++count_;
    if (count_ == 3) {
      emit_one_sided(0, 1, 2);
      emit_centered();
    } else if (count_ > 3) {
      w_.pop_front();
      emit_centered();
    }
  }

  void finish() {
    if (count_ == 0) return;
    if (count_ == 1) {
      emit(w_[0], 0.0);
    } else if (count_ == 2) {
      const double d = one_sided_rate(w_[0].t, w_[0].E, w_[1].t, w_[1].E, w_[1].t, w_[1].E);
      emit(w_[0], d);
      emit(w_[1], d);
    } else {
      const std::size_t n = w_.size();
      emit_one_sided(n - 1, n - 2, n - 3);
    }
    count_ = 0;
    w_.clear();
  }

 private:
  void emit(EnergyRecord r, double d) {
    r.dEdt = d;
    r.residual = identity_residual(r, d);
    if (sink_) sink_(r);
  }
  void emit_one_sided(std::size_t i, std::size_t j, std::size_t k) {
    emit(w_[i], one_sided_rate(w_[i].t, w_[i].E, w_[j].t, w_[j].E, w_[k].t, w_[k].E));
  }
  void emit_centered() {
    const std::size_t n = w_.size();
    const auto& a = w_[n - 3];
    const auto& b = w_[n - 2];
    const auto& c = w_[n - 1];
    emit(b, centered_rate(a.t, a.E, b.t, b.E, c.t, c.E));
  }

  const std::function<void(const EnergyRecord&)>& sink_;
  std::deque<EnergyRecord> w_;
  long count_ = 0;
};

}  // namespace

RunResult run(SpectralContext& ctx, const SpectralState& s0, const ModelParams& p,
              const TimeSetup& setup, const RunOptions& opt, const RunSinks& sinks) {
  setup.validate();
  if (opt.energy_every < 1) throw std::invalid_argument("energy_every must be >= 1");
  if (opt.snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");
  require_same_grid(s0.grid(), ctx.grid(), "run");
  RhsAssembler rhs(ctx, p, opt.rhs);
  Integrator integ(rhs, setup.scheme);
  EnergyEvaluator energy_of(ctx, p, opt.s_exponent);
  EnergyStream stream(sinks.energy);

  RunResult res;
  res.state = s0;
  SpectralState& s = res.state;
  const double t0 = s0.t;
  const double duration = setup.t_end - t0;
  const long fixed_steps = setup.adaptive ? -1 : step_count(duration, setup.dt);

  stream.push(energy_of(s));
  if (sinks.snapshot && opt.snapshot_every > 0) sinks.snapshot(s, 0);

  long k = 0;
  try {
    while (true) {
      double dt, t_next;
      if (setup.adaptive) {
        if (s.t >= setup.t_end - 1e-12 * std::max(1.0, std::abs(setup.t_end))) break;
        dt = std::min(cfl_dt(ctx, s, p, setup.cfl_target, setup.dt_max), setup.t_end - s.t);
        t_next = s.t + dt;
      } else {
        if (k >= fixed_steps) break;
        const bool last = k + 1 == fixed_steps;
        t_next = last ? setup.t_end : t0 + static_cast<double>(k + 1) * setup.dt;
        dt = last ? t_next - s.t : setup.dt;
      }
      SpectralState trial = s;
      integ.step(trial, dt);
      trial.t = t_next;
      s = std::move(trial);
      ++k;
      const bool final_step = setup.adaptive
                                  ? s.t >= setup.t_end - 1e-12 * std::max(1.0, std::abs(setup.t_end))
                                  : k == fixed_steps;
      if (k % opt.energy_every == 0 || final_step) stream.push(energy_of(s));
      if (sinks.snapshot && opt.snapshot_every > 0 && k % opt.snapshot_every == 0) sinks.snapshot(s, k);
    }
  } catch (const BlowUpError& e) {
    res.blew_up = true;
    res.message = e.what();
  }
  stream.finish();
  res.steps = k;
  return res;
}

}  // namespace alcs
