#include "alcs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "alcs/initial.hpp"
#include "alcs/snapshot.hpp"
#include "alcs/tensor.hpp"

namespace alcs {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + p.string() + "' for writing");
  return f;
}

SpectralState prepared_initial(SpectralContext& ctx, const RunConfig& cfg, const StateFields& s0,
                               const RhsOptions& ro) {
  SpectralState s = to_spectral(ctx, s0);
  RhsAssembler rhs(ctx, cfg.model, ro);
  if (cfg.ic.type == IcType::file)
    leray_project(ctx.wn(), s.ux, s.uy);
  else
    rhs.regularize_initial(s);
  return s;
}

RunOptions run_options(const RunConfig& cfg, const RhsOptions& ro) {
  RunOptions o;
  o.energy_every = cfg.energy_every;
  o.snapshot_every = cfg.snapshot_every;
  o.s_exponent = cfg.s_exponent;
  o.rhs = ro;
  return o;
}

// Largest |tr| of the molecular field assembled through dense 2x2 products.
double shadow_trace(SpectralContext& ctx, const SpectralState& s, const ModelParams& p) {
  const StateFields st = to_physical(ctx, s);
  const ScalarField l11 = laplacian(ctx, st.q.q11), l12 = laplacian(ctx, st.q.q12);
  double worst = 0.0;
  for (std::size_t i = 0; i < st.q.q11.v.size(); ++i) {
    const SquareMatrix q = full_matrix(QTensor::two(st.q.q11.v[i], st.q.q12.v[i]));
    const SquareMatrix l = full_matrix(QTensor::two(l11.v[i], l12.v[i]));
    worst = std::max({worst, std::abs(trace(q)), std::abs(trace(molecular_field_full(q, l, p)))});
  }
  return worst;
}

void write_report(std::ostream& o, const RunConfig& cfg, const RunArtifacts& run) {
  const auto& rec = run.records;
  const ModelParams& p = cfg.model;
  auto line = [&](const std::string& name, bool ok, const std::string& detail) {
    o << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
  };
  for (const auto& check : cfg.checks) {
    if (check == "energy_identity") {
      double worst = 0.0;
      for (std::size_t i = 1; i + 1 < rec.size(); ++i) worst = std::max(worst, rec[i].residual);
      line(check, worst <= 1e-4, "max interior residual " + short_fmt(worst) + " (tol 1e-4)");
    } else if (check == "energy_inequality") {
      double worst = INFINITY;
      for (const auto& r : rec) worst = std::min(worst, energy_inequality(r, p) / inequality_scale(r, p));
      if (rec.empty()) worst = 0.0;
      line(check, worst >= -1e-6, "min margin/scale " + short_fmt(worst) + " (tol -1e-6)");
    } else if (check == "apriori") {
      if (rec.empty()) continue;
      const AprioriReport a = apriori_monitor(rec, p);
      line(check, a.covered, "C1 " + short_fmt(a.c1) + " C2 " + short_fmt(a.c2) + " C3 " +
                                 short_fmt(a.c3) + " C4 " + short_fmt(a.c4));
    } else if (check == "growth") {
      std::vector<double> t, phi;
      for (const auto& r : rec) {
        t.push_back(r.t);
        phi.push_back(r.hs_phi);
      }
      const GrowthReport g = growth_bound_check(t, phi);
      line(check, g.covered, "alpha " + short_fmt(g.alpha) + " beta " + short_fmt(g.beta) + " R2 " +
                                 short_fmt(g.r2));
    } else if (check == "interpolation") {
      SpectralContext ctx(cfg.grid());
      const StateFields st = to_physical(ctx, run.final_state);
      try {
        const InterpolationReport r = interpolation_check(ctx, st.q);
        line(check, r.constant <= 10.0, "C " + short_fmt(r.constant) + " (bound 10)");
      } catch (const std::invalid_argument&) {
        line(check, true, "Q = 0, skipped");
      }
    } else if (check == "trace") {
      SpectralContext ctx(cfg.grid());
      const double tr = shadow_trace(ctx, run.final_state, p);
      line(check, tr <= 1e-12, "max |tr| " + short_fmt(tr) + " (tol 1e-12)");
    }
  }
}

}  // namespace

std::string energy_csv_header() {
  return "t,kinetic,elastic,bulk,E,diss_u,diss_H,activity,residual,hs_phi,l2_Q,l4_Q,l6_Q,"
         "eps_u_gradQ,eps_grad_u";
}

std::string energy_csv_row(const EnergyRecord& r) {
  const double v[] = {r.t,        r.kinetic, r.elastic, r.bulk, r.E,    r.diss_u,      r.diss_H,
                      r.activity, r.residual, r.hs_phi, r.l2_Q, r.l4_Q, r.l6_Q, r.eps_u_gradQ,
                      r.eps_grad_u};
  std::string s;
  for (std::size_t i = 0; i < std::size(v); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

RunArtifacts execute_run(const RunConfig& cfg, const fs::path& dir, const ExecuteOptions& opt) {
  RunArtifacts art;
  std::ostream* log = opt.log;
  try {
    validate_config(cfg);
    const Grid2D g = cfg.grid();
    SpectralContext ctx(g);
    PortableRng rng(cfg.ic.seed);
    const StateFields s0 = make_initial(cfg, &rng);
    const SpectralState init = prepared_initial(ctx, cfg, s0, opt.rhs);

    std::ofstream csv;
    if (opt.write_files) {
      fs::create_directories(dir);
      csv = open_out(dir / "energy.csv");
      csv << energy_csv_header() << "\n";
    }
    RunSinks sinks;
    sinks.energy = [&](const EnergyRecord& r) {
      art.records.push_back(r);
      if (opt.write_files) csv << energy_csv_row(r) << "\n";
    };
    if (opt.write_files && cfg.snapshot_every > 0) {
      sinks.snapshot = [&](const SpectralState& s, long step) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%06ld.alcs", step);
        write_snapshot(dir / name, to_snapshot(to_physical(ctx, s)));
      };
    }
    const RunResult res = run(ctx, init, cfg.model, cfg.time, run_options(cfg, opt.rhs), sinks);
    art.final_state = res.state;
    if (opt.write_files) {
      csv.flush();
      if (!csv) throw IoError("write to energy.csv failed");
      csv.close();
      const fs::path ck = dir / "checkpoint.alcs";
      write_snapshot(ck, to_snapshot(to_physical(ctx, res.state)));
      RunConfig echo = cfg;
      echo.ic.type = IcType::file;
      echo.ic.file = fs::absolute(ck).string();
      echo.out_dir = (fs::absolute(dir) / "restart").string();
      std::ofstream cf = open_out(dir / "checkpoint.cfg");
      cf << "# restart configuration written at t = " << fmt(res.state.t) << "\n"
         << "# original ic = " << to_string(cfg.ic.type) << ", seed = " << cfg.ic.seed << "\n"
         << "# rng_state = " << rng.state() << "\n"
         << to_text(echo);
      if (!cf) throw IoError("write to checkpoint.cfg failed");
      if (!cfg.checks.empty()) {
        std::ofstream rep = open_out(dir / "report.txt");
        write_report(rep, cfg, art);
      }
    }
    if (res.blew_up) {
      art.status = kExitBlowUp;
      art.message = "blow-up: " + res.message;
      if (opt.write_files) {
        std::ofstream b = open_out(dir / "blowup.txt");
        b << "t_last_finite = " << fmt(res.state.t) << "\nsteps = " << res.steps << "\nreason = "
          << res.message << "\n";
      }
    }
  } catch (const IoError& e) {
    art.status = kExitIo;
    art.message = e.what();
  } catch (const SnapshotError& e) {
    art.status = kExitIo;
    art.message = e.what();
  } catch (const fs::filesystem_error& e) {
    art.status = kExitIo;
    art.message = e.what();
  }
  if (log && !art.message.empty()) *log << art.message << "\n";
  return art;
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = output_dir(cfg);
  ExecuteOptions opt;
  opt.log = &log;
  const RunArtifacts a = execute_run(cfg, dir, opt);
  if (a.status == kExitOk) {
    log << "run complete: " << a.records.size() << " energy records in " << (dir / "energy.csv").string()
        << "\n";
    if (!a.records.empty()) log << "final E = " << short_fmt(a.records.back().E) << "\n";
    if (!cfg.checks.empty()) {
      std::ifstream rep(dir / "report.txt");
      log << rep.rdbuf();
    }
  }
  return a.status;
}

namespace {

// Fixed-step marching to prescribed sample times with t = t0 + k dt between samples.
struct Marcher {
  RhsAssembler rhs;
  Integrator integ;
  SpectralState s;
  double t0, dt;
  long k = 0;

  Marcher(SpectralContext& ctx, const RunConfig& cfg, SpectralState init)
      : rhs(ctx, cfg.model), integ(rhs, cfg.time.scheme), s(std::move(init)), t0(s.t), dt(cfg.time.dt) {}

  void advance_to(double target) {
    const double tol = 1e-9 * dt;
    while (t0 + static_cast<double>(k + 1) * dt < target - tol) {
      const double tn = t0 + static_cast<double>(k + 1) * dt;
      integ.step(s, dt);
      s.t = tn;
      ++k;
    }
    if (s.t < target - tol * 1e-3) {
      integ.step(s, target - s.t);
      s.t = target;
      ++k;
    }
  }
};

}  // namespace

TwinResult run_twin(const RunConfig& a, const RunConfig& b) {
  TwinResult res;
  validate_config(a);
  validate_config(b);
  if (a.grid() != b.grid()) {
    res.status = kExitGridMismatch;
    res.message = "twin: grid mismatch (N = " + std::to_string(a.N) + ", L = " + short_fmt(a.L) +
                  " vs N = " + std::to_string(b.N) + ", L = " + short_fmt(b.L) + ")";
    return res;
  }
  const double da = a.energy_every * a.time.dt, db = b.energy_every * b.time.dt;
  const double delta = std::max(da, db);
  for (const double dt : {a.time.dt, b.time.dt}) {
    const double r = delta / dt;
    if (std::abs(r - std::round(r)) > 1e-9 * r) {
      res.status = kExitFailure;
      res.message = "twin: output interval " + short_fmt(delta) + " is not a whole number of steps of dt = " +
                    short_fmt(dt);
      return res;
    }
  }
  SpectralContext ctx(a.grid());
  const StateFields s0 = make_initial(a, nullptr);
  Marcher ma(ctx, a, prepared_initial(ctx, a, s0, {}));
  Marcher mb(ctx, b, prepared_initial(ctx, b, s0, {}));
  const double t0 = ma.s.t;
  const double t_end = std::min(a.time.t_end, b.time.t_end);
  const long samples = step_count(t_end - t0, delta);
  auto sample = [&]() {
    res.deltas.push_back(twin_delta(ctx, to_physical(ctx, ma.s), to_physical(ctx, mb.s)));
    res.deltas.back().t = ma.s.t;
    res.alpha.push_back(twin_growth_rate(ctx, mb.s));
  };
  try {
    sample();
    for (long j = 1; j <= samples; ++j) {
      const double target = j == samples ? t_end : t0 + static_cast<double>(j) * delta;
      ma.advance_to(target);
      mb.advance_to(target);
      sample();
    }
  } catch (const BlowUpError& e) {
    res.status = kExitBlowUp;
    res.message = std::string("twin: blow-up: ") + e.what();
  }
  std::vector<double> t, y;
  for (const auto& d : res.deltas) {
    t.push_back(d.t);
    y.push_back(d.dQ_h1 + d.du_l2);
  }
  res.beta = fit_gronwall_source(t, y, res.alpha, t.size() / 2 + 1);
  res.envelope = gronwall_envelope(t, y, res.alpha, std::vector<double>(t.size(), res.beta));
  if (res.status == kExitOk && !res.envelope.holds) {
    res.status = kExitFailure;
    res.message = "twin: Gronwall envelope violated at t = " + short_fmt(t[res.envelope.first_violation]);
  }
  return res;
}

int cmd_twin(const RunConfig& a, const RunConfig& b, std::ostream& log) {
  const TwinResult r = run_twin(a, b);
  if (r.status == kExitGridMismatch) {
    log << r.message << "\n";
    return r.status;
  }
  try {
    const fs::path dir = output_dir(a);
    fs::create_directories(dir);
    std::ofstream f = open_out(dir / "twin.csv");
    f << "t,dQ_l2,dQ_h1,du_l2,alpha,envelope\n";
    for (std::size_t i = 0; i < r.deltas.size(); ++i) {
      const auto& d = r.deltas[i];
      f << fmt(d.t) << "," << fmt(d.dQ_l2) << "," << fmt(d.dQ_h1) << "," << fmt(d.du_l2) << ","
        << fmt(r.alpha[i]) << "," << fmt(i < r.envelope.envelope.size() ? r.envelope.envelope[i] : 0.0)
        << "\n";
    }
    if (!f) throw IoError("write to twin.csv failed");
  } catch (const std::exception& e) {
    log << e.what() << "\n";
    return kExitIo;
  }
  if (!r.deltas.empty()) {
    const auto& d = r.deltas.back();
    log << "final deltas: dQ_l2 " << short_fmt(d.dQ_l2) << "  dQ_h1 " << short_fmt(d.dQ_h1) << "  du_l2 "
        << short_fmt(d.du_l2) << "\n";
  }
  log << "Gronwall envelope (fitted source " << short_fmt(r.beta) << "): "
      << (r.envelope.holds ? "holds" : "violated") << "\n";
  if (!r.message.empty()) log << r.message << "\n";
  return r.status;
}

std::string sweep_csv_header() {
  return "value,status,max_h1_Q,max_l2_u,int_grad_u_sq,int_lap_q_sq,max_eps_u_gradQ,max_eps_grad_u,"
         "max_hs_phi,apriori_c1,apriori_c2";
}

std::string sweep_csv_row(const SweepRow& r) {
  return fmt(r.value) + "," + std::to_string(r.status) + "," + fmt(r.max_h1_Q) + "," + fmt(r.max_l2_u) +
         "," + fmt(r.int_grad_u_sq) + "," + fmt(r.int_lap_q_sq) + "," + fmt(r.max_eps_u_gradQ) + "," +
         fmt(r.max_eps_grad_u) + "," + fmt(r.max_hs_phi) + "," + fmt(r.apriori_c1) + "," +
         fmt(r.apriori_c2);
}

SweepRow summarize(double value, const RunArtifacts& run, const ModelParams& p) {
  SweepRow row;
  row.value = value;
  row.status = run.status;
  const auto& rec = run.records;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    row.max_h1_Q = std::max(row.max_h1_Q, std::sqrt(rec[i].h1_Q()));
    row.max_l2_u = std::max(row.max_l2_u, std::sqrt(rec[i].u_sq));
    row.max_eps_u_gradQ = std::max(row.max_eps_u_gradQ, rec[i].eps_u_gradQ);
    row.max_eps_grad_u = std::max(row.max_eps_grad_u, rec[i].eps_grad_u);
    row.max_hs_phi = std::max(row.max_hs_phi, rec[i].hs_phi);
    if (i > 0) {
      const double h = rec[i].t - rec[i - 1].t;
      row.int_grad_u_sq += 0.5 * h * (rec[i].grad_u_sq + rec[i - 1].grad_u_sq);
      row.int_lap_q_sq += 0.5 * h * (rec[i].lap_q_sq + rec[i - 1].lap_q_sq);
    }
  }
  if (!rec.empty()) {
    const AprioriReport a = apriori_monitor(rec, p);
    row.apriori_c1 = a.c1;
    row.apriori_c2 = a.c2;
  }
  return row;
}

void set_axis(RunConfig& cfg, const std::string& axis, double value) {
  if (axis == "kappa") cfg.model.kappa = value;
  else if (axis == "eps") cfg.model.eps = value;
  else if (axis == "n_trunc") {
    if (value != std::round(value)) throw std::invalid_argument("n_trunc values must be integers");
    cfg.model.n_trunc = static_cast<int>(value);
  } else {
    throw std::invalid_argument("unknown sweep axis '" + axis + "' (expected kappa, n_trunc or eps)");
  }
}

int cmd_sweep(const RunConfig& cfg, const std::string& axis, const std::vector<double>& values,
              std::ostream& log) {
  const fs::path root = output_dir(cfg);
  std::vector<SweepRow> rows;
  int worst = kExitOk;
  for (const double v : values) {
    RunConfig c = cfg;
    set_axis(c, axis, v);
    const fs::path dir = root / (axis + "_" + short_fmt(v));
    int status;
    RunArtifacts art;
    try {
      ExecuteOptions opt;
      opt.log = &log;
      art = execute_run(c, dir, opt);
      status = art.status;
    } catch (const ConfigError& e) {
      log << axis << " = " << short_fmt(v) << ": " << e.what() << "\n";
      status = kExitFailure;
      art.status = status;
    }
    rows.push_back(summarize(v, art, c.model));
    log << axis << " = " << short_fmt(v) << ": status " << status << "\n";
    worst = std::max(worst, status);
  }
  try {
    fs::create_directories(root);
    std::ofstream f = open_out(root / "sweep_summary.csv");
    f << sweep_csv_header() << "\n";
    for (const auto& r : rows) f << sweep_csv_row(r) << "\n";
    if (!f) throw IoError("write to sweep_summary.csv failed");
  } catch (const std::exception& e) {
    log << e.what() << "\n";
    return std::max(worst, kExitIo);
  }
  return worst;
}

int cmd_lp_norm(const fs::path& path, double s, std::ostream& out) {
  Snapshot snap;
  try {
    snap = read_snapshot(path);
  } catch (const SnapshotError& e) {
    out << e.what() << "\n";
    return kExitIo;
  }
  if (snap.d != 2) {
    out << "lp-norm: only 2D snapshots are supported\n";
    return kExitFailure;
  }
  const Grid2D g(static_cast<int>(snap.n), snap.length);
  SpectralContext ctx(g);
  const DyadicPartition part = build_partition(g);
  out << "s = " << short_fmt(s) << "\n";
  for (const auto& [name, values] : snap.fields) {
    ScalarField f(g);
    f.v = values;
    out << name << "  H^s = " << fmt(hs_norm(ctx, part, f, s)) << "\n";
  }
  try {
    const StateFields st = to_state(snap);
    const LowHighSplit sp = split_low_high(ctx, part, st.q, st.u, s);
    out << "phi = " << fmt(sp.phi) << "  (low " << fmt(sp.phi1) << ", high " << fmt(sp.phi2) << ")\n";
  } catch (const SnapshotError&) {
  }
  return kExitOk;
}

int cmd_info(const fs::path& path, std::ostream& out) {
  Snapshot snap;
  try {
    snap = read_snapshot(path);
  } catch (const SnapshotError& e) {
    out << e.what() << "\n";
    return kExitIo;
  }
  out << "version " << kSnapshotVersion << "\nd " << snap.d << "\nN " << snap.n << "\nL " << fmt(snap.length)
      << "\nt " << fmt(snap.t) << "\nnfields " << snap.fields.size() << "\n";
  for (const auto& [name, v] : snap.fields) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    out << "  " << name << "  min " << short_fmt(*lo) << "  max " << short_fmt(*hi) << "\n";
  }
  return kExitOk;
}

}  // namespace alcs
