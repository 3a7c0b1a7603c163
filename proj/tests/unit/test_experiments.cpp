#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "alcs/checks.hpp"
#include "alcs/config.hpp"
#include "alcs/diagnostics.hpp"
#include "alcs/experiments.hpp"
#include "alcs/initial.hpp"

using namespace alcs;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "alcs_unit_experiments" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

long count_lines(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<long>(std::count(s.begin(), s.end(), '\n'));
}

RunConfig small_active() {
  RunConfig c;
  c.N = 32;
  c.model.kappa = 0.5;
  c.ic.type = IcType::random_spectrum;
  c.ic.seed = 17;
  c.ic.q_amplitude = 0.1;
  c.ic.peak_wavenumber = 1.0;
  c.time.t_end = 0.05;
  return c;
}

}  // namespace

TEST_CASE("energy.csv header is fixed") {
  CHECK(energy_csv_header() ==
        "t,kinetic,elastic,bulk,E,diss_u,diss_H,activity,residual,hs_phi,l2_Q,l4_Q,l6_Q,eps_u_gradQ,eps_grad_u");
}

TEST_CASE("t_end = 0 writes one row") {
  RunConfig c;
  c.N = 16;
  c.time.t_end = 0.0;
  const fs::path d = fresh_dir("t0");
  const RunArtifacts r = execute_run(c, d);
  CHECK(r.status == kExitOk);
  CHECK(count_lines(d / "energy.csv") == 2);
  CHECK(fs::exists(d / "checkpoint.alcs"));
  CHECK(fs::exists(d / "checkpoint.cfg"));
}

TEST_CASE("huge dt ends with blow-up status and partial outputs") {
  RunConfig c = small_active();
  c.ic.amplitude = 5.0;
  c.ic.q_amplitude = 5.0;
  c.time.dt = 10.0;
  c.time.t_end = 1000.0;
  const fs::path d = fresh_dir("blowup");
  const RunArtifacts r = execute_run(c, d);
  CHECK(r.status == kExitBlowUp);
  CHECK(fs::exists(d / "blowup.txt"));
  CHECK(count_lines(d / "energy.csv") >= 2);
}

TEST_CASE("same seed gives bit-identical initial data and energy.csv") {
  const RunConfig c = small_active();
  const StateFields a = make_initial(c), b = make_initial(c);
  CHECK(a.q.q11.v == b.q.q11.v);
  CHECK(a.u.y.v == b.u.y.v);
  const fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
  execute_run(c, d1);
  execute_run(c, d2);
  CHECK(slurp(d1 / "energy.csv") == slurp(d2 / "energy.csv"));
  RunConfig other = c;
  other.ic.seed = 18;
  CHECK(make_initial(other).u.x.v != a.u.x.v);
}

TEST_CASE("random_spectrum kinetic energy scales as amplitude squared") {
  RunConfig c = small_active();
  SpectralContext ctx(c.grid());
  c.ic.amplitude = 0.1;
  const double e1 = energy(ctx, make_initial(c), c.model).kinetic;
  c.ic.amplitude = 0.3;
  const double e3 = energy(ctx, make_initial(c), c.model).kinetic;
  CHECK(e3 / e1 == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(e1 == doctest::Approx(0.5 * 0.01 * c.grid().area()).epsilon(1e-12));
}

TEST_CASE("uniform director without noise") {
  RunConfig c;
  c.N = 16;
  c.ic.type = IcType::uniform_director;
  c.ic.amplitude = 0.0;
  const StateFields s = make_initial(c);
  for (std::size_t i = 0; i < s.q.q11.v.size(); ++i) {
    CHECK(s.q.q11.v[i] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(s.q.q12.v[i]) < 1e-16);
    CHECK(s.u.x.v[i] == 0.0);
    CHECK(s.u.y.v[i] == 0.0);
  }
}

TEST_CASE("passive coercive run has nonincreasing energy") {
  RunConfig c = small_active();
  c.model.kappa = 0.0;
  c.model.a = 0.5;
  c.time.t_end = 0.2;
  ExecuteOptions o;
  o.write_files = false;
  const RunArtifacts r = execute_run(c, {}, o);
  REQUIRE(r.records.size() == 201);
  for (std::size_t i = 1; i < r.records.size(); ++i) CHECK(r.records[i].E <= r.records[i - 1].E);
}

TEST_CASE("restart from checkpoint reproduces the uninterrupted run") {
  RunConfig c = small_active();
  c.time.t_end = 0.1;
  const fs::path full_dir = fresh_dir("full"), first_dir = fresh_dir("first");
  const RunArtifacts full = execute_run(c, full_dir);
  RunConfig half = c;
  half.time.t_end = 0.05;
  execute_run(half, first_dir);
  RunConfig resumed = load_config(first_dir / "checkpoint.cfg");
  CHECK(resumed.ic.type == IcType::file);
  resumed.time.t_end = 0.1;
  const RunArtifacts rest = execute_run(resumed, fresh_dir("rest"));
  REQUIRE(rest.status == kExitOk);
  REQUIRE(rest.records.size() == 51);
  for (std::size_t k = 0; k < rest.records.size(); ++k) {
    const EnergyRecord& a = full.records[50 + k];
    const EnergyRecord& b = rest.records[k];
    CHECK(std::abs(a.t - b.t) <= 1e-12);
    for (double EnergyRecord::*f : {&EnergyRecord::E, &EnergyRecord::kinetic, &EnergyRecord::elastic,
                                    &EnergyRecord::diss_u, &EnergyRecord::diss_H, &EnergyRecord::activity,
                                    &EnergyRecord::hs_phi})
      CHECK(std::abs(a.*f - b.*f) <= 1e-12 * std::max(1.0, std::abs(a.*f)));
  }
}

TEST_CASE("kappa = 0 single-value sweep matches a run") {
  RunConfig c = small_active();
  c.model.kappa = 0.3;
  c.out_dir = fresh_dir("sweep").string();
  std::ostringstream log;
  CHECK(cmd_sweep(c, "kappa", {0.0}, log) == kExitOk);
  RunConfig plain = small_active();
  plain.model.kappa = 0.0;
  const fs::path d = fresh_dir("sweep_ref");
  execute_run(plain, d);
  CHECK(slurp(fs::path(c.out_dir) / "kappa_0" / "energy.csv") == slurp(d / "energy.csv"));
  CHECK(count_lines(fs::path(c.out_dir) / "sweep_summary.csv") == 2);
  CHECK_THROWS_AS(set_axis(c, "lambda", 1.0), std::invalid_argument);
}

TEST_CASE("twin runs") {
  RunConfig a = small_active();
  a.out_dir = fresh_dir("twin").string();
  const TwinResult same = run_twin(a, a);
  REQUIRE(same.status == kExitOk);
  for (const auto& d : same.deltas) {
    CHECK(d.dQ_h1 <= 1e-12);
    CHECK(d.du_l2 <= 1e-12);
  }
  RunConfig b = a;
  b.N = 64;
  std::ostringstream log;
  CHECK(cmd_twin(a, b, log) == kExitGridMismatch);
  // The fitted constant source needs a horizon where the strong-run growth rate matters.
  a.time.t_end = 0.2;
  RunConfig h = a;
  h.time.dt = 5e-4;
  h.energy_every = 2;
  CHECK(cmd_twin(a, h, log) == kExitOk);
  CHECK(fs::exists(fs::path(a.out_dir) / "twin.csv"));
}

TEST_CASE("snapshot commands") {
  RunConfig c = small_active();
  c.snapshot_every = 25;
  const fs::path d = fresh_dir("snaps");
  execute_run(c, d);
  REQUIRE(fs::exists(d / "snap_000025.alcs"));
  std::ostringstream out;
  CHECK(cmd_info(d / "snap_000025.alcs", out) == kExitOk);
  CHECK(out.str().find("q11") != std::string::npos);
  std::ostringstream lp;
  CHECK(cmd_lp_norm(d / "snap_000025.alcs", 1.0, lp) == kExitOk);
  std::ostringstream bad;
  CHECK(cmd_info(d / "energy.csv", bad) == kExitIo);
}

TEST_CASE("check suite on a minimal grid and under the sign mutation") {
  RunConfig c;
  c.N = 8;
  CheckOptions o;
  o.tensor_samples = 2000;
  o.corotation_samples = 10;
  o.lp_fields = 10;
  std::ostringstream out;
  CHECK(cmd_check(c, o, out) == 0);
  c.N = 32;
  o.stress_sign = -1.0;
  std::ostringstream mut;
  CHECK(cmd_check(c, o, mut) == 1);
  CHECK(mut.str().find("[co-rotation / antisymmetric stress cancellation]") != std::string::npos);
}
