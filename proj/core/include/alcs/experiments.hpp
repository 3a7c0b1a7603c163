#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "alcs/config.hpp"
#include "alcs/diagnostics.hpp"
#include "alcs/integrator.hpp"

namespace alcs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBlowUp = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitGridMismatch = 4;

/// Column order of energy.csv.
std::string energy_csv_header();
/// One row at %.17g.
std::string energy_csv_row(const EnergyRecord& r);

struct ExecuteOptions {
  bool write_files = true;
  RhsOptions rhs;
  std::ostream* log = nullptr;
};

struct RunArtifacts {
  int status = kExitOk;
  std::string message;
  std::vector<EnergyRecord> records;
  SpectralState final_state;
};

/// Builds the initial state, regularizes it for the configured mode (ic = file is only
/// projected) and integrates. With write_files it streams energy.csv, writes snapshots
/// snap_<step>.alcs, checkpoint.alcs with a restartable checkpoint.cfg, report.txt for the
/// configured checks, and blowup.txt on blow-up.
RunArtifacts execute_run(const RunConfig& cfg, const std::filesystem::path& dir,
                         const ExecuteOptions& opt = {});

/// execute_run into output_dir(cfg); returns 0, 2 on blow-up, 3 on I/O failure.
int cmd_run(const RunConfig& cfg, std::ostream& log);

struct TwinResult {
  int status = kExitOk;
  std::string message;
  std::vector<TwinDelta> deltas;
  std::vector<double> alpha;  ///< growth coefficient from run B
  double beta = 0.0;          ///< fitted constant source
  GronwallReport envelope;
};

/// Integrates A and B from A's initial data in lockstep, sampling both at the coarser of the
/// two output intervals (which must be a whole number of steps of each run). The Gronwall
/// source is fitted on the first half of the samples and the envelope checked on all of them.
TwinResult run_twin(const RunConfig& a, const RunConfig& b);
/// run_twin plus twin.csv in output_dir(a); exit 4 on grid mismatch, 1 when the envelope fails.
int cmd_twin(const RunConfig& a, const RunConfig& b, std::ostream& log);

struct SweepRow {
  double value = 0.0;
  int status = kExitOk;
  double max_h1_Q = 0.0;       ///< max_t ||Q||_{H1}
  double max_l2_u = 0.0;       ///< max_t ||u||_{L2}
  double int_grad_u_sq = 0.0;  ///< int_0^T ||grad u||^2
  double int_lap_q_sq = 0.0;   ///< int_0^T ||lap Q||^2
  double max_eps_u_gradQ = 0.0;
  double max_eps_grad_u = 0.0;
  double max_hs_phi = 0.0;
  double apriori_c1 = 0.0;
  double apriori_c2 = 0.0;
};

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& r);
SweepRow summarize(double value, const RunArtifacts& run, const ModelParams& p);

/// Applies one sweep value; axis is kappa, n_trunc or eps. Throws std::invalid_argument for
/// other axes.
void set_axis(RunConfig& cfg, const std::string& axis, double value);

/// Runs every value into <out>/<axis>_<value>/ and writes sweep_summary.csv. Child failures
/// are recorded and the sweep continues; the exit status is the worst child status.
int cmd_sweep(const RunConfig& cfg, const std::string& axis, const std::vector<double>& values,
              std::ostream& log);

/// Prints the H^s norm of every field of a 2D snapshot and, for a state snapshot, phi.
int cmd_lp_norm(const std::filesystem::path& snapshot, double s, std::ostream& out);
/// Prints the snapshot header and per-field ranges.
int cmd_info(const std::filesystem::path& snapshot, std::ostream& out);

}  // namespace alcs
