#pragma once

#include <functional>
#include <string>
#include <vector>

#include "alcs/diagnostics.hpp"
#include "alcs/dynamics.hpp"

namespace alcs {

struct TimeSetup {
  double dt = 1e-3;
  double t_end = 1.0;
  int scheme = 2;  ///< 1: exponential Euler, 2: ETD2RK
  double cfl_target = 0.5;
  double dt_max = 1e-2;
  bool adaptive = false;

  /// Throws std::invalid_argument naming every violated constraint.
  void validate() const;
};

/// cfl_target * min(dx / max|u|, 1 / (Gamma (|a| + 3 c max|Q|^2))), capped at dt_max.
/// Diffusion needs no restriction because it is propagated exactly. Throws BlowUpError for a
/// non-finite state.
double cfl_dt(SpectralContext& ctx, const SpectralState& s, const ModelParams& p, double cfl_target,
              double dt_max);

/// Exponential time differencing for y' = L y + N(y) with L = diag(-Gamma |xi|^2, -mu |xi|^2).
///
/// Scheme 2 is the Cox-Matthews ETD2RK rule
///   a = e^{Lh} y + h phi1(Lh) N(y),  y' = a + h phi2(Lh) (N(a) - N(y)),
/// scheme 1 stops after the first stage. Velocity is re-projected after each stage.
class Integrator {
 public:
  Integrator(RhsAssembler& rhs, int scheme);

  /// Advances s by dt in place; throws BlowUpError if a stage becomes non-finite.
  void step(SpectralState& s, double dt);
  int scheme() const { return scheme_; }

 private:
  void prepare(double dt);

  RhsAssembler& rhs_;
  int scheme_;
  double cached_dt_ = -1.0;
  // Per-mode factors, index 0 for Q (rate Gamma), 1 for u (rate mu).
  std::vector<double> ex_[2], p1_[2], p2_[2];
  SpectralRhs n0_, n1_;
  SpectralState a_;
};

/// phi1(z) = (e^z - 1) / z and phi2(z) = (e^z - 1 - z) / z^2, accurate near z = 0.
double etd_phi1(double z);
double etd_phi2(double z);

/// Number of steps of a fixed-step run; the last step is clipped to hit t_end.
long step_count(double t_end, double dt);

struct RunSinks {
  std::function<void(const EnergyRecord&)> energy;
  /// Receives the state and its step index every snapshot_every steps (and at step 0).
  std::function<void(const SpectralState&, long)> snapshot;
};

struct RunOptions {
  long energy_every = 1;
  long snapshot_every = 0;  ///< 0 disables snapshots
  double s_exponent = 1.0;
  RhsOptions rhs;
};

struct RunResult {
  SpectralState state;  ///< last finite state
  long steps = 0;
  bool blew_up = false;
  std::string message;
};

/// Integrates from s0 (already projected and regularized) to setup.t_end. Energy records are
/// emitted one output behind the integration, once the next record fixes dE/dt; the trailing
/// record uses a one-sided rate. On blow-up the pending records are flushed and the result is
/// flagged.
RunResult run(SpectralContext& ctx, const SpectralState& s0, const ModelParams& p,
              const TimeSetup& setup, const RunOptions& opt, const RunSinks& sinks);

}  // namespace alcs
