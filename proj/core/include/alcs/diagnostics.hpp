#pragma once

#include <cstddef>
#include <vector>

#include "alcs/dynamics.hpp"
#include "alcs/littlewood_paley.hpp"

namespace alcs {

/// Energy functionals of one state. All norms are Frobenius over the full 2x2 tensor and use the
/// discrete (Parseval) quadrature of the grid.
struct EnergyRecord {
  double t = 0.0;
  double kinetic = 0.0;   ///< 1/2 ||u||^2
  double elastic = 0.0;   ///< 1/2 ||grad Q||^2
  double bulk = 0.0;      ///< int a/2 |Q|^2 + c/4 |Q|^4
  double E = 0.0;
  double diss_u = 0.0;    ///< mu ||grad u||^2
  double diss_H = 0.0;    ///< Gamma int tr(H^2), H the dealiased (and J_n-truncated) molecular field
  double activity = 0.0;  ///< -kappa (Q, grad R_eps u), the power injected by the active stress
  double residual = 0.0;  ///< relative energy-identity defect, filled once dE/dt is known
  double hs_phi = 0.0;    ///< ||grad Q||_{H^s}^2 + ||u||_{H^s}^2
  double l2_Q = 0.0;      ///< ||Q||_{L2}^2
  double l4_Q = 0.0;      ///< ||Q||_{L4}^4
  double l6_Q = 0.0;      ///< ||Q||_{L6}^6
  double eps_u_gradQ = 0.0;  ///< eps ||R_eps u . grad Q||_{L3}^3 (mollified modes only)
  double eps_grad_u = 0.0;   ///< eps ||grad R_eps u||_{L4}^4 (mollified modes only)

  // Not part of energy.csv.
  double dEdt = 0.0;
  double diss_lap = 0.0;  ///< Gamma ||lap Q||^2, the second dissipation form
  double grad_u_sq = 0.0;
  double grad_q_sq = 0.0;
  double lap_q_sq = 0.0;
  double u_sq = 0.0;

  double h1_Q() const { return l2_Q + grad_q_sq; }
};

/// Evaluates EnergyRecords for one grid and parameter set, reusing FFT workspace.
class EnergyEvaluator {
 public:
  EnergyEvaluator(SpectralContext& ctx, const ModelParams& p, double s_exponent = 1.0);
  EnergyRecord operator()(const SpectralState& s);

 private:
  SpectralContext& ctx_;
  ModelParams p_;
  std::vector<double> moll_, jn_, hs_w_;
  std::vector<double> q11_, q12_, f1_, f2_, vx_, vy_;
  std::vector<double> g_[4], gq_[4];
  std::vector<Complex> spec_;
};

EnergyRecord energy(SpectralContext& ctx, const StateFields& s, const ModelParams& p,
                    double s_exponent = 1.0);

/// Relative defect of dE/dt + diss_u + diss_H - activity + eps_u_gradQ + eps_grad_u = 0,
/// normalized by max(|dE/dt|, diss_u + diss_H, |activity|, 1e-30).
double identity_residual(const EnergyRecord& r, double dEdt);

/// Residual at `cur` from a centered difference. Throws std::invalid_argument unless the three
/// records are equally spaced (relative tolerance 1e-9).
double energy_identity(const EnergyRecord& prev, const EnergyRecord& cur, const EnergyRecord& next);

/// Three-point derivative at the middle of (t0, t1, t2), second order for unequal spacing too.
double centered_rate(double t0, double e0, double t1, double e1, double t2, double e2);
/// Second-order one-sided derivative at t0 from (t0, t1, t2); pass t2 = t1 for two points.
double one_sided_rate(double t0, double e0, double t1, double e1, double t2, double e2);

/// Fills dEdt and residual: centered at interior records, one-sided at the ends, 0 for one record.
void fill_energy_rates(std::vector<EnergyRecord>& series);

/// kappa^2/(2 mu) ||Q||^2 - (dE/dt + mu/2 ||grad u||^2 + diss_H) for a record with dEdt filled.
double energy_inequality(const EnergyRecord& r, const ModelParams& p);
/// Magnitude the inequality margin is compared against.
double inequality_scale(const EnergyRecord& r, const ModelParams& p);

struct AprioriReport {
  double c1 = 0.0, c2 = 0.0;  ///< ||Q||_{H1}^2 <= c1 e^{c2 t} Y0
  double c3 = 0.0, c4 = 0.0;  ///< ||u||^2 + int (diss_u + Gamma ||lap Q||^2) <= c3 e^{c4 t} Y0
  double y0 = 0.0;            ///< ||Q0||_{H1}^2 + ||u0||^2
  bool covered = true;
};

/// Least-squares growth rates with the smallest prefactors covering the series. Throws
/// std::invalid_argument on an empty series.
AprioriReport apriori_monitor(const std::vector<EnergyRecord>& series, const ModelParams& p);

struct GrowthReport {
  double alpha = 0.0;
  double beta = 0.0;
  double r2 = 1.0;  ///< of the least-squares line through log log(e + phi)
  bool covered = true;
};

/// Fits log log(e + phi) <= alpha + beta t with beta = max(slope, 0) and the smallest alpha.
GrowthReport growth_bound_check(const std::vector<double>& t, const std::vector<double>& phi);

struct TwinDelta {
  double t = 0.0;
  double dQ_l2 = 0.0;
  double dQ_h1 = 0.0;
  double du_l2 = 0.0;
};

/// Throws std::invalid_argument on grid mismatch.
TwinDelta twin_delta(SpectralContext& ctx, const StateFields& a, const StateFields& b);

/// 2 (1 + sup|u| + sup|grad Q| + sup|Q| + sup|grad u| + sup|lap Q|), each squared: the growth
/// coefficient of the difference energy of two solutions, evaluated on the smoother one.
double twin_growth_rate(SpectralContext& ctx, const SpectralState& strong);

struct GronwallReport {
  bool holds = true;
  std::vector<double> envelope;
  std::size_t first_violation = 0;  ///< meaningful when !holds
};

/// Discrete Y(t) <= Y(0) e^{int alpha} + int beta e^{int_s^t alpha} ds with trapezoidal
/// quadrature. Throws std::invalid_argument on length mismatch or negative coefficients.
GronwallReport gronwall_envelope(const std::vector<double>& t, const std::vector<double>& y,
                                 const std::vector<double>& alpha, const std::vector<double>& beta,
                                 double rel_tol = 1e-9);

/// Smallest constant source beta for which the envelope covers y on samples [0, fit_end).
double fit_gronwall_source(const std::vector<double>& t, const std::vector<double>& y,
                           const std::vector<double>& alpha, std::size_t fit_end);

struct InterpolationReport {
  double constant = 0.0;  ///< ||grad Q||_{L3} / (||D^2 Q||^{1/2} ||Q||_{L6}^{1/2})
  double grad_l3 = 0.0;
  double d2_l2 = 0.0;
  double q_l6 = 0.0;
};

/// Throws std::invalid_argument for a zero field.
InterpolationReport interpolation_check(SpectralContext& ctx, const QTensorField& q);

}  // namespace alcs
