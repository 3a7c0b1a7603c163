#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "alcs/params.hpp"
#include "alcs/spectral.hpp"

namespace alcs {

/// Raised when a right-hand side or a stepped state contains NaN or Inf.
class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateFields {
  double t = 0.0;
  QTensorField q;
  VelocityField u;
};

/// Fourier coefficients of (q11, q12, ux, uy); the integrator's working representation.
struct SpectralState {
  double t = 0.0;
  SpectralField q11, q12, ux, uy;

  SpectralState() = default;
  explicit SpectralState(const Grid2D& g) : q11(g), q12(g), ux(g), uy(g) {}
  const Grid2D& grid() const { return q11.grid; }
};

struct SpectralRhs {
  SpectralField q11, q12, ux, uy;

  SpectralRhs() = default;
  explicit SpectralRhs(const Grid2D& g) : q11(g), q12(g), ux(g), uy(g) {}
};

struct RhsFields {
  QTensorField dq;
  VelocityField du;
};

SpectralState to_spectral(SpectralContext& ctx, const StateFields& s);
StateFields to_physical(SpectralContext& ctx, const SpectralState& s);

/// Full 2x2 strain and vorticity fields, (grad u)_ab = d_b u_a.
struct StrainVorticity {
  ScalarField d11, d12, d22;
  ScalarField w12;  ///< Omega_12 = -Omega_21
};

StrainVorticity strain_vorticity(SpectralContext& ctx, const VelocityField& u);

/// Knobs that are not model parameters.
struct RhsOptions {
  /// Multiplies the antisymmetric stress Q lap Q - lap Q Q. Only -1 (mutation tests) and 1 make sense.
  double stress_sign = 1.0;
};

/// Assembles right-hand sides for one grid and one parameter set, reusing its buffers.
///
/// The nonlinear remainder excludes Gamma lap Q and mu lap u, which the integrator treats
/// exactly. Every pointwise product is dealiased by the two-thirds rule. In mollified mode the
/// velocity entering the Q equation, the strain and the vorticity are R_eps u, the momentum
/// forcing carries R_eps inside the divergence, and the two eps-terms are added. Friedrichs mode
/// additionally applies J_n to the Q nonlinearity, to the molecular field inside the lambda
/// stress, and to the projected momentum forcing.
class RhsAssembler {
 public:
  RhsAssembler(SpectralContext& ctx, const ModelParams& p, RhsOptions opt = {});

  const ModelParams& params() const { return p_; }
  SpectralContext& context() { return ctx_; }
  bool mollifies() const { return !moll_.empty(); }
  bool truncates() const { return !jn_.empty(); }
  bool has_eps_terms() const { return p_.mode != Mode::direct && p_.eps > 0.0; }
  /// R_eps symbol, empty when R_eps is the identity.
  const std::vector<double>& mollifier() const { return moll_; }
  /// J_n mask, empty outside friedrichs mode.
  const std::vector<double>& truncation() const { return jn_; }

  /// Nonlinear remainder. Throws BlowUpError on non-finite output.
  void nonlinear(const SpectralState& s, SpectralRhs& out);
  /// Nonlinear remainder plus Gamma lap Q and mu lap u.
  void full(const SpectralState& s, SpectralRhs& out);
  /// The two eps-terms alone, Leray-projected (zero when inactive).
  void eps_terms(const SpectralState& s, SpectralField& ex, SpectralField& ey);

  /// Projects and regularizes initial data: R_eps in mollified mode, J_n R_eps in friedrichs mode.
  void regularize_initial(SpectralState& s) const;

 private:
  void load(const SpectralState& s);
  void assemble(SpectralRhs& out, bool eps_only);

  SpectralContext& ctx_;
  ModelParams p_;
  RhsOptions opt_;
  std::vector<double> moll_, jn_;
  std::vector<std::vector<double>> buf_;
  std::vector<Complex> spec_, acc_x_, acc_y_;
  const Complex* cur_q11_ = nullptr;
  const Complex* cur_q12_ = nullptr;
};

/// Molecular field H on the grid with spectral lap Q (2D: the b-term vanishes).
QTensorField molecular_field(SpectralContext& ctx, const QTensorField& q, const ModelParams& p);

/// Pointwise Q Omega - Omega Q for vorticity component Omega_12 = w12.
QTensorField corotation(const QTensorField& q, const ScalarField& w12);
/// div(Qp lapQ - lapQ Qp), dealiased, with the divergence (div A)_a = d_b A_ab.
VelocityField antisymmetric_stress_divergence(SpectralContext& ctx, const QTensorField& qp,
                                              const QTensorField& lap_q, double sign = 1.0);
/// div(grad Q (.) grad Q), dealiased.
VelocityField elastic_stress_divergence(SpectralContext& ctx, const QTensorField& q);

QTensorField q_rhs(SpectralContext& ctx, const StateFields& s, const ModelParams& p);
/// Projected momentum tendency including mu lap u and, when active, the eps-terms.
VelocityField u_rhs(SpectralContext& ctx, const StateFields& s, const ModelParams& p);
VelocityField eps_terms(SpectralContext& ctx, const StateFields& s, const ModelParams& p);
RhsFields assemble_rhs(SpectralContext& ctx, const StateFields& s, const ModelParams& p);

}  // namespace alcs
