#pragma once

#include <vector>

#include "alcs/spectral.hpp"

namespace alcs {

/// Radial low-pass profile: 1 on |xi| <= 3/4, 0 on |xi| >= 4/3, C-infinity in between.
double lp_chi(double r);
/// Annulus profile chi(r/2) - chi(r), supported in 3/4 <= |xi| <= 8/3.
double lp_phi(double r);

/// Dyadic partition sampled on a grid's half spectrum.
///
/// Blocks are indexed j = 0..j_max with Delta_j = phi(2^-j D) and S_0 = chi(D), so that
/// chi + sum_{j>=0} phi(2^-j .) = 1 on every grid frequency.
struct DyadicPartition {
  Grid2D grid;
  int j_max = 0;
  std::vector<double> chi;               ///< chi(|xi|) per mode
  std::vector<std::vector<double>> phi;  ///< phi[j][m] = phi(2^-j |xi_m|)

  /// chi(2^-j |xi|); zero for j < 0 (no low part below S_0 in the inhomogeneous split).
  std::vector<double> low_cut(int j) const;
  /// Weight W_s(m) = chi^2 + sum_j 2^{2js} phi_j^2, so that ||f||_{H^s}^2 = sum W_s |f_m|^2.
  std::vector<double> hs_weight(double s) const;
};

DyadicPartition build_partition(const Grid2D& g);

struct DyadicBlocks {
  ScalarField s0;
  std::vector<ScalarField> blocks;  ///< Delta_j f, j = 0..j_max
};

/// Throws std::out_of_range when j is outside 0..j_max.
ScalarField delta_j(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& f, int j);
ScalarField s_j(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& f, int j);
DyadicBlocks decompose(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& f);

double hs_norm(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& f, double s);
/// Squared H^s norm from coefficients with a precomputed hs_weight.
double hs_norm_sq(const Wavenumbers& wn, const std::vector<double>& weight, const SpectralField& f);

struct BonyParts {
  ScalarField t_uv;  ///< sum_j S_{j-1}u Delta_j v
  ScalarField t_vu;
  ScalarField r;     ///< sum_{|j-j'|<=1} Delta_j u Delta_j' v
};

/// Inhomogeneous paraproduct split with S_0 acting as the block below j = 0.
BonyParts bony_decompose(SpectralContext& ctx, const DyadicPartition& part, const ScalarField& u,
                         const ScalarField& v);

/// Exponent used for the L^infinity norm in the checks below.
inline constexpr double kLinf = 0.0;

struct BernsteinReport {
  double derivative_ratio = 0.0;  ///< ||grad Delta_j f||_p / ||Delta_j f||_p
  double lower_constant = 0.0;    ///< 2^j ||Delta_j f||_p / ||grad Delta_j f||_p
  double upper_constant = 0.0;    ///< ||grad Delta_j f||_p / (2^j ||Delta_j f||_p)
  double integrability_constant = 0.0;  ///< ||Delta_j f||_q / (2^{2j(1/p-1/q)} ||Delta_j f||_p)
};

/// p, q in {2, 4, kLinf} with p <= q. Throws std::invalid_argument on an empty block or bad
/// exponents.
BernsteinReport bernstein_check(SpectralContext& ctx, const DyadicPartition& part,
                                const ScalarField& f, int j, double p, double q);

struct CommutatorReport {
  double commutator_l2 = 0.0;  ///< ||Delta_j(uv) - u Delta_j v||_2
  double reference = 0.0;      ///< 2^-j ||grad u||_inf ||v||_2
  double constant = 0.0;       ///< commutator_l2 / reference (0 when both vanish)
};

CommutatorReport commutator_check(SpectralContext& ctx, const DyadicPartition& part,
                                  const ScalarField& u, const ScalarField& v, int j);

struct ProductReport {
  std::vector<double> block_norms;  ///< ||Delta_q u^k||_2
  std::vector<double> sequence;     ///< a_q after normalizing by the best constant
  double constant = 0.0;            ///< minimal C
  double ell2 = 0.0;                ///< (sum a_q^2)^{1/2}
  double tail_fraction = 0.0;       ///< share of sum a_q^2 carried by q > j_max - 2
};

/// Block norms of u^k against 2^-qs ||u||_{L^{2(k-1)}}^{k-1} ||grad u||_{H^s}. Only p = 2 is
/// supported; throws std::invalid_argument for k outside 2..4 or p != 2.
ProductReport product_estimate_check(SpectralContext& ctx, const DyadicPartition& part,
                                     const ScalarField& u, int k, double p, double s);

struct LowHighSplit {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi = 0.0;
};

/// phi = ||grad Q||_{H^s}^2 + ||u||_{H^s}^2 (Frobenius over the full tensor), phi1 its S_0 part.
LowHighSplit split_low_high(SpectralContext& ctx, const DyadicPartition& part,
                            const QTensorField& q, const VelocityField& u, double s);

}  // namespace alcs
