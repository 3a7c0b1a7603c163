#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "alcs/config.hpp"

namespace alcs {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< the measured quantity compared against tolerance
  double tolerance = 0.0;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 20240601;
  /// Sign of the antisymmetric stress; -1 is the mutation hook that must make the suite fail.
  double stress_sign = 1.0;
  int corotation_samples = 100;
  long tensor_samples = 100000;
  int lp_fields = 100;
};

/// max |Q^2 - tr(Q^2)/2 I| over random 2D traceless tensors, dense products; tolerance 1e-14.
CheckResult check_square_identity_2d(long samples, std::uint64_t seed);
/// max |tr(Q^3)| over random 2D traceless tensors, dense products; tolerance 1e-15.
CheckResult check_cubic_trace_2d(long samples, std::uint64_t seed);
/// Number of violations of tr(Q^3) <= eps/4 tr(Q^2)^2 + tr(Q^2)/eps over random 3D tensors and
/// eps in {1e-2, 1e-1, 1, 10, 1e2}; must be zero.
CheckResult check_trace_cubic_bound(long samples, std::uint64_t seed);
/// max over random band-limited (Q, Q', u) of |(Omega Q' - Q' Omega, lap Q) -
/// (div(Q' lap Q - lap Q Q'), u)| / min(|first|, |second|); tolerance 1e-10.
CheckResult check_corotation_cancellation(const Grid2D& g, int samples, std::uint64_t seed,
                                          double stress_sign = 1.0);
/// Divergence after projection (1e-12) and idempotence (1e-13).
std::vector<CheckResult> check_leray(const Grid2D& g, std::uint64_t seed);
/// Partition of unity (1e-12), block reconstruction (1e-10 relative), Bony reconstruction
/// (1e-9 relative).
std::vector<CheckResult> check_littlewood_paley(const Grid2D& g, std::uint64_t seed);
/// Smallest and largest ratio of the dyadic H^s norm to the Fourier (1 + |xi|^2)^{s/2} norm for
/// s in {0, 0.5, 1, 2}; must lie in [1/4, 4].
CheckResult check_hs_equivalence(const Grid2D& g, int fields, std::uint64_t seed);
/// |(eps-terms, u) + eps ||R u . grad Q||_3^3 + eps ||grad R u||_4^4| relative to the dissipative
/// terms on random states; tolerance 1e-8.
CheckResult check_eps_consistency(const Grid2D& g, int samples, std::uint64_t seed);
/// Max interior energy-identity residual of a short active run on grid g; tolerance 1e-4.
CheckResult check_energy_short_run(const Grid2D& g, std::uint64_t seed, double stress_sign = 1.0);

std::vector<CheckResult> run_check_suite(const RunConfig& cfg, const CheckOptions& opt);
/// Prints the pass/fail table; exit 0 iff all pass, else 1.
int cmd_check(const RunConfig& cfg, const CheckOptions& opt, std::ostream& out);

}  // namespace alcs
