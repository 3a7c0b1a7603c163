#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "alcs/config.hpp"
#include "alcs/dynamics.hpp"

namespace alcs {

/// mt19937_64 with platform-independent conversions to uniform and normal variates.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits.
  double uniform();
  /// Standard normal by the Box-Muller transform (no cached second variate).
  double normal();

  /// Engine state in the standard library's textual form.
  std::string state() const;
  /// Throws std::invalid_argument for malformed text.
  void restore(const std::string& text);

 private:
  std::mt19937_64 eng_;
};

/// Radial spectral envelope exp(-(|k| - peak)^2 / (2 width^2)) on integer wavenumbers
/// 1 <= |k|, restricted to the dealiased box and |k| <= kmax.
struct SpectrumShape {
  double peak = 2.0;
  double width = 1.0;
  double kmax = 1e300;
};

/// Real band-limited Gaussian random field with the given RMS (zero mean).
ScalarField random_field(SpectralContext& ctx, PortableRng& rng, const SpectrumShape& shape, double rms);
/// Divergence-free random velocity built from a random stream function, scaled to the given
/// RMS speed.
VelocityField random_velocity(SpectralContext& ctx, PortableRng& rng, const SpectrumShape& shape,
                              double rms);

/// Builds the configured initial state, Leray-projected. For ic = file the snapshot is taken as
/// is (including its time) and must match the configured grid. When rng_out is given it
/// receives the generator after all draws.
StateFields make_initial(const RunConfig& cfg, PortableRng* rng_out = nullptr);

}  // namespace alcs
