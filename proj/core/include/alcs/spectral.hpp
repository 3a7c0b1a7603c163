#pragma once

#include <array>
#include <memory>
#include <vector>

#include "alcs/grid.hpp"

namespace alcs {

/// Per-mode tables for the half-spectrum layout of a grid.
struct Wavenumbers {
  explicit Wavenumbers(const Grid2D& g);

  Grid2D grid;
  std::vector<int> kx, ky;
  std::vector<double> xi_x, xi_y;  ///< physical wavenumbers
  std::vector<double> xi2;         ///< |xi|^2
  /// First-derivative symbols: d/dx -> i * dx[m]. Zero on Nyquist rows/columns, where a real
  /// field's odd derivative is not representable.
  std::vector<double> dx, dy;
  /// Parseval multiplicity of each stored mode (2 for modes whose conjugate is not stored).
  std::vector<double> weight;
  /// 1 inside the two-thirds box |k_j| <= N/3, else 0.
  std::vector<double> dealias;

  std::size_t size() const { return kx.size(); }
};

/// FFT workspace bound to one grid. Transforms are normalized so that a single mode
/// A exp(i k.x) has coefficient A. Not safe for concurrent use: keep one per thread.
class SpectralContext {
 public:
  explicit SpectralContext(const Grid2D& g);
  ~SpectralContext();
  SpectralContext(SpectralContext&&) noexcept;
  SpectralContext& operator=(SpectralContext&&) noexcept;
  SpectralContext(const SpectralContext&) = delete;
  SpectralContext& operator=(const SpectralContext&) = delete;

  const Grid2D& grid() const { return wn_->grid; }
  const Wavenumbers& wn() const { return *wn_; }

  void forward(const double* in, Complex* out);
  void inverse(const Complex* in, double* out);
  SpectralField forward(const ScalarField& f);
  ScalarField inverse(const SpectralField& f);

 private:
  struct Plans;
  std::shared_ptr<const Wavenumbers> wn_;
  std::unique_ptr<Plans> plans_;
};

// Physical-space operators (transform, multiply, transform back).
std::array<ScalarField, 2> gradient(SpectralContext& ctx, const ScalarField& f);
ScalarField laplacian(SpectralContext& ctx, const ScalarField& f);
ScalarField divergence(SpectralContext& ctx, const VelocityField& v);
VelocityField leray_project(SpectralContext& ctx, const VelocityField& v);
/// Throws std::invalid_argument for n < 1.
ScalarField truncate_jn(SpectralContext& ctx, const ScalarField& f, int n, bool keep_mean = false);
/// eps = 0 returns the input unchanged; throws std::invalid_argument for eps < 0.
ScalarField mollify(SpectralContext& ctx, const ScalarField& f, double eps);
ScalarField dealias(SpectralContext& ctx, const ScalarField& f);

// Spectral-space operators acting in place.
void leray_project(const Wavenumbers& wn, SpectralField& vx, SpectralField& vy);
void dealias(const Wavenumbers& wn, SpectralField& f);
void apply_multiplier(const std::vector<double>& m, SpectralField& f);

/// Indicator of the annulus 2^-n <= |xi| <= 2^n (mean optionally kept).
std::vector<double> jn_mask(const Wavenumbers& wn, int n, bool keep_mean = false);
/// exp(-(eps |xi|)^2 / 2).
std::vector<double> mollifier_symbol(const Wavenumbers& wn, double eps);
/// Largest n for which the J_n annulus stays inside the dealiased band; 0 if none.
int jn_max_index(const Grid2D& g);

/// Trapezoidal-equivalent inner product computed from coefficients (Parseval).
double spectral_inner(const Wavenumbers& wn, const SpectralField& f, const SpectralField& g);
/// max_k |xi . v(k)| / max_k |v(k)|, zero for a zero field.
double divergence_defect(const Wavenumbers& wn, const SpectralField& vx, const SpectralField& vy);
bool is_divergence_free(SpectralContext& ctx, const VelocityField& v, double tol = 1e-12);

}  // namespace alcs
