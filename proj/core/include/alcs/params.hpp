#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace alcs {

/// Which right-hand side the solver assembles.
enum class Mode {
  direct,      ///< the unregularized system
  mollified,   ///< R_eps placement plus the two eps-terms
  friedrichs,  ///< mollified system additionally truncated by J_n
};

std::string_view to_string(Mode m);
/// Parses "direct", "mollified" or "friedrichs"; throws std::invalid_argument otherwise.
Mode parse_mode(std::string_view s);

/// Model constants and regularization knobs.
struct ModelParams {
  double a = -0.5;
  double b = 0.0;
  double c = 1.0;
  double gamma = 1.0;
  double lambda = 0.1;
  double mu = 1.0;
  double kappa = 0.0;

  double eps = 0.0;
  int n_trunc = 4;
  Mode mode = Mode::direct;
  /// Keep the mean mode under J_n (exploratory runs only).
  bool keep_mean = false;

  /// Empty when the constraints mu > 0, gamma > 0, c > 0, eps >= 0, n_trunc >= 1 hold.
  std::vector<std::string> violations() const;
  /// Throws std::invalid_argument carrying every violation.
  void validate() const;
};

}  // namespace alcs
