#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "alcs/grid.hpp"
#include "alcs/integrator.hpp"
#include "alcs/params.hpp"

namespace alcs {

/// Initial-condition generator selection.
enum class IcType { taylor_green, random_spectrum, uniform_director, file };

struct InitialSpec {
  IcType type = IcType::taylor_green;
  std::uint64_t seed = 0;
  double amplitude = 0.1;        ///< velocity amplitude (RMS for random_spectrum)
  double peak_wavenumber = 2.0;  ///< spectral peak of random fields, in units of 2 pi / L
  double director_angle = 0.0;   ///< radians
  double s_order = 0.5;
  double q_amplitude = 0.0;      ///< RMS of the band-limited Q noise per component
  std::string file;              ///< snapshot path for type = file
};

struct RunConfig {
  int N = 64;
  double L = 6.283185307179586;
  TimeSetup time;
  ModelParams model;
  InitialSpec ic;
  long energy_every = 1;
  long snapshot_every = 0;
  std::string out_dir = "out";
  std::vector<std::string> checks;
  double s_exponent = 1.0;

  Grid2D grid() const { return Grid2D(N, L); }
};

/// Every problem found while reading a config, each prefixed with "line K: " when it is tied to
/// a line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Parses "key = value" lines ('#' starts a comment) on top of the defaults and validates.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Sets one key from its textual value; throws ConfigError for unknown keys or bad values.
/// Does not validate cross-field constraints; call validate_config afterwards.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// All constraint violations; empty when valid.
std::vector<std::string> config_violations(const RunConfig& cfg);
/// Throws ConfigError listing config_violations.
void validate_config(const RunConfig& cfg);

/// Round-trippable text form (every key, doubles at full precision).
std::string to_text(const RunConfig& cfg);

std::string_view to_string(IcType t);

/// out_dir, overridden by the ALCS_OUT_DIR environment variable when set and non-empty.
std::filesystem::path output_dir(const RunConfig& cfg);

}  // namespace alcs
