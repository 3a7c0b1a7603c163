#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcs/dynamics.hpp"

namespace alcs {

/// Binary field file: "ALCS", u32 version = 1, u32 d, u32 N, f64 L, f64 t, u32 nfields, then per
/// field a 16-byte zero-padded name and N^d little-endian f64 values in row-major order.
struct Snapshot {
  std::uint32_t d = 2;
  std::uint32_t n = 0;
  double length = 0.0;
  double t = 0.0;
  std::vector<std::pair<std::string, std::vector<double>>> fields;

  /// Throws std::out_of_range when no field has this name.
  const std::vector<double>& field(const std::string& name) const;
};

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

/// Throws SnapshotError on I/O failure or an invalid snapshot (name longer than 16 bytes,
/// wrong value count).
void write_snapshot(const std::filesystem::path& path, const Snapshot& s);
/// Throws SnapshotError on magic/version mismatch, truncation or trailing bytes.
Snapshot read_snapshot(const std::filesystem::path& path);

/// Fields q11, q12, ux, uy.
Snapshot to_snapshot(const StateFields& s);
/// Requires d = 2 and the four state fields; throws SnapshotError otherwise.
StateFields to_state(const Snapshot& s);

}  // namespace alcs
