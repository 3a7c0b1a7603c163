#include "alcs/params.hpp"

#include <stdexcept>

namespace alcs {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::direct: return "direct";
    case Mode::mollified: return "mollified";
    case Mode::friedrichs: return "friedrichs";
  }
  return "direct";
}

Mode parse_mode(std::string_view s) {
  if (s == "direct") return Mode::direct;
  if (s == "mollified") return Mode::mollified;
  if (s == "friedrichs") return Mode::friedrichs;
  throw std::invalid_argument("unknown mode '" + std::string(s) +
                              "' (expected direct, mollified or friedrichs)");
}

std::vector<std::string> ModelParams::violations() const {
  std::vector<std::string> out;
  if (!(mu > 0.0)) out.emplace_back("mu must be > 0");
  if (!(gamma > 0.0)) out.emplace_back("Gamma must be > 0");
  if (!(c > 0.0)) out.emplace_back("c must be > 0");
  if (!(eps >= 0.0)) out.emplace_back("eps must be >= 0");
  if (n_trunc < 1) out.emplace_back("n_trunc must be >= 1");
  return out;
}

void ModelParams::validate() const {
  auto v = violations();
  if (v.empty()) return;
  std::string msg = v.front();
  for (std::size_t i = 1; i < v.size(); ++i) msg += "; " + v[i];
  throw std::invalid_argument(msg);
}

}  // namespace alcs
