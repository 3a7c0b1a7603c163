#include "alcs/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "alcs/spectral.hpp"

namespace alcs {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "\n") + x;
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::string body = v;
  double mult = 1.0;
  // Accept multiples of pi such as "2pi" for lengths and angles.
  if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
    mult = std::numbers::pi;
    body = trim(body.substr(0, body.size() - 2));
    if (!body.empty() && body.back() == '*') body = trim(body.substr(0, body.size() - 1));
    if (body.empty()) body = "1";
  }
  double x = 0.0;
  const auto r = std::from_chars(body.data(), body.data() + body.size(), x);
  if (r.ec != std::errc() || r.ptr != body.data() + body.size())
    throw ConfigError({key + ": expected a number, got '" + v + "'"});
  return x * mult;
}

long to_long(const std::string& key, const std::string& v) {
  long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError({key + ": expected an integer, got '" + v + "'"});
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const long x = to_long(key, v);
  if (x < -2147483647L || x > 2147483647L) throw ConfigError({key + ": integer out of range"});
  return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError({key + ": expected an unsigned 64-bit integer, got '" + v + "'"});
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError({key + ": expected true or false, got '" + v + "'"});
}

IcType parse_ic(const std::string& v) {
  if (v == "taylor_green") return IcType::taylor_green;
  if (v == "random_spectrum") return IcType::random_spectrum;
  if (v == "uniform_director") return IcType::uniform_director;
  if (v == "file") return IcType::file;
  throw ConfigError(
      {"ic: unknown type '" + v + "' (expected taylor_green, random_spectrum, uniform_director or file)"});
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> k = {"energy_identity", "energy_inequality", "apriori",
                                             "growth", "interpolation", "trace"};
  return k;
}

struct Violation {
  std::string key;
  std::string message;
};

std::vector<Violation> violations(const RunConfig& c) {
  std::vector<Violation> out;
  auto add = [&](const char* k, std::string m) { out.push_back({k, std::move(m)}); };
  if (c.N < 8 || (c.N & (c.N - 1)) != 0) add("N", "N must be a power of two >= 8");
  if (!(c.L > 0.0) || !std::isfinite(c.L)) add("L", "L must be > 0");
  if (!(c.time.dt > 0.0)) add("dt", "dt must be > 0");
  if (!(c.time.t_end >= 0.0)) add("t_end", "t_end must be >= 0");
  if (c.time.scheme != 1 && c.time.scheme != 2) add("scheme", "scheme must be 1 or 2");
  if (!(c.time.cfl_target > 0.0 && c.time.cfl_target <= 1.0))
    add("cfl_target", "cfl_target must be in (0, 1]");
  if (!(c.time.dt_max > 0.0)) add("dt_max", "dt_max must be > 0");
  const auto& m = c.model;
  if (!(m.mu > 0.0)) add("mu", "mu must be > 0");
  if (!(m.gamma > 0.0)) add("Gamma", "Gamma must be > 0");
  if (!(m.c > 0.0)) add("c", "c must be > 0");
  if (!(m.eps >= 0.0)) add("eps", "eps must be >= 0");
  if (m.mode == Mode::friedrichs && c.N >= 8 && (c.N & (c.N - 1)) == 0 && c.L > 0.0) {
    const int top = jn_max_index(Grid2D(c.N, c.L));
    if (m.n_trunc < 1 || m.n_trunc > top)
      add("n_trunc", "n_trunc must be in 1.." + std::to_string(top) + " for N = " +
                         std::to_string(c.N) + " (J_n must stay inside the dealiased band)");
  } else if (m.n_trunc < 1) {
    add("n_trunc", "n_trunc must be >= 1");
  }
  if (!(c.ic.amplitude >= 0.0)) add("amplitude", "amplitude must be >= 0");
  if (!(c.ic.q_amplitude >= 0.0)) add("q_amplitude", "q_amplitude must be >= 0");
  if (!(c.ic.peak_wavenumber > 0.0)) add("peak_wavenumber", "peak_wavenumber must be > 0");
  if (c.ic.type == IcType::file && c.ic.file.empty()) add("ic_file", "ic = file requires ic_file");
  if (c.energy_every < 1) add("energy_every", "energy_every must be >= 1");
  if (c.snapshot_every < 0) add("snapshot_every", "snapshot_every must be >= 0");
  if (c.out_dir.empty()) add("out_dir", "out_dir must not be empty");
  for (const auto& k : c.checks)
    if (std::find(known_checks().begin(), known_checks().end(), k) == known_checks().end())
      add("checks", "unknown check '" + k + "'");
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

std::string_view to_string(IcType t) {
  switch (t) {
    case IcType::taylor_green: return "taylor_green";
    case IcType::random_spectrum: return "random_spectrum";
    case IcType::uniform_director: return "uniform_director";
    case IcType::file: return "file";
  }
  return "taylor_green";
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& v) {
  auto& m = c.model;
  if (key == "N") c.N = to_int(key, v);
  else if (key == "L") c.L = to_double(key, v);
  else if (key == "dt") c.time.dt = to_double(key, v);
  else if (key == "t_end") c.time.t_end = to_double(key, v);
  else if (key == "scheme") c.time.scheme = to_int(key, v);
  else if (key == "cfl_target") c.time.cfl_target = to_double(key, v);
  else if (key == "dt_max") c.time.dt_max = to_double(key, v);
  else if (key == "adaptive") c.time.adaptive = to_bool(key, v);
  else if (key == "a") m.a = to_double(key, v);
  else if (key == "b") m.b = to_double(key, v);
  else if (key == "c") m.c = to_double(key, v);
  else if (key == "kappa") m.kappa = to_double(key, v);
  else if (key == "lambda") m.lambda = to_double(key, v);
  else if (key == "Gamma") m.gamma = to_double(key, v);
  else if (key == "mu") m.mu = to_double(key, v);
  else if (key == "mode") {
    try {
      m.mode = parse_mode(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError({std::string("mode: ") + e.what()});
    }
  } else if (key == "eps") m.eps = to_double(key, v);
  else if (key == "n_trunc") m.n_trunc = to_int(key, v);
  else if (key == "keep_mean") m.keep_mean = to_bool(key, v);
  else if (key == "ic") c.ic.type = parse_ic(v);
  else if (key == "seed") c.ic.seed = to_u64(key, v);
  else if (key == "amplitude") c.ic.amplitude = to_double(key, v);
  else if (key == "peak_wavenumber") c.ic.peak_wavenumber = to_double(key, v);
  else if (key == "director_angle") c.ic.director_angle = to_double(key, v);
  else if (key == "s_order") c.ic.s_order = to_double(key, v);
  else if (key == "q_amplitude") c.ic.q_amplitude = to_double(key, v);
  else if (key == "ic_file") c.ic.file = v;
  else if (key == "energy_every") c.energy_every = to_long(key, v);
  else if (key == "snapshot_every") c.snapshot_every = to_long(key, v);
  else if (key == "out_dir") c.out_dir = v;
  else if (key == "checks") {
    c.checks.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) c.checks.push_back(item);
    }
  } else if (key == "s_exponent") c.s_exponent = to_double(key, v);
  else throw ConfigError({"unknown key '" + key + "'"});
}

std::vector<std::string> config_violations(const RunConfig& cfg) {
  std::vector<std::string> out;
  for (auto& v : violations(cfg)) out.push_back(std::move(v.message));
  return out;
}

void validate_config(const RunConfig& cfg) {
  auto v = config_violations(cfg);
  if (!v.empty()) throw ConfigError(std::move(v));
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::vector<std::string> problems;
  std::map<std::string, int> line_of;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = "line " + std::to_string(line) + ": ";
    if (eq == std::string::npos) {
      problems.push_back(where + "expected 'key = value', got '" + body + "'");
      continue;
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) {
      problems.push_back(where + "missing key");
      continue;
    }
    if (line_of.count(key)) {
      problems.push_back(where + "duplicate key '" + key + "' (first set on line " +
                         std::to_string(line_of[key]) + ")");
      continue;
    }
    line_of[key] = line;
    try {
      set_config_value(cfg, key, value);
    } catch (const ConfigError& e) {
      for (const auto& p : e.problems()) problems.push_back(where + p);
    }
  }
  for (const auto& v : violations(cfg)) {
    auto it = line_of.find(v.key);
    if (it == line_of.end() && v.key == "n_trunc") it = line_of.find("mode");
    problems.push_back(it != line_of.end() ? "line " + std::to_string(it->second) + ": " + v.message
                                           : v.message);
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError({"cannot open config '" + path.string() + "'"});
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const RunConfig& c) {
  std::ostringstream o;
  const auto& m = c.model;
  o << "N = " << c.N << "\n"
    << "L = " << fmt(c.L) << "\n"
    << "dt = " << fmt(c.time.dt) << "\n"
    << "t_end = " << fmt(c.time.t_end) << "\n"
    << "scheme = " << c.time.scheme << "\n"
    << "cfl_target = " << fmt(c.time.cfl_target) << "\n"
    << "dt_max = " << fmt(c.time.dt_max) << "\n"
    << "adaptive = " << (c.time.adaptive ? "true" : "false") << "\n"
    << "a = " << fmt(m.a) << "\n"
    << "b = " << fmt(m.b) << "\n"
    << "c = " << fmt(m.c) << "\n"
    << "kappa = " << fmt(m.kappa) << "\n"
    << "lambda = " << fmt(m.lambda) << "\n"
    << "Gamma = " << fmt(m.gamma) << "\n"
    << "mu = " << fmt(m.mu) << "\n"
    << "mode = " << to_string(m.mode) << "\n"
    << "eps = " << fmt(m.eps) << "\n"
    << "n_trunc = " << m.n_trunc << "\n"
    << "keep_mean = " << (m.keep_mean ? "true" : "false") << "\n"
    << "ic = " << to_string(c.ic.type) << "\n"
    << "seed = " << c.ic.seed << "\n"
    << "amplitude = " << fmt(c.ic.amplitude) << "\n"
    << "peak_wavenumber = " << fmt(c.ic.peak_wavenumber) << "\n"
    << "director_angle = " << fmt(c.ic.director_angle) << "\n"
    << "s_order = " << fmt(c.ic.s_order) << "\n"
    << "q_amplitude = " << fmt(c.ic.q_amplitude) << "\n";
  if (!c.ic.file.empty()) o << "ic_file = " << c.ic.file << "\n";
  o << "energy_every = " << c.energy_every << "\n"
    << "snapshot_every = " << c.snapshot_every << "\n"
    << "out_dir = " << c.out_dir << "\n";
  if (!c.checks.empty()) {
    o << "checks = ";
    for (std::size_t i = 0; i < c.checks.size(); ++i) o << (i ? "," : "") << c.checks[i];
    o << "\n";
  }
  o << "s_exponent = " << fmt(c.s_exponent) << "\n";
  return o.str();
}

std::filesystem::path output_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("ALCS_OUT_DIR"); env && *env) return env;
  return cfg.out_dir;
}

}  // namespace alcs
