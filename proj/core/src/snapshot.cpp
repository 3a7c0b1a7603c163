#include "alcs/snapshot.hpp"

#include <bit>
#include <algorithm>
#include <cstdint>
#include <cstring>
#include <type_traits>
#include <fstream>
#include <iterator>

namespace alcs {

namespace {

constexpr char kMagic[4] = {'A', 'L', 'C', 'S'};
constexpr std::size_t kNameBytes = 16;
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 4 + 8 + 8 + 4;

template <typename T>
void put(std::string& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get(const std::string& in, std::size_t& pos) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  pos += sizeof(T);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

std::size_t values_per_field(std::uint32_t d, std::uint32_t n) {
  std::size_t c = 1;
  for (std::uint32_t i = 0; i < d; ++i) c *= n;
  return c;
}

}  // namespace

const std::vector<double>& Snapshot::field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.first == name) return f.second;
  throw std::out_of_range("snapshot has no field '" + name + "'");
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
  const std::size_t count = values_per_field(s.d, s.n);
  std::string buf;
  buf.reserve(kHeaderBytes + s.fields.size() * (kNameBytes + 8 * count));
  buf.append(kMagic, 4);
  put<std::uint32_t>(buf, kSnapshotVersion);
  put<std::uint32_t>(buf, s.d);
  put<std::uint32_t>(buf, s.n);
  put<double>(buf, s.length);
  put<double>(buf, s.t);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(s.fields.size()));
  for (const auto& [name, values] : s.fields) {
    if (name.size() > kNameBytes) throw SnapshotError("field name '" + name + "' exceeds 16 bytes");
    if (values.size() != count)
      throw SnapshotError("field '" + name + "' has " + std::to_string(values.size()) +
                          " values, expected " + std::to_string(count));
    std::string padded = name;
    padded.resize(kNameBytes, '\0');
    buf += padded;
    for (double v : values) put<double>(buf, v);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw SnapshotError("cannot open '" + path.string() + "' for writing");
  f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  f.close();
  if (!f) throw SnapshotError("write to '" + path.string() + "' failed");
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SnapshotError("cannot open '" + path.string() + "'");
  const std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  const std::string where = path.string() + ": ";
  if (in.size() < kHeaderBytes)
    throw SnapshotError(where + "truncated header: expected " + std::to_string(kHeaderBytes) +
                        " bytes, got " + std::to_string(in.size()));
  if (std::memcmp(in.data(), kMagic, 4) != 0) throw SnapshotError(where + "bad magic (not an ALCS snapshot)");
  std::size_t pos = 4;
  const auto version = get<std::uint32_t>(in, pos);
  if (version != kSnapshotVersion)
    throw SnapshotError(where + "unsupported version " + std::to_string(version) + " (expected " +
                        std::to_string(kSnapshotVersion) + ")");
  Snapshot s;
  s.d = get<std::uint32_t>(in, pos);
  s.n = get<std::uint32_t>(in, pos);
  s.length = get<double>(in, pos);
  s.t = get<double>(in, pos);
  const auto nfields = get<std::uint32_t>(in, pos);
  if (s.d < 1 || s.d > 3) throw SnapshotError(where + "invalid dimension " + std::to_string(s.d));
  if (s.n == 0 || s.n > (1u << 16)) throw SnapshotError(where + "invalid N " + std::to_string(s.n));
  if (nfields > 1024) throw SnapshotError(where + "implausible field count " + std::to_string(nfields));
  const std::size_t count = values_per_field(s.d, s.n);
  const std::size_t expected = kHeaderBytes + nfields * (kNameBytes + 8 * count);
  if (in.size() != expected)
    throw SnapshotError(where + (in.size() < expected ? "truncated" : "trailing data") +
                        ": expected " + std::to_string(expected) + " bytes, got " +
                        std::to_string(in.size()));
  for (std::uint32_t k = 0; k < nfields; ++k) {
    std::string name(in.data() + pos, kNameBytes);
    name.resize(std::strlen(name.c_str()));
    pos += kNameBytes;
    std::vector<double> v(count);
    for (auto& x : v) x = get<double>(in, pos);
    s.fields.emplace_back(std::move(name), std::move(v));
  }
  return s;
}

Snapshot to_snapshot(const StateFields& st) {
  Snapshot s;
  s.d = 2;
  s.n = static_cast<std::uint32_t>(st.q.grid().n());
  s.length = st.q.grid().length();
  s.t = st.t;
  s.fields = {{"q11", st.q.q11.v}, {"q12", st.q.q12.v}, {"ux", st.u.x.v}, {"uy", st.u.y.v}};
  return s;
}

StateFields to_state(const Snapshot& s) {
  if (s.d != 2) throw SnapshotError("expected a 2D snapshot, got d = " + std::to_string(s.d));
  Grid2D g(static_cast<int>(s.n), s.length);
  StateFields st;
  st.t = s.t;
  st.q = QTensorField(g);
  st.u = VelocityField(g);
  try {
    st.q.q11.v = s.field("q11");
    st.q.q12.v = s.field("q12");
    st.u.x.v = s.field("ux");
    st.u.y.v = s.field("uy");
  } catch (const std::out_of_range& e) {
    throw SnapshotError(e.what());
  }
  return st;
}

}  // namespace alcs
