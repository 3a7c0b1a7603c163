#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "alcs/snapshot.hpp"

using namespace alcs;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
  const fs::path d = fs::temp_directory_path() / "alcs_unit_snapshot";
  fs::create_directories(d);
  return d / name;
}

Snapshot sample() {
  Snapshot s;
  s.d = 2;
  s.n = 8;
  s.length = 6.5;
  s.t = 0.125;
  std::vector<double> a(64), b(64);
  for (int i = 0; i < 64; ++i) {
    a[i] = 1.0 / (i + 1) - 0.3;
    b[i] = i % 3 == 0 ? std::numeric_limits<double>::denorm_min() : -1e300 / (i + 1);
  }
  s.fields = {{"q11", a}, {"q12", b}};
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string error_of(const fs::path& p) {
  try {
    read_snapshot(p);
  } catch (const SnapshotError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("roundtrip is bit-exact") {
  const fs::path p = temp_file("rt.alcs");
  const Snapshot s = sample();
  write_snapshot(p, s);
  const Snapshot r = read_snapshot(p);
  CHECK(r.d == 2);
  CHECK(r.n == 8);
  CHECK(r.length == 6.5);
  CHECK(r.t == 0.125);
  REQUIRE(r.fields.size() == 2);
  CHECK(r.fields[0].first == "q11");
  CHECK(r.field("q12") == s.field("q12"));
  CHECK(r.field("q11") == s.field("q11"));
  CHECK_THROWS_AS(r.field("ux"), std::out_of_range);
}

TEST_CASE("header layout is little-endian") {
  const fs::path p = temp_file("layout.alcs");
  write_snapshot(p, sample());
  const std::string b = slurp(p);
  CHECK(b.size() == 36 + 2 * (16 + 8 * 64));
  CHECK(b.substr(0, 4) == "ALCS");
  CHECK(static_cast<unsigned char>(b[4]) == 1);
  CHECK(b[5] == 0);
  CHECK(static_cast<unsigned char>(b[12]) == 8);
  CHECK(b.substr(36, 3) == "q11");
  CHECK(b[39] == 0);
}

TEST_CASE("truncation names expected and actual sizes") {
  const fs::path p = temp_file("trunc.alcs");
  write_snapshot(p, sample());
  std::string b = slurp(p);
  const std::size_t full = b.size();
  b.resize(full - 5);
  spit(p, b);
  const std::string e = error_of(p);
  CHECK(e.find("truncated") != std::string::npos);
  CHECK(e.find("expected " + std::to_string(full) + " bytes, got " + std::to_string(full - 5)) != std::string::npos);
  spit(p, b.substr(0, 10));
  CHECK(error_of(p).find("truncated header") != std::string::npos);
}

TEST_CASE("foreign magic, version and trailing data are rejected") {
  const fs::path p = temp_file("bad.alcs");
  write_snapshot(p, sample());
  std::string b = slurp(p);
  std::string swapped = b;
  std::swap(swapped[0], swapped[3]);
  std::swap(swapped[1], swapped[2]);
  spit(p, swapped);
  CHECK(error_of(p).find("bad magic") != std::string::npos);
  std::string v = b;
  v[4] = 2;
  spit(p, v);
  CHECK(error_of(p).find("unsupported version 2") != std::string::npos);
  spit(p, b + "x");
  CHECK(error_of(p).find("trailing data") != std::string::npos);
  CHECK(error_of(temp_file("missing.alcs")).find("cannot open") != std::string::npos);
}

TEST_CASE("writer validates field sizes and names") {
  Snapshot s = sample();
  s.fields[1].second.pop_back();
  CHECK_THROWS_AS(write_snapshot(temp_file("w.alcs"), s), SnapshotError);
  Snapshot t = sample();
  t.fields[0].first = "a_name_longer_than_16";
  CHECK_THROWS_AS(write_snapshot(temp_file("w.alcs"), t), SnapshotError);
}

TEST_CASE("state conversion") {
  StateFields st;
  const Grid2D g(8, 3.0);
  st.t = 2.5;
  st.q = QTensorField(g);
  st.u = VelocityField(g);
  st.q.q12.v[3] = 0.7;
  st.u.y.v[5] = -1.25;
  const StateFields back = to_state(to_snapshot(st));
  CHECK(back.t == 2.5);
  CHECK(back.q.grid() == g);
  CHECK(back.q.q12.v[3] == 0.7);
  CHECK(back.u.y.v[5] == -1.25);
  Snapshot s = sample();
  CHECK_THROWS_AS(to_state(s), SnapshotError);
}
