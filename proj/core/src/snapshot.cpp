#include "splitmax/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "splitmax/error.hpp"

namespace splitmax {
namespace {

template <class T>
void put(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw ValidationError("snapshot: truncated record");
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

nlohmann::ordered_json header_json(const Cochain& c, double time) {
  const auto& g = c.grid();
  return {{"complex", to_string(c.complex())},
          {"degree", c.degree()},
          {"n", {g.n[0], g.n[1], g.n[2]}},
          {"h", {g.h[0], g.h[1], g.h[2]}},
          {"time", time},
          {"count", c.size()}};
}

}  // namespace

void write_cochain(std::ostream& out, const Cochain& c, double time) {
  out.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(c.complex()));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(c.degree()));
  put<std::uint16_t>(out, 0);
  for (int a = 0; a < 3; ++a) put<std::uint32_t>(out, static_cast<std::uint32_t>(c.grid().n[a]));
  for (int a = 0; a < 3; ++a) put<double>(out, c.grid().h[a]);
  put<double>(out, time);
  put<std::uint64_t>(out, c.size());
  for (double v : c.values()) put<double>(out, v);
}

Cochain read_cochain(std::istream& in, double* time) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0) {
    throw ValidationError("snapshot: bad magic");
  }
  if (get<std::uint32_t>(in) != kSnapshotVersion) throw ValidationError("snapshot: unsupported version");
  const auto complex = get<std::uint8_t>(in);
  const auto degree = get<std::uint8_t>(in);
  get<std::uint16_t>(in);
  if (complex > 1 || degree > 3) throw ValidationError("snapshot: bad complex or degree");
  GridSpec g;
  for (int a = 0; a < 3; ++a) g.n[a] = static_cast<int>(get<std::uint32_t>(in));
  for (int a = 0; a < 3; ++a) g.h[a] = get<double>(in);
  g.validate();
  const double t = get<double>(in);
  const auto count = get<std::uint64_t>(in);
  const auto cx = static_cast<Complex>(complex);
  if (count != entity_count(g, cx, degree)) throw ValidationError("snapshot: value count mismatch");
  std::vector<double> values(count);
  for (auto& v : values) v = get<double>(in);
  if (time) *time = t;
  return Cochain(g, cx, degree, std::move(values));
}

std::string state_sidecar_json(const SimState& s) {
  nlohmann::ordered_json doc;
  doc["format"] = "splitmax-state";
  doc["version"] = kSnapshotVersion;
  doc["records"] = {header_json(s.dtilde, s.t), header_json(s.b, s.t)};
  return doc.dump(2) + "\n";
}

void save_state(const std::filesystem::path& path, const SimState& s) {
  s.validate();
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("snapshot: cannot open " + path.string() + " for writing");
    write_cochain(out, s.dtilde, s.t);
    write_cochain(out, s.b, s.t);
    if (!out) throw ValidationError("snapshot: write failed for " + path.string());
  }
  std::ofstream side(path.string() + ".json", std::ios::trunc);
  side << state_sidecar_json(s);
}

SimState load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("init.path: cannot open " + path.string());
  SimState s;
  s.dtilde = read_cochain(in, &s.t);
  s.b = read_cochain(in);
  s.validate();
  return s;
}

}  // namespace splitmax
