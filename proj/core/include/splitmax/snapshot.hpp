#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "splitmax/cochain.hpp"
#include "splitmax/dynamics.hpp"

namespace splitmax {

/// Binary cochain record, all fields little-endian:
///   char[8] "SPMXCOCH", u32 version (1), u8 complex (0 primal, 1 dual), u8 degree,
///   u16 reserved (0), u32 n[3], f64 h[3], f64 time, u64 count, f64 values[count]
/// Values follow Cochain's entity order (axis blocks, then i fastest, then j, then k).
inline constexpr char kSnapshotMagic[8] = {'S', 'P', 'M', 'X', 'C', 'O', 'C', 'H'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_cochain(std::ostream& out, const Cochain& c, double time);
/// Throws ValidationError on a malformed record.
Cochain read_cochain(std::istream& in, double* time = nullptr);

/// Writes the d~ record followed by the b record to `path`, plus a JSON sidecar at
/// `path` + ".json" describing both headers.
void save_state(const std::filesystem::path& path, const SimState& s);
SimState load_state(const std::filesystem::path& path);

/// The sidecar document for a state file.
std::string state_sidecar_json(const SimState& s);

}  // namespace splitmax
