#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "vspc/field.hpp"
#include "vspc/state.hpp"

namespace vspc {

// Binary snapshot layout (all little-endian):
//   offset  0: magic "VSPC"
//   offset  4: u32 format version
//   offset  8: u32 n
//   offset 12: u32 field count
//   offset 16: f64 time
//   offset 24: 8 reserved zero bytes
//   offset 32: field-count blocks of n*n f64 samples, row-major in (j1, j2)
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 32;

struct Snapshot {
  double time = 0.0;
  std::vector<ScalarField> fields;  // physical
};

void write_snapshot(std::ostream& out, double time, const std::vector<ScalarField>& fields);
/// Throws DataCorruptionError on a bad magic, unknown version or short read.
Snapshot read_snapshot(std::istream& in);

/// State snapshots carry six fields in the order u1, u2, F11, F21, F12, F22.
void write_state_snapshot(const std::filesystem::path& path, const State& state);
State read_state_snapshot(const std::filesystem::path& path);

}  // namespace vspc
