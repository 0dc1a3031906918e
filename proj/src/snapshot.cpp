#include "vspc/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "vspc/errors.hpp"
#include "vspc/transform.hpp"

namespace vspc {

namespace {

template <class T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) throw DataCorruptionError("snapshot truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(std::ostream& out, double time, const std::vector<ScalarField>& fields) {
  if (fields.empty()) throw UsageError("snapshot needs at least one field");
  const GridSpec grid = fields.front().grid();
  out.write("VSPC", 4);
  put_le<std::uint32_t>(out, kSnapshotVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.n()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(fields.size()));
  put_le<double>(out, time);
  put_le<std::uint64_t>(out, 0);
  for (const auto& f : fields) {
    if (!(f.grid() == grid)) throw UsageError("snapshot fields on different grids");
    const ScalarField p = as_physical(f);
    for (int j1 = 0; j1 < grid.n(); ++j1)
      for (int j2 = 0; j2 < grid.n(); ++j2) put_le<double>(out, p.values()(j1, j2));
  }
  if (!out) throw std::runtime_error("failed writing snapshot");
}

Snapshot read_snapshot(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "VSPC", 4) != 0)
    throw DataCorruptionError("not a snapshot file (bad magic)");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kSnapshotVersion)
    throw DataCorruptionError("unsupported snapshot version " + std::to_string(version));
  const auto n = get_le<std::uint32_t>(in);
  const auto count = get_le<std::uint32_t>(in);
  Snapshot snap;
  snap.time = get_le<double>(in);
  get_le<std::uint64_t>(in);
  GridSpec grid = [&] {
    try {
      return GridSpec(static_cast<int>(n));
    } catch (const UsageError& e) {
      throw DataCorruptionError(std::string("snapshot header: ") + e.what());
    }
  }();
  for (std::uint32_t f = 0; f < count; ++f) {
    RealGrid v(grid.n(), grid.n());
    for (int j1 = 0; j1 < grid.n(); ++j1)
      for (int j2 = 0; j2 < grid.n(); ++j2) v(j1, j2) = get_le<double>(in);
    snap.fields.push_back(ScalarField::physical(grid, std::move(v)));
  }
  return snap;
}

void write_state_snapshot(const std::filesystem::path& path, const State& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path.string() + " for writing");
  const TensorField& F = state.F;
  write_snapshot(out, state.t,
                 {state.u[0], state.u[1], F.entry(0, 0), F.entry(1, 0), F.entry(0, 1), F.entry(1, 1)});
}

State read_state_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open snapshot " + path.string());
  Snapshot s = read_snapshot(in);
  if (s.fields.size() != 6)
    throw DataCorruptionError("state snapshot must hold 6 fields, found " +
                              std::to_string(s.fields.size()));
  auto& f = s.fields;
  return State{s.time, VectorField(f[0], f[1]),
               TensorField(VectorField(f[2], f[3]), VectorField(f[4], f[5]))};
}

}  // namespace vspc
