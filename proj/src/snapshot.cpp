#include "sqg/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace sqg {
namespace {

// Serialization assumes a little-endian host with IEEE-754 doubles; both are
// asserted at startup rather than byte-swapped.
bool host_is_little_endian() {
  const std::uint32_t probe = 1;
  std::uint8_t b;
  std::memcpy(&b, &probe, 1);
  return b == 1;
}

void require_le(const char* where) {
  static const bool le = host_is_little_endian();
  if (!le) throw std::runtime_error(std::string(where) + ": big-endian hosts unsupported");
}

template <typename T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T get(const std::string& in, size_t& pos, const char* what) {
  if (pos + sizeof(T) > in.size())
    throw std::runtime_error(std::string("snapshot truncated reading ") + what);
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const PhysicalField& f) {
  require_le("write_snapshot");
  std::string out;
  out.reserve(21 + f.values.size() * sizeof(double));
  out.append("SQGF", 4);
  put<std::uint8_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.n1));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.n2));
  put<double>(out, f.grid.L1);
  put<double>(out, f.grid.L2);
  for (double v : f.values) put<double>(out, v);

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw std::runtime_error("write_snapshot: short write to " + path);
}

PhysicalField read_snapshot(const std::string& path) {
  require_le("read_snapshot");
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
  std::string in((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

  size_t pos = 0;
  if (in.size() < 4 || in.compare(0, 4, "SQGF") != 0)
    throw std::runtime_error("read_snapshot: bad magic in " + path);
  pos = 4;
  const auto version = get<std::uint8_t>(in, pos, "version");
  if (version != 1)
    throw std::runtime_error("read_snapshot: unsupported version " + std::to_string(version));
  const auto n1 = get<std::uint32_t>(in, pos, "n1");
  const auto n2 = get<std::uint32_t>(in, pos, "n2");
  const double L1 = get<double>(in, pos, "L1");
  const double L2 = get<double>(in, pos, "L2");

  GridSpec grid(static_cast<int>(n1), static_cast<int>(n2), L1, L2);
  PhysicalField f(grid);
  const size_t need = pos + f.values.size() * sizeof(double);
  if (in.size() != need)
    throw std::runtime_error("read_snapshot: payload size mismatch in " + path);
  for (double& v : f.values) v = get<double>(in, pos, "values");
  return f;
}

}  // namespace sqg
