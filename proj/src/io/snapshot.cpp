#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/io.hpp"

namespace ssns {

namespace {

void put(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint64_t get(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<unsigned char> encode_snapshot(const VelocityField& u) {
  const VelocityField phys = u.is_spectral() ? to_physical(u) : u;
  const Grid& g = phys.grid();
  std::vector<unsigned char> out;
  out.reserve(snapshot_header_bytes + 3 * g.point_count() * 8);
  for (char c : {'S', 'S', 'N', 'S'}) out.push_back(static_cast<unsigned char>(c));
  put(out, snapshot_version, 4);
  put(out, static_cast<std::uint32_t>(g.n()), 4);
  put(out, std::bit_cast<std::uint64_t>(g.length()), 8);
  put(out, std::bit_cast<std::uint64_t>(u.time()), 8);
  put(out, 3, 4);
  for (int c = 0; c < 3; ++c)
    for (double v : phys[c].values()) put(out, std::bit_cast<std::uint64_t>(v), 8);
  return out;
}

VelocityField decode_snapshot(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < snapshot_header_bytes) throw ValidationError("snapshot: truncated header");
  if (std::memcmp(bytes.data(), "SSNS", 4) != 0) throw ValidationError("snapshot: bad magic");
  const unsigned char* p = bytes.data();
  const auto version = static_cast<std::uint32_t>(get(p + 4, 4));
  if (version != snapshot_version)
    throw ValidationError("snapshot: unsupported version " + std::to_string(version));
  const auto n = static_cast<std::uint32_t>(get(p + 8, 4));
  const double length = std::bit_cast<double>(get(p + 12, 8));
  const double t = std::bit_cast<double>(get(p + 20, 8));
  const auto components = static_cast<std::uint32_t>(get(p + 28, 4));
  if (components != 3) throw ValidationError("snapshot: expected 3 components");
  if (n > 4096) throw ValidationError("snapshot: implausible grid size");
  const Grid g(static_cast<int>(n), length);
  const std::size_t expected = snapshot_header_bytes + 3 * g.point_count() * 8;
  if (bytes.size() < expected) throw ValidationError("snapshot: truncated payload");
  if (bytes.size() > expected) throw ValidationError("snapshot: payload longer than header N implies");
  VelocityField u(g, Representation::physical, t);
  const unsigned char* q = p + snapshot_header_bytes;
  for (int c = 0; c < 3; ++c)
    for (double& v : u[c].values()) {
      v = std::bit_cast<double>(get(q, 8));
      q += 8;
    }
  return u;
}

void write_snapshot(const std::filesystem::path& path, const VelocityField& u) {
  const auto bytes = encode_snapshot(u);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ComputeError("snapshot: cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ComputeError("snapshot: write failed for " + path.string());
}

VelocityField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("snapshot: cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace ssns
