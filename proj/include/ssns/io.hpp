#pragma once

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ssns/config.hpp"
#include "ssns/field.hpp"
#include "ssns/solver.hpp"

namespace ssns {

/// Snapshot file: "SSNS", u32 version = 1, u32 N, f64 L, f64 t, u32 components
/// = 3, then 3*N^3 f64 values (component-major, x-fastest, physical). All
/// little-endian; the header is 32 bytes.
inline constexpr std::uint32_t snapshot_version = 1;
inline constexpr std::size_t snapshot_header_bytes = 32;

/// Writes the physical values of u (spectral input is transformed first).
void write_snapshot(const std::filesystem::path& path, const VelocityField& u);
/// Physical field carrying the stored time. Throws ValidationError on bad
/// magic, version mismatch, truncated or oversized payload.
VelocityField read_snapshot(const std::filesystem::path& path);

std::vector<unsigned char> encode_snapshot(const VelocityField& u);
VelocityField decode_snapshot(const std::vector<unsigned char>& bytes);

/// CSV with '#'-prefixed "key: value" provenance lines, one header row and
/// %.17g numbers.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::map<std::string, std::string>& provenance,
            const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);

 private:
  std::FILE* file_;
  std::size_t columns_;
};

struct CsvTable {
  std::map<std::string, std::string> provenance;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

/// Throws ValidationError when `expected` is nonempty and the header differs.
CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expected = {});

/// Report column sets shared by the writers and the readers.
namespace schema {
extern const std::vector<std::string> energy;
extern const std::vector<std::string> manifest;
extern const std::vector<std::string> scaling;
extern const std::vector<std::string> decay;
extern const std::vector<std::string> profile_collapse;
extern const std::vector<std::string> profile_field;
extern const std::vector<std::string> serrin;
extern const std::vector<std::string> l2loc;
extern const std::vector<std::string> commutation;
}  // namespace schema

/// Trajectory directory:
///   config.ini            normalized run config
///   manifest.csv          index,t per snapshot (config hash in provenance)
///   snapshots/NNNN.ssns   snapshot files
///   energy.csv            per-step energy series
class TrajectoryWriter {
 public:
  TrajectoryWriter(const std::filesystem::path& dir, const RunConfig& cfg);
  void snapshot(const Snapshot& s);
  void finish(const Trajectory& traj);

 private:
  std::filesystem::path dir_;
  RunConfig config_;
  std::vector<double> times_;
};

struct StoredTrajectory {
  RunConfig config;
  Trajectory trajectory;  // snapshots in spectral form
};

/// Throws ValidationError when files are missing or the manifest's config
/// hash disagrees with config.ini.
StoredTrajectory load_trajectory(const std::filesystem::path& dir);

/// Provenance lines for a report derived from `cfg`.
std::map<std::string, std::string> provenance(const RunConfig& cfg, const std::string& kind);

}  // namespace ssns
