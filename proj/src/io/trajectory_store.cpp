#include <cmath>
#include <cstdio>
#include <fstream>

#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/io.hpp"

namespace ssns {

namespace fs = std::filesystem;

namespace {

fs::path snapshot_path(const fs::path& dir, std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof name, "%04zu.ssns", index);
  return dir / "snapshots" / name;
}

}  // namespace

TrajectoryWriter::TrajectoryWriter(const fs::path& dir, const RunConfig& cfg)
    : dir_(dir), config_(cfg) {
  fs::create_directories(dir_ / "snapshots");
  std::ofstream out(dir_ / "config.ini");
  out << config_.normalized();
  if (!out) throw ComputeError("trajectory: cannot write " + (dir_ / "config.ini").string());
}

void TrajectoryWriter::snapshot(const Snapshot& s) {
  write_snapshot(snapshot_path(dir_, times_.size()), s.field);
  times_.push_back(s.t);
}

void TrajectoryWriter::finish(const Trajectory& traj) {
  const auto prov = provenance(config_, "manifest");
  {
    CsvWriter m(dir_ / "manifest.csv", prov, schema::manifest);
    for (std::size_t i = 0; i < times_.size(); ++i) m.row({static_cast<double>(i), times_[i]});
  }
  CsvWriter e(dir_ / "energy.csv", provenance(config_, "energy"), schema::energy);
  for (const auto& s : traj.energy)
    e.row({s.t, s.energy, s.dissipation_rate, s.dissipated, s.divergence, s.velocity_sup});
}

StoredTrajectory load_trajectory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ValidationError("trajectory: not a directory: " + dir.string());
  StoredTrajectory out;
  out.config = load_config(dir / "config.ini");
  const CsvTable manifest = read_csv(dir / "manifest.csv", schema::manifest);
  const auto it = manifest.provenance.find("config_hash");
  if (it == manifest.provenance.end() || it->second != out.config.hash())
    throw ValidationError("trajectory: manifest config hash does not match config.ini in " +
                          dir.string());
  Trajectory& traj = out.trajectory;
  traj.grid = out.config.grid();
  traj.config = out.config.solver;
  traj.data = out.config.data();
  for (const auto& row : manifest.rows) {
    const auto index = static_cast<std::size_t>(row[0]);
    VelocityField u = read_snapshot(snapshot_path(dir, index));
    if (u.grid() != traj.grid) throw ValidationError("trajectory: snapshot grid disagrees with config");
    if (u.time() != row[1]) throw ValidationError("trajectory: snapshot time disagrees with manifest");
    const double t = u.time();
    traj.snapshots.push_back({t, to_spectral(u)});
  }
  if (fs::exists(dir / "energy.csv")) {
    const CsvTable e = read_csv(dir / "energy.csv", schema::energy);
    for (const auto& r : e.rows) traj.energy.push_back({r[0], r[1], r[2], r[3], r[4], r[5]});
  }
  return out;
}

}  // namespace ssns
