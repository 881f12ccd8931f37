#include <algorithm>
#include <cmath>

#include "ssns/diagnostics.hpp"
#include "ssns/error.hpp"

namespace ssns {

ProfileField extract_profile(const VelocityField& u, double t, double radius, int samples) {
  u.require(Representation::spectral, "extract_profile");
  if (!(t > 0.0)) throw ValidationError("extract_profile: t must be > 0");
  if (samples < 2) throw ValidationError("extract_profile: need at least 2 samples per axis");
  const double scale = std::sqrt(t);
  if (!(radius > 0.0) || radius * scale > u.grid().length() / 4.0 * (1.0 + 1e-12))
    throw ValidationError("extract_profile: similarity grid escapes the core");
  std::vector<double> ys(samples);
  for (int i = 0; i < samples; ++i) ys[i] = -radius + 2.0 * radius * i / (samples - 1);
  std::vector<double> xs(samples);
  for (int i = 0; i < samples; ++i) xs[i] = scale * ys[i];
  const double c = u.grid().center_index() * u.grid().spacing();
  ProfileField p;
  p.t = t;
  p.radius = radius;
  p.sample = sample_cube(u, {c, c, c}, xs);
  p.sample.offsets = ys;
  for (auto& comp : p.sample.values)
    for (auto& v : comp) v *= scale;
  return p;
}

double profile_distance(const ProfileField& a, const ProfileField& b) {
  if (a.sample.offsets != b.sample.offsets)
    throw ValidationError("profile_distance: profiles use different similarity grids");
  const double r2 = a.radius * a.radius * (1.0 + 1e-12);
  double diff = 0.0, na = 0.0, nb = 0.0;
  const std::size_t m = a.sample.side();
  for (std::size_t z = 0; z < m; ++z)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t x = 0; x < m; ++x) {
        if (a.sample.radius_squared(x, y, z) > r2) continue;
        const std::size_t i = a.sample.index(x, y, z);
        for (int c = 0; c < 3; ++c) {
          const double va = a.sample.values[c][i], vb = b.sample.values[c][i];
          diff += (va - vb) * (va - vb);
          na += va * va;
          nb += vb * vb;
        }
      }
  const double denom = std::sqrt(std::max(na, nb));
  return denom > 0.0 ? std::sqrt(diff) / denom : 0.0;
}

double ProfileCollapse::max_off_diagonal() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = 0; j < times.size(); ++j)
      if (i != j) worst = std::max(worst, at(i, j));
  return worst;
}

ProfileCollapse profile_collapse(const Trajectory& traj, const std::vector<double>& times,
                                 double radius, int samples) {
  std::vector<ProfileField> profiles;
  for (double t : times) {
    const Snapshot* s = traj.find(t);
    if (s == nullptr) throw ValidationError("profile_collapse: time is not a snapshot");
    profiles.push_back(extract_profile(s->field, s->t, radius, samples));
  }
  ProfileCollapse out;
  out.times = times;
  const std::size_t m = times.size();
  out.distance.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = profile_distance(profiles[i], profiles[j]);
      out.distance[i * m + j] = d;
      out.distance[j * m + i] = d;
    }
  return out;
}

}  // namespace ssns
