#include <algorithm>
#include <cmath>

#include "ssns/diagnostics.hpp"
#include "ssns/error.hpp"
#include "ssns/fft.hpp"

namespace ssns {

namespace {

RealBuffer magnitude(const VelocityField& u) {
  RealBuffer out(u.grid().point_count());
  auto a = u[0].values(), b = u[1].values(), c = u[2].values();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
  return out;
}

// Grid points within distance r of x (periodic wrap), as flat indices.
std::vector<std::size_t> ball_points(const Grid& grid, const std::array<double, 3>& x,
                                     double r, bool strict) {
  const int n = grid.n();
  const double h = grid.spacing();
  int lo[3], hi[3];
  for (int d = 0; d < 3; ++d) {
    lo[d] = static_cast<int>(std::ceil((x[d] - r) / h));
    hi[d] = static_cast<int>(std::floor((x[d] + r) / h));
  }
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  std::vector<std::size_t> out;
  const double r2 = r * r;
  for (int k = lo[2]; k <= hi[2]; ++k)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int i = lo[0]; i <= hi[0]; ++i) {
        const double dx = i * h - x[0], dy = j * h - x[1], dz = k * h - x[2];
        const double d2 = dx * dx + dy * dy + dz * dz;
        if (strict ? d2 < r2 * (1.0 - 1e-12) : d2 <= r2 * (1.0 + 1e-12))
          out.push_back(grid.point_index(wrap(i), wrap(j), wrap(k)));
      }
  return out;
}

}  // namespace

bool serrin_admissible(double p, double q) {
  const bool pinf = std::isinf(p), qinf = std::isinf(q);
  if (pinf && qinf) return true;
  if (pinf) return q > 2.0;
  if (qinf) return p > 3.0;
  // 3/p + 2/q < 1  <=>  3q + 2p < pq for p, q > 0.
  return 3.0 * q + 2.0 * p < p * q;
}

SerrinNorm serrin_norm(const Trajectory& traj, const ParabolicCylinder& cyl, double p,
                       double q) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw ValidationError("serrin_norm: exponents must lie in [1, inf]");
  const Grid& grid = traj.grid;
  if (!(cyl.r > 0.0)) throw ValidationError("serrin_norm: radius must be > 0");
  for (double c : cyl.center)
    if (c - cyl.r < 0.0 || c + cyl.r > grid.length())
      throw ValidationError("serrin_norm: cylinder leaves the box");
  const double half = 0.5 * cyl.r * cyl.r;
  const double t_last = traj.snapshots.empty() ? 0.0 : traj.snapshots.back().t;
  if (cyl.t - half < 0.0 || cyl.t + half > t_last * (1.0 + 1e-12))
    throw ValidationError("serrin_norm: cylinder leaves the time range");

  SerrinNorm out;
  out.p = p;
  out.q = q;
  out.admissible = serrin_admissible(p, q);
  const std::vector<std::size_t> pts = ball_points(grid, cyl.center, cyl.r, true);
  const double dv = std::pow(grid.spacing(), 3);
  out.points = static_cast<int>(pts.size());
  out.volume = pts.size() * dv;

  std::vector<double> times, values;
  for (const auto& s : traj.snapshots) {
    if (std::abs(s.t - cyl.t) >= half) continue;
    const RealBuffer mag = magnitude(to_physical(s.field));
    double v = 0.0;
    if (std::isinf(p)) {
      for (std::size_t i : pts) v = std::max(v, mag[i]);
    } else {
      for (std::size_t i : pts) v += std::pow(mag[i], p);
      v = std::pow(v * dv, 1.0 / p);
    }
    times.push_back(s.t);
    values.push_back(v);
  }
  out.slices = static_cast<int>(times.size());
  if (times.empty()) throw ValidationError("serrin_norm: no snapshot inside the cylinder");
  out.duration = times.back() - times.front();
  if (std::isinf(q)) {
    out.value = *std::max_element(values.begin(), values.end());
  } else {
    if (times.size() < 2)
      throw ValidationError("serrin_norm: finite q needs two snapshots inside the cylinder");
    double total = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
      total += 0.5 * (times[i] - times[i - 1]) *
               (std::pow(values[i], q) + std::pow(values[i - 1], q));
    out.value = std::pow(total, 1.0 / q);
  }
  return out;
}

std::vector<SingularCandidate> singular_candidate_scan(const Trajectory& traj,
                                                       const std::vector<double>& radii,
                                                       double threshold, int stride) {
  if (radii.empty()) throw ValidationError("singular_candidate_scan: empty radius list");
  if (!(threshold > 0.0) || !std::isfinite(threshold))
    throw ValidationError("singular_candidate_scan: threshold must be finite and > 0");
  if (stride < 1) throw ValidationError("singular_candidate_scan: stride must be >= 1");
  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());
  const Grid& grid = traj.grid;
  const int n = grid.n();
  const double h = grid.spacing();

  std::vector<RealBuffer> mags;
  for (const auto& s : traj.snapshots) mags.push_back(magnitude(to_physical(s.field)));

  // Integer ball stencils per radius.
  std::vector<std::vector<std::array<int, 3>>> stencils;
  for (double r : rs) {
    std::vector<std::array<int, 3>> st;
    const int reach = static_cast<int>(std::floor(r / h));
    for (int dz = -reach; dz <= reach; ++dz)
      for (int dy = -reach; dy <= reach; ++dy)
        for (int dx = -reach; dx <= reach; ++dx)
          if ((dx * dx + dy * dy + dz * dz) * h * h < r * r * (1.0 - 1e-12)) st.push_back({dx, dy, dz});
    stencils.push_back(std::move(st));
  }
  auto wrap = [n](int i) { return ((i % n) + n) % n; };

  std::vector<SingularCandidate> out;
  for (std::size_t si = 0; si < traj.snapshots.size(); ++si) {
    const double t = traj.snapshots[si].t;
    if (t <= 0.0) continue;
    // Per radius, the pointwise max of |u| over the snapshots in the time window.
    std::vector<RealBuffer> window;
    for (double r : rs) {
      RealBuffer w = mags[si];
      for (std::size_t sj = 0; sj < traj.snapshots.size(); ++sj) {
        const double tj = traj.snapshots[sj].t;
        if (sj == si || tj <= 0.0 || std::abs(tj - t) >= 0.5 * r * r) continue;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::max(w[i], mags[sj][i]);
      }
      window.push_back(std::move(w));
    }
    for (int k = 0; k < n; k += stride)
      for (int j = 0; j < n; j += stride)
        for (int i = 0; i < n; i += stride) {
          std::vector<double> scaled(rs.size());
          bool flagged = true;
          for (std::size_t ri = 0; ri < rs.size() && flagged; ++ri) {
            double best = 0.0;
            for (const auto& o : stencils[ri])
              best = std::max(best, window[ri][grid.point_index(wrap(i + o[0]), wrap(j + o[1]),
                                                                 wrap(k + o[2]))]);
            scaled[ri] = rs[ri] * best;
            flagged = scaled[ri] > threshold;
          }
          if (!flagged) continue;
          SingularCandidate c;
          c.x = {i * h, j * h, k * h};
          c.t = t;
          c.scaled_sup = scaled;
          if (rs.size() >= 2) {
            const double s0 = scaled.front() / rs.front(), s1 = scaled.back() / rs.back();
            c.growth_exponent = -std::log(s1 / s0) / std::log(rs.back() / rs.front());
          }
          out.push_back(std::move(c));
        }
  }
  return out;
}

}  // namespace ssns
