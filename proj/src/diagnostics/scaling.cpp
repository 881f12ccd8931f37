#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssns/diagnostics.hpp"
#include "ssns/error.hpp"
#include "ssns/fft.hpp"

namespace ssns {

namespace {

int ball_cells(const Grid& grid, double radius) {
  return static_cast<int>(std::floor(radius / grid.spacing() * (1.0 + 1e-12)));
}

bool inside(const CubeSample& s, std::size_t a, std::size_t b, std::size_t c, double r2) {
  return s.radius_squared(a, b, c) <= r2 * (1.0 + 1e-12);
}

std::array<double, 3> box_center(const Grid& grid) {
  const double c = grid.center_index() * grid.spacing();
  return {c, c, c};
}

}  // namespace

std::vector<double> DyadicLadder::values() const {
  if (max_exponent < 0) throw ValidationError("ladder: max_exponent must be >= 0");
  std::vector<double> out;
  for (int m = 0; m <= max_exponent; ++m) out.push_back(std::ldexp(1.0, -m));
  return out;
}

CoreBall CoreBall::defaults(const Grid& grid) { return CoreBall{grid.length() / 8.0}; }

void CoreBall::validate(const Grid& grid) const {
  if (!(radius > 0.0) || radius > grid.length() / 4.0 * (1.0 + 1e-12))
    throw ValidationError("ball: radius must lie in (0, L/4]");
}

CubeSample rescale_field(const VelocityField& u, double lambda,
                         const std::vector<double>& offsets) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw ValidationError("rescale_field: lambda must lie in (0, 1]");
  u.require(Representation::spectral, "rescale_field");
  const double reach = std::max(std::abs(offsets.front()), std::abs(offsets.back()));
  if (lambda * reach > u.grid().length() / 4.0 * (1.0 + 1e-12))
    throw ValidationError("rescale_field: evaluation region escapes the core");
  std::vector<double> scaled;
  scaled.reserve(offsets.size());
  for (double o : offsets) scaled.push_back(lambda * o);
  CubeSample s = sample_cube(u, box_center(u.grid()), std::move(scaled));
  s.offsets = offsets;
  for (auto& comp : s.values)
    for (auto& v : comp) v *= lambda;
  return s;
}

ScalingParts scaling_parts(const VelocityField& now, const VelocityField& earlier,
                           double lambda, const CoreBall& ball) {
  now.require(Representation::physical, "scaling_parts");
  const Grid& grid = now.grid();
  ball.validate(grid);
  const int cells = ball_cells(grid, ball.radius);
  const CubeSample a = grid_cube(now, cells);
  const CubeSample b = rescale_field(earlier, lambda, a.offsets);
  const double r2 = ball.radius * ball.radius;
  double diff = 0.0, ref = 0.0;
  const std::size_t m = a.side();
  for (std::size_t z = 0; z < m; ++z)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t x = 0; x < m; ++x) {
        if (!inside(a, x, y, z, r2)) continue;
        const std::size_t i = a.index(x, y, z);
        for (int c = 0; c < 3; ++c) {
          const double d = a.values[c][i] - b.values[c][i];
          diff += d * d;
          ref += a.values[c][i] * a.values[c][i];
        }
      }
  const double dv = std::pow(grid.spacing(), 3);
  return ScalingParts{std::sqrt(diff * dv), std::sqrt(ref * dv)};
}

std::vector<ScalingRow> ScalingResidualReport::for_lambda(double lambda) const {
  std::vector<ScalingRow> out;
  for (const auto& r : rows)
    if (r.lambda == lambda) out.push_back(r);
  return out;
}

ScalingResidualReport scaling_residual(const Trajectory& traj, const DyadicLadder& ladder,
                                       const CoreBall& ball) {
  ball.validate(traj.grid);
  if (traj.snapshots.size() < 2)
    throw ValidationError("scaling_residual: trajectory needs at least two snapshots");
  ScalingResidualReport report;
  report.ball = ball;
  for (double lambda : ladder.values()) {
    int pairs = 0;
    for (const auto& s : traj.snapshots) {
      if (s.t <= 0.0) continue;
      const Snapshot* partner = traj.find(lambda * lambda * s.t);
      if (partner == nullptr || partner->t <= 0.0) continue;
      const VelocityField now = to_physical(s.field);
      const double res = scaling_parts(now, partner->field, lambda, ball).relative();
      report.rows.push_back({lambda, s.t, res});
      ++pairs;
    }
    if (pairs == 0) {
      std::ostringstream msg;
      msg << "scaling_residual: no snapshot pair (t, lambda^2 t) for lambda = " << lambda;
      throw ValidationError(msg.str());
    }
  }
  return report;
}

DecayReport decay_law(std::vector<DecayRow> rows) {
  if (rows.size() < 3) throw ValidationError("decay_law: need at least 3 snapshots in the window");
  DecayReport r;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rows.size());
  for (auto& row : rows) {
    row.scaled = std::sqrt(row.t) * row.sup_norm;
    const double x = std::log(row.t), y = std::log(row.sup_norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double lo = rows.front().scaled, hi = lo;
  for (const auto& row : rows) {
    lo = std::min(lo, row.scaled);
    hi = std::max(hi, row.scaled);
  }
  r.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.variation = lo > 0.0 ? hi / lo - 1.0 : 0.0;
  r.rows = std::move(rows);
  return r;
}

DecayReport decay_law(const Trajectory& traj, double t_lo, double t_hi, const CoreBall& ball) {
  ball.validate(traj.grid);
  const Grid& grid = traj.grid;
  const int cells = ball_cells(grid, ball.radius);
  const double r2 = ball.radius * ball.radius;
  std::vector<DecayRow> rows;
  const double tol = 1e-9 * std::max(1.0, t_hi);
  for (const auto& s : traj.snapshots) {
    if (s.t <= 0.0 || s.t < t_lo - tol || s.t > t_hi + tol) continue;
    const CubeSample cube = grid_cube(to_physical(s.field), cells);
    double best = 0.0;
    const std::size_t m = cube.side();
    for (std::size_t z = 0; z < m; ++z)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t x = 0; x < m; ++x) {
          if (!inside(cube, x, y, z, r2)) continue;
          const std::size_t i = cube.index(x, y, z);
          double q = 0.0;
          for (int c = 0; c < 3; ++c) q += cube.values[c][i] * cube.values[c][i];
          best = std::max(best, q);
        }
    rows.push_back({s.t, std::sqrt(best), 0.0});
  }
  DecayReport r = decay_law(std::move(rows));
  r.ball = ball;
  return r;
}

std::vector<ConvergenceRow> l2loc_convergence(const Trajectory& traj, const VelocityField& u0,
                                              double r1, double r2) {
  const Grid& grid = traj.grid;
  require_same_grid(grid, u0.grid(), "l2loc_convergence");
  if (!(r1 >= 0.0) || !(r2 > r1) || r2 > grid.length() / 2.0)
    throw ValidationError("l2loc_convergence: annulus needs 0 <= r1 < r2 <= L/2");
  const VelocityField base = u0.is_spectral() ? to_physical(u0) : u0;
  const int n = grid.n();
  std::vector<std::size_t> points;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double x = grid.centered_coordinate(i), y = grid.centered_coordinate(j),
                     z = grid.centered_coordinate(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r >= r1 && r <= r2) points.push_back(grid.point_index(i, j, k));
      }
  double reference = 0.0;
  for (std::size_t p : points)
    for (int c = 0; c < 3; ++c) reference += base[c].values()[p] * base[c].values()[p];
  const double dv = std::pow(grid.spacing(), 3);
  reference *= dv;
  std::vector<ConvergenceRow> out;
  for (const auto& s : traj.snapshots) {
    const VelocityField u = to_physical(s.field);
    double total = 0.0;
    for (std::size_t p : points)
      for (int c = 0; c < 3; ++c) {
        const double d = u[c].values()[p] - base[c].values()[p];
        total += d * d;
      }
    total *= dv;
    out.push_back({s.t, total, reference > 0.0 ? total / reference : 0.0});
  }
  return out;
}

}  // namespace ssns
