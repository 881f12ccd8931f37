#include "ssns/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/spectral.hpp"

namespace ssns {

InitialDataSpec InitialDataSpec::defaults(const Grid& grid, double alpha) {
  const double l = grid.length();
  InitialDataSpec s;
  s.alpha = alpha;
  s.delta = l / 64.0;
  s.window = Window{0.48 * l, 0.08 * l};
  return s;
}

void InitialDataSpec::validate(const Grid& grid) const {
  const double l = grid.length();
  if (!std::isfinite(alpha)) throw ValidationError("data.alpha must be finite");
  if (!(delta >= 0.0)) throw ValidationError("data.delta must be >= 0");
  if (!(window.radius > delta)) {
    throw ValidationError("data.window_radius must exceed data.delta");
  }
  if (!(window.radius < l / 2.0)) {
    throw ValidationError("data.window_radius must be < L/2");
  }
  if (!(window.width > 0.0) || !(window.width < window.radius)) {
    throw ValidationError("data.window_width must lie in (0, window_radius)");
  }
}

std::array<double, 3> ContinuumData::operator()(const std::array<double, 3>& x) const {
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + delta * delta;
  if (r2 == 0.0) {
    throw ValidationError("continuum data: evaluation at the singularity");
  }
  const double s = alpha / r2;
  return {s * (x[1] - x[2]), s * (x[2] - x[0]), s * (x[0] - x[1])};
}

double smooth_step(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - s));
  const double b = std::exp(-1.0 / s);
  return a / (a + b);
}

double window_value(const Window& w, double r) {
  return smooth_step((r - (w.radius - w.width)) / w.width);
}

VelocityField sample_u0_alpha(const Grid& grid, const InitialDataSpec& spec) {
  spec.validate(grid);
  if (spec.delta == 0.0) {
    // The box center is always a grid point.
    throw ValidationError("sample_u0_alpha: delta = 0 samples the singularity");
  }
  const ContinuumData u0{spec.alpha, spec.delta};
  VelocityField u(grid, Representation::physical);
  const int n = grid.n();
  for (int k = 0; k < n; ++k) {
    const double z = grid.centered_coordinate(k);
    for (int j = 0; j < n; ++j) {
      const double y = grid.centered_coordinate(j);
      for (int i = 0; i < n; ++i) {
        const double x = grid.centered_coordinate(i);
        const double w = window_value(spec.window, std::sqrt(x * x + y * y + z * z));
        const std::size_t p = grid.point_index(i, j, k);
        if (w == 0.0) continue;
        const auto v = u0({x, y, z});
        for (int c = 0; c < 3; ++c) u[c].values()[p] = w * v[c];
      }
    }
  }
  return leray_project(to_spectral(u));
}

double verify_homogeneity(const ContinuumData& u0, double lambda,
                          std::span<const std::array<double, 3>> points) {
  if (!(lambda > 0.0)) throw ValidationError("verify_homogeneity: lambda must be > 0");
  double worst = 0.0;
  for (const auto& x : points) {
    const auto a = u0(x);
    const auto b = u0({lambda * x[0], lambda * x[1], lambda * x[2]});
    double num = 0.0, den = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double d = lambda * b[c] - a[c];
      num += d * d;
      den += a[c] * a[c];
    }
    if (den == 0.0) continue;  // zero of the field, e.g. on the x1=x2=x3 line
    worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

VelocityField localize(const VelocityField& u, const Window& window) {
  VelocityField phys = u.is_spectral() ? to_physical(u) : u;
  const Grid& grid = u.grid();
  const int n = grid.n();
  for (int k = 0; k < n; ++k) {
    const double z = grid.centered_coordinate(k);
    for (int j = 0; j < n; ++j) {
      const double y = grid.centered_coordinate(j);
      for (int i = 0; i < n; ++i) {
        const double x = grid.centered_coordinate(i);
        const double w = window_value(window, std::sqrt(x * x + y * y + z * z));
        const std::size_t p = grid.point_index(i, j, k);
        for (int c = 0; c < 3; ++c) phys[c].values()[p] *= w;
      }
    }
  }
  return leray_project(to_spectral(phys));
}

double l2_loc_unif_norm(const VelocityField& u, double r, int stride) {
  u.require(Representation::physical, "l2_loc_unif_norm");
  const Grid& grid = u.grid();
  if (!(r > 0.0) || r > grid.length() / 4.0) {
    throw ValidationError("l2_loc_unif_norm: radius must lie in (0, L/4]");
  }
  const int n = grid.n();
  if (stride <= 0) stride = std::max(1, n / 8);
  const double h = grid.spacing();
  const int reach = static_cast<int>(std::floor(r / h));
  // Ball stencil as integer offsets.
  std::vector<std::array<int, 3>> stencil;
  for (int dz = -reach; dz <= reach; ++dz) {
    for (int dy = -reach; dy <= reach; ++dy) {
      for (int dx = -reach; dx <= reach; ++dx) {
        if ((dx * dx + dy * dy + dz * dz) * h * h <= r * r * (1 + 1e-12)) {
          stencil.push_back({dx, dy, dz});
        }
      }
    }
  }
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  double best = 0.0;
  for (int cz = 0; cz < n; cz += stride) {
    for (int cy = 0; cy < n; cy += stride) {
      for (int cx = 0; cx < n; cx += stride) {
        double s = 0.0;
        for (const auto& o : stencil) {
          const std::size_t p = grid.point_index(wrap(cx + o[0]), wrap(cy + o[1]), wrap(cz + o[2]));
          for (int c = 0; c < 3; ++c) s += u[c].values()[p] * u[c].values()[p];
        }
        best = std::max(best, s);
      }
    }
  }
  return std::sqrt(best * h * h * h);
}

}  // namespace ssns
