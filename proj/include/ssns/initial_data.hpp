#pragma once

#include <array>
#include <span>

#include "ssns/field.hpp"

namespace ssns {

/// Smooth radial cutoff: 1 for |x| <= radius - width, 0 for |x| >= radius.
struct Window {
  double radius = 0.0;
  double width = 0.0;
};

/// Regularized homogeneous data
///   alpha * (x2 - x3, x3 - x1, x1 - x2) / (|x|^2 + delta^2)
/// centered in the box and localized by a window.
struct InitialDataSpec {
  double alpha = 1.0;
  double delta = 0.0;
  Window window;

  /// Defaults: delta = L/64, window radius 0.48 L, width 0.08 L.
  static InitialDataSpec defaults(const Grid& grid, double alpha = 1.0);
  /// Throws ValidationError unless 0 <= delta < radius < L/2 and width in (0, radius).
  void validate(const Grid& grid) const;
};

/// Pointwise evaluation of the (regularized) formula at any real point,
/// relative to the singularity.
struct ContinuumData {
  double alpha = 1.0;
  double delta = 0.0;

  std::array<double, 3> operator()(const std::array<double, 3>& x) const;
};

/// C-infinity step: 1 for s <= 0, 0 for s >= 1.
double smooth_step(double s);

/// Window value at distance r from the center.
double window_value(const Window& w, double r);

/// Sampled, windowed and Leray-projected data; spectral representation.
VelocityField sample_u0_alpha(const Grid& grid, const InitialDataSpec& spec);

/// max over points of |lambda u0(lambda x) - u0(x)| / |u0(x)|.
double verify_homogeneity(const ContinuumData& u0, double lambda,
                          std::span<const std::array<double, 3>> points);

/// Multiplies by the window around the box center and re-projects.
/// Accepts either representation; returns spectral.
VelocityField localize(const VelocityField& u, const Window& window);

/// sup over ball centers on a lattice of stride `stride` grid points of the
/// L2 norm on the periodic ball of radius r. stride = 0 picks max(1, N/8).
/// Physical input; requires r <= L/4.
double l2_loc_unif_norm(const VelocityField& u, double r, int stride = 0);

}  // namespace ssns
