#pragma once

#include <array>
#include <span>
#include <vector>

#include "ssns/field.hpp"

namespace ssns {

/// Trigonometric interpolant of a spectral scalar field on the tensor product
/// xs x ys x zs of absolute box coordinates. Exact for band-limited fields;
/// Nyquist modes enter through their cosine part so the result is real.
/// Output is x-fastest: index a + |xs|*(b + |ys|*c).
RealBuffer evaluate_tensor(const ScalarField& f, std::span<const double> xs,
                           std::span<const double> ys,
                           std::span<const double> zs);

/// Periodic trilinear interpolation of a physical field (cross-check only).
double trilinear(const ScalarField& f, const std::array<double, 3>& x);

/// Velocity samples on a cube of points center + (o_a, o_b, o_c) for offsets
/// o drawn from the same list on every axis.
struct CubeSample {
  std::vector<double> offsets;
  std::array<RealBuffer, 3> values;

  std::size_t side() const { return offsets.size(); }
  std::size_t index(std::size_t a, std::size_t b, std::size_t c) const {
    return a + side() * (b + side() * c);
  }
  double radius_squared(std::size_t a, std::size_t b, std::size_t c) const {
    return offsets[a] * offsets[a] + offsets[b] * offsets[b] +
           offsets[c] * offsets[c];
  }
};

/// Offsets m*h for m in [-cells, cells].
std::vector<double> grid_offsets(const Grid& grid, int cells);

/// Trigonometric samples of a spectral velocity at center + offsets.
CubeSample sample_cube(const VelocityField& u, const std::array<double, 3>& center,
                       std::vector<double> offsets);

/// Direct grid values of a physical velocity in the cube of +-cells around
/// the box center.
CubeSample grid_cube(const VelocityField& u, int cells);

}  // namespace ssns
