#pragma once

#include <array>
#include <cstdint>

#include "ssns/field.hpp"
#include "ssns/solver.hpp"

namespace ssns {

/// (cos x sin y, -sin x cos y, 0) e^{-2t} on a 2*pi box, spectral.
VelocityField taylor_green_2d(const Grid& grid, double t);

/// a (sin x cos y cos z, -cos x sin y cos z, 0) on a 2*pi box, spectral.
VelocityField taylor_green_3d(const Grid& grid, double amplitude);

/// Random real field with modes |m_i| <= band, spectral. Deterministic in seed.
ScalarField random_scalar(const Grid& grid, std::uint64_t seed, int band);
/// Three random components; projected when `solenoidal`.
VelocityField random_velocity(const Grid& grid, std::uint64_t seed, int band,
                              bool solenoidal = true);

/// |a - b|_{L2} / |b|_{L2}.
double relative_l2_error(const VelocityField& a, const VelocityField& b);

struct TaylorGreenReport {
  double relative_error = 0.0;  // 2D vortex at t_end against the closed form
  double max_divergence = 0.0;  // over every step of that run
  double energy_relative = 0.0; // global balance residual over [0, t_end]
  double order = 0.0;           // temporal self-convergence of the 3D vortex
  std::array<double, 2> differences{};
};

/// Order from |u_dt - u_{dt/2}| and |u_{dt/2} - u_{dt/4}| at t_end.
double temporal_order(int n, double dt, double t_end, double amplitude,
                      std::array<double, 2>* differences = nullptr);

TaylorGreenReport validate_taylor_green(int n = 64, double dt = 2e-3, double t_end = 0.5);

struct HeatReport {
  double max_error = 0.0;  // heat-only run against linear_heat_solve, relative sup
  double semigroup = 0.0;  // solve(t1) solve(t2) against solve(t1 + t2)
  int snapshots = 0;
};
HeatReport validate_heat(int n = 32);

struct ProjectorReport {
  double idempotence = 0.0;    // max |P P F - P F| / max |F| per mode
  double annihilation = 0.0;   // divergence_sup(P F)
  double gradient = 0.0;       // max |P grad phi| / max |grad phi|
  double orthogonality = 0.0;  // |<P F, F - P F>| / |F|^2
};
ProjectorReport validate_projector(int n = 32, std::uint64_t seed = 1);

}  // namespace ssns
