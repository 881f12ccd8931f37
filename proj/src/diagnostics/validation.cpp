#include "ssns/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/initial_data.hpp"
#include "ssns/spectral.hpp"

namespace ssns {

namespace {

void require_two_pi(const Grid& grid, const char* what) {
  if (std::abs(grid.length() - 2.0 * std::numbers::pi) > 1e-12)
    throw ValidationError(std::string(what) + ": box length must be 2*pi");
}

double max_mode_delta(const VelocityField& a, const VelocityField& b) {
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto x = a[c].modes(), y = b[c].modes();
    for (std::size_t m = 0; m < x.size(); ++m) worst = std::max(worst, std::abs(x[m] - y[m]));
  }
  return worst;
}

}  // namespace

VelocityField taylor_green_2d(const Grid& grid, double t) {
  require_two_pi(grid, "taylor_green_2d");
  VelocityField u(grid, Representation::physical, t);
  const int n = grid.n();
  const double h = grid.spacing();
  const double decay = std::exp(-2.0 * t);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double x = i * h, y = j * h;
        const std::size_t p = grid.point_index(i, j, k);
        u[0].values()[p] = std::cos(x) * std::sin(y) * decay;
        u[1].values()[p] = -std::sin(x) * std::cos(y) * decay;
        u[2].values()[p] = 0.0;
      }
  return to_spectral(u);
}

VelocityField taylor_green_3d(const Grid& grid, double amplitude) {
  require_two_pi(grid, "taylor_green_3d");
  VelocityField u(grid, Representation::physical);
  const int n = grid.n();
  const double h = grid.spacing();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double x = i * h, y = j * h, z = k * h;
        const std::size_t p = grid.point_index(i, j, k);
        u[0].values()[p] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        u[1].values()[p] = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
        u[2].values()[p] = 0.0;
      }
  return to_spectral(u);
}

ScalarField random_scalar(const Grid& grid, std::uint64_t seed, int band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  ScalarField f(grid, Representation::physical);
  for (double& v : f.values()) v = dist(rng);
  ScalarField s = to_spectral(f);
  const int n = grid.n();
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < grid.half(); ++kx) {
        const bool keep = std::abs(grid.mode_number(kx)) <= band &&
                          std::abs(grid.mode_number(ky)) <= band &&
                          std::abs(grid.mode_number(kz)) <= band && 2 * band < n;
        if (!keep) s.modes()[grid.mode_index(kx, ky, kz)] = Complex{};
      }
  return s;
}

VelocityField random_velocity(const Grid& grid, std::uint64_t seed, int band, bool solenoidal) {
  VelocityField u({random_scalar(grid, seed * 3 + 0, band), random_scalar(grid, seed * 3 + 1, band),
                   random_scalar(grid, seed * 3 + 2, band)},
                  0.0);
  return solenoidal ? leray_project(u) : u;
}

double relative_l2_error(const VelocityField& a, const VelocityField& b) {
  const VelocityField pa = a.is_spectral() ? to_physical(a) : a;
  const VelocityField pb = b.is_spectral() ? to_physical(b) : b;
  return std::sqrt(l2_norm_squared(add(pa, pb, -1.0)) / l2_norm_squared(pb));
}

double temporal_order(int n, double dt, double t_end, double amplitude,
                      std::array<double, 2>* differences) {
  const Grid grid(n, 2.0 * std::numbers::pi);
  const VelocityField u0 = taylor_green_3d(grid, amplitude);
  std::array<VelocityField, 3> finals{u0, u0, u0};
  for (int i = 0; i < 3; ++i) {
    SolverConfig cfg;
    cfg.dt = dt / (1 << i);
    cfg.t_end = t_end;
    cfg.snapshot_times = {t_end};
    finals[i] = run(u0, cfg).snapshots.back().field;
  }
  const double d1 = relative_l2_error(finals[0], finals[1]);
  const double d2 = relative_l2_error(finals[1], finals[2]);
  if (differences != nullptr) *differences = {d1, d2};
  return std::log2(d1 / d2);
}

TaylorGreenReport validate_taylor_green(int n, double dt, double t_end) {
  TaylorGreenReport r;
  const Grid grid(n, 2.0 * std::numbers::pi);
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  const Trajectory traj = run(taylor_green_2d(grid, 0.0), cfg);
  r.relative_error = relative_l2_error(traj.snapshots.back().field, taylor_green_2d(grid, t_end));
  for (const auto& s : traj.energy) r.max_divergence = std::max(r.max_divergence, s.divergence);
  r.energy_relative = energy_balance(traj, 0.0, t_end).relative;
  r.order = temporal_order(32, 1e-2, t_end, 1.0, &r.differences);
  return r;
}

HeatReport validate_heat(int n) {
  HeatReport r;
  const Grid grid(n, 2.0 * std::numbers::pi);
  const VelocityField u0 = sample_u0_alpha(grid, InitialDataSpec::defaults(grid, 1.0));
  SolverConfig cfg;
  cfg.nonlinear = false;
  cfg.dt = 1e-3;
  cfg.t_end = 0.05;
  const Trajectory traj = run(u0, cfg);
  for (const auto& s : traj.snapshots) {
    const VelocityField exact = linear_heat_solve(u0, s.t);
    r.max_error = std::max(r.max_error, max_mode_delta(s.field, exact) / spectral_sup(exact));
  }
  r.snapshots = static_cast<int>(traj.snapshots.size());
  const VelocityField two = linear_heat_solve(linear_heat_solve(u0, 0.01), 0.02);
  const VelocityField one = linear_heat_solve(u0, 0.03);
  r.semigroup = max_mode_delta(two, one) / spectral_sup(one);
  return r;
}

ProjectorReport validate_projector(int n, std::uint64_t seed) {
  ProjectorReport r;
  const Grid grid(n, 2.0 * std::numbers::pi);
  const VelocityField f = random_velocity(grid, seed, n / 2 - 1, false);
  const VelocityField pf = leray_project(f);
  const VelocityField ppf = leray_project(pf);
  const double scale = spectral_sup(f);
  r.idempotence = max_mode_delta(ppf, pf) / scale;
  r.annihilation = divergence_sup(pf);
  const VelocityField g = gradient(random_scalar(grid, seed + 17, n / 2 - 1));
  r.gradient = spectral_sup(leray_project(g)) / spectral_sup(g);
  const VelocityField fp = to_physical(f), pfp = to_physical(pf);
  r.orthogonality = std::abs(inner_product(pfp, add(fp, pfp, -1.0))) / l2_norm_squared(fp);
  return r;
}

}  // namespace ssns
