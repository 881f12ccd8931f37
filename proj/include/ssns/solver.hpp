#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ssns/field.hpp"
#include "ssns/initial_data.hpp"
#include "ssns/spectral.hpp"

namespace ssns {

/// Time integration of u_t - lap u + P div((rho_eps * u) (x) u) = 0 with unit
/// viscosity; epsilon = 0 integrates the unmollified projected system.
struct SolverConfig {
  double epsilon = 0.0;
  double dt = 1e-3;
  double t_end = 0.1;
  /// Geometric snapshots t_end * ratio^-m down to snapshot_t0 (0 selects
  /// 1e-3 * t_end). The default ratio sqrt(2) puts t/4 four rungs below t,
  /// so every lambda = 2^-m pairing lands on recorded times.
  double snapshot_t0 = 0.0;
  double snapshot_ratio = 1.4142135623730951;
  /// Explicit snapshot times; overrides the geometric schedule when set.
  std::vector<double> snapshot_times;
  bool nonlinear = true;
  double cfl = 0.5;

  void validate() const;
  std::vector<double> resolved_snapshot_times() const;
};

struct Snapshot {
  double t;
  VelocityField field;  // spectral
};

/// One row per completed step (plus t = 0).
struct EnergySample {
  double t = 0.0;
  double energy = 0.0;            // 1/2 int |u|^2
  double dissipation_rate = 0.0;  // int |grad u|^2
  double dissipated = 0.0;        // int_0^t dissipation_rate
  double divergence = 0.0;        // divergence_sup after the step
  double velocity_sup = 0.0;      // nonlinear runs: max |u| seen by the CFL check
};

struct Trajectory {
  Grid grid{8, 1.0};
  SolverConfig config;
  std::optional<InitialDataSpec> data;
  std::vector<Snapshot> snapshots;
  std::vector<EnergySample> energy;

  /// Snapshot at time t within relative tolerance, or nullptr.
  const Snapshot* find(double t, double rel_tol = 1e-9) const;
  const EnergySample* find_energy(double t, double rel_tol = 1e-9) const;
};

/// Integrating-factor RK4 stepper. Owns its mollifier and exponential caches.
class Stepper {
 public:
  Stepper(const Grid& grid, const SolverConfig& config);

  /// Advances a divergence-free spectral field by h; `dissipated` (optional)
  /// receives int_t^{t+h} |grad u|^2 by the same RK4 quadrature.
  VelocityField advance(const VelocityField& u, double h, double* dissipated = nullptr,
                        double* velocity_sup = nullptr);

 private:
  VelocityField rhs(const VelocityField& u, double* velocity_sup) const;
  void prepare(double h);

  Grid grid_;
  SolverConfig config_;
  Mollifier mollifier_;
  std::shared_ptr<const SpectralTables> tables_;
  double cached_h_ = -1.0;
  RealBuffer full_;
  RealBuffer halfway_;
};

/// One step of size cfg.dt.
VelocityField step(const VelocityField& u, const SolverConfig& cfg);

struct RunOptions {
  /// Called for each snapshot in time order.
  std::function<void(const Snapshot&)> on_snapshot;
  /// Keep snapshots in the returned trajectory.
  bool keep_snapshots = true;
};

/// Integrates to t_end landing exactly on every snapshot time. The initial
/// field is recorded as the t = 0 snapshot. Throws ComputeError on CFL
/// violation or non-finite energy.
Trajectory run(const VelocityField& u0, const SolverConfig& cfg,
               const RunOptions& options = {});

/// exp(t lap) u0, exact per mode.
VelocityField linear_heat_solve(const VelocityField& u0, double t);

/// Global balance E(t2) - E(t1) + int_{t1}^{t2} |grad u|^2, with E = 1/2 |u|^2.
struct EnergyBalance {
  double energy_start = 0.0;
  double energy_end = 0.0;
  double dissipated = 0.0;
  double residual = 0.0;
  double relative = 0.0;  // |residual| / energy_start
};
EnergyBalance energy_balance(const Trajectory& traj, double t1, double t2);

/// Largest relative energy increase between consecutive samples
/// (max(0, (E_{n+1} - E_n) / E_n)).
double worst_energy_increase(const Trajectory& traj);

/// Terms of the localized energy balance for a static test function phi:
///   R = A(t2) - A(t1) + 2 int D - int B - int F
/// with A = int |u|^2 phi, D = int |grad u|^2 phi, B = int |u|^2 lap phi and
/// F = int (|u|^2 w + 2 p u) . grad phi (w the mollified velocity, p the
/// matching pressure; F vanishes for linear runs). Time integrals use the
/// trapezoid rule over the snapshots in [t1, t2].
struct LocalEnergyResidual {
  double local_energy_start = 0.0;
  double local_energy_end = 0.0;
  double dissipation = 0.0;
  double diffusion = 0.0;
  double transport = 0.0;
  double residual = 0.0;
  double relative = 0.0;  // |R| / A(t1)
  int slices = 0;
};
LocalEnergyResidual local_energy_residual(const Trajectory& traj,
                                          const ScalarField& phi, double t1,
                                          double t2);

}  // namespace ssns
