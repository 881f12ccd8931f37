#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ssns/initial_data.hpp"
#include "ssns/interpolation.hpp"
#include "ssns/solver.hpp"

namespace ssns {

/// Scaling factors lambda_m = 2^-m, m = 0..max_exponent.
struct DyadicLadder {
  int max_exponent = 3;

  std::vector<double> values() const;
};

/// Ball around the box center (the singularity location) of the given radius.
struct CoreBall {
  double radius = 0.0;

  /// Default radius L/8.
  static CoreBall defaults(const Grid& grid);
  /// Throws ValidationError unless 0 < radius <= L/4.
  void validate(const Grid& grid) const;
};

/// Unnormalized pieces of a scaling comparison on a ball of grid points:
/// difference = |u(., t) - lambda u(lambda ., s)|_{L2(B)}, reference = |u(., t)|_{L2(B)}.
struct ScalingParts {
  double difference = 0.0;
  double reference = 0.0;
  double relative() const { return reference > 0.0 ? difference / reference : 0.0; }
};

/// x -> lambda * u(c + lambda x) sampled at c + offsets on every axis
/// (c the box center); trigonometric interpolation of a spectral field.
CubeSample rescale_field(const VelocityField& u, double lambda,
                         const std::vector<double>& offsets);

/// Compares a physical snapshot `now` with the rescaled spectral snapshot
/// `earlier` on the grid points of the ball.
ScalingParts scaling_parts(const VelocityField& now, const VelocityField& earlier,
                           double lambda, const CoreBall& ball);

struct ScalingRow {
  double lambda;
  double t;
  double residual;
};

struct ScalingResidualReport {
  CoreBall ball;
  std::vector<ScalingRow> rows;

  /// Rows for one lambda in time order.
  std::vector<ScalingRow> for_lambda(double lambda) const;
};

/// S(lambda, t) for every ladder entry and every snapshot t > 0 whose partner
/// lambda^2 t is also a snapshot. Throws ValidationError when some lambda < 1
/// has no pair at all.
ScalingResidualReport scaling_residual(const Trajectory& traj, const DyadicLadder& ladder,
                                       const CoreBall& ball);

/// Similarity profile U(y) = sqrt(t) u(c + sqrt(t) y) on the cube y in
/// [-radius, radius]^3 with `samples` points per axis.
struct ProfileField {
  double t = 0.0;
  double radius = 0.0;
  CubeSample sample;
};

/// Throws ValidationError unless t > 0 and radius * sqrt(t) <= L/4.
ProfileField extract_profile(const VelocityField& u, double t, double radius, int samples);

/// |U_a - U_b| / max(|U_a|, |U_b|) over the ball |y| <= radius.
double profile_distance(const ProfileField& a, const ProfileField& b);

/// Symmetric matrix of pairwise profile distances, row-major size^2.
struct ProfileCollapse {
  std::vector<double> times;
  std::vector<double> distance;

  double at(std::size_t i, std::size_t j) const { return distance[i * times.size() + j]; }
  double max_off_diagonal() const;
};

ProfileCollapse profile_collapse(const Trajectory& traj, const std::vector<double>& times,
                                 double radius, int samples);

struct DecayRow {
  double t;
  double sup_norm;
  double scaled;  // sqrt(t) * sup_norm
};

struct DecayReport {
  CoreBall ball;
  std::vector<DecayRow> rows;
  double fitted_slope = 0.0;  // least squares d log sup / d log t
  double variation = 0.0;     // max(scaled) / min(scaled) - 1
};

/// Sup of |u| over the grid points of the ball for the snapshots with
/// t in [t_lo, t_hi]. Requires at least 3 such snapshots.
DecayReport decay_law(const Trajectory& traj, double t_lo, double t_hi, const CoreBall& ball);

/// Same fit for an explicit series of (t, sup) values.
DecayReport decay_law(std::vector<DecayRow> rows);

struct ConvergenceRow {
  double t;
  double integral;  // int_K |u(t) - u0|^2
  double relative;  // integral / int_K |u0|^2
};

/// Series over all snapshots of int_K |u(t) - u0|^2 on the annulus
/// r1 <= |x - c| <= r2 (grid-point quadrature).
std::vector<ConvergenceRow> l2loc_convergence(const Trajectory& traj, const VelocityField& u0,
                                              double r1, double r2);

/// Space-time neighborhood |tau - t| < r^2/2, |y - x| < r; x in absolute
/// box coordinates.
struct ParabolicCylinder {
  std::array<double, 3> center{};
  double t = 0.0;
  double r = 0.0;
};

struct SerrinNorm {
  double p = 0.0;
  double q = 0.0;
  double value = 0.0;
  bool admissible = false;
  double volume = 0.0;    // grid points in the ball times h^3
  double duration = 0.0;  // span of the snapshot times inside the cylinder
  int points = 0;
  int slices = 0;
};

/// 3/p + 2/q < 1 evaluated without rounding (infinite exponents allowed).
bool serrin_admissible(double p, double q);

/// Time-outer, space-inner norm | |u(tau)|_{L^p(ball)} |_{L^q(tau)}; the
/// space integral is a grid-point sum, the time integral a trapezoid over
/// snapshots. Infinite exponents take maxima.
SerrinNorm serrin_norm(const Trajectory& traj, const ParabolicCylinder& cyl, double p,
                       double q);

struct SingularCandidate {
  std::array<double, 3> x{};
  double t = 0.0;
  std::vector<double> scaled_sup;  // r * sup_{C(r)} |u| per radius
  double growth_exponent = 0.0;    // gamma in sup ~ r^-gamma
};

/// Flags lattice points (stride grid points) and snapshot times t > 0 where
/// r * sup_{C(r)} |u| exceeds `threshold` for every r; a 1/|x| singularity
/// keeps this quantity bounded below as r shrinks, smooth fields drive it to 0.
std::vector<SingularCandidate> singular_candidate_scan(const Trajectory& traj,
                                                       const std::vector<double>& radii,
                                                       double threshold = 1.0,
                                                       int stride = 1);

/// Two-box scaling comparison for the mollified system.
struct CommutationSetup {
  int n = 64;
  double length = 6.283185307179586;
  double lambda = 0.5;
  double epsilon = 0.0;  // run A mollifier length
  InitialDataSpec data;  // run A data: window scales with the box, delta is shared
  bool rescale_delta = false;  // run B uses delta / lambda: exactly rescaled data
  double dt = 1e-3;      // run A step; run B uses dt / lambda^2
  double t_end = 0.1;    // run B horizon
  double compare_from = 0.25;  // compare run B times in [compare_from * t_end, t_end]
  double core_radius = 0.0;    // run B coordinates; 0 selects length / 8
  bool nonlinear = true;
  double cfl = 0.5;
};

struct CommutationRow {
  double t;  // run B time
  double discrepancy;
};

struct CommutationReport {
  std::vector<CommutationRow> rows;
  double max_discrepancy = 0.0;
};

/// Run A on box L with epsilon and run B on box L/lambda with epsilon/lambda,
/// same N; reports |lambda u_A(lambda x, lambda^2 t) - u_B(x, t)| / |u_B|
/// over the core ball of run B.
CommutationReport commutation_check(const CommutationSetup& setup);

}  // namespace ssns
