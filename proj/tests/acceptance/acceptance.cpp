// Prints one PASS/FAIL line per acceptance check. Usage: acceptance [name...]
// with no names running every check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ssns/diagnostics.hpp"
#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/initial_data.hpp"
#include "ssns/solver.hpp"
#include "ssns/spectral.hpp"
#include "ssns/validation.hpp"

using namespace ssns;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Step size a fraction of the CFL bound of the initial field.
double cfl_dt(const VelocityField& u0, double fraction) {
  return fraction * u0.grid().spacing() / sup_norm(to_physical(dealias(u0)));
}

double max_divergence(const Trajectory& traj) {
  double d = 0.0;
  for (const auto& s : traj.energy) d = std::max(d, s.divergence);
  return d;
}

Outcome solver_validation() {
  Stopwatch clock;
  const TaylorGreenReport r = validate_taylor_green(64, 2e-3, 0.5);
  const double secs = clock.seconds();
  const bool ok = r.relative_error <= 1e-6 && std::abs(r.order - 4.0) <= 0.1 && secs <= 120.0;
  return {ok, fmt("tg_error=%.3e (<=1e-6) order=%.4f (4.0+-0.1; diffs %.3e %.3e) runtime=%.1fs (<=120s)",
                  r.relative_error, r.order, r.differences[0], r.differences[1], secs)};
}

Outcome projector_suite() {
  const ProjectorReport p = validate_projector(32, 7);
  const Grid grid(32, two_pi);
  SolverConfig cfg;
  cfg.epsilon = two_pi / 16;
  cfg.t_end = 0.05;
  const VelocityField u0 = sample_u0_alpha(grid, InitialDataSpec::defaults(grid, 4.0));
  cfg.dt = cfl_dt(u0, 0.4);
  const double div_mollified = max_divergence(run(u0, cfg));
  SolverConfig tg;
  tg.dt = 2e-3;
  tg.t_end = 0.5;
  const double div_tg = max_divergence(run(taylor_green_3d(grid, 1.0), tg));
  const double div = std::max(div_mollified, div_tg);
  const bool ok = p.idempotence <= 1e-12 && p.gradient <= 1e-12 && p.annihilation <= 1e-12 &&
                  div <= 1e-10;
  return {ok, fmt("idempotence=%.2e gradient=%.2e annihilation=%.2e (<=1e-12) "
                  "step_divergence=%.2e (<=1e-10)",
                  p.idempotence, p.gradient, p.annihilation, div)};
}

Outcome energy_balance_check() {
  const Grid grid64(64, two_pi);
  SolverConfig tg;
  tg.dt = 2e-3;
  tg.t_end = 0.5;
  const Trajectory t2d = run(taylor_green_2d(grid64, 0.0), tg);
  const double bal2d = energy_balance(t2d, 0.0, 0.5).relative;
  const Grid grid32(32, two_pi);
  const Trajectory t3d = run(taylor_green_3d(grid32, 1.0), tg);
  const double bal3d = energy_balance(t3d, 0.0, 0.5).relative;

  double worst = 0.0;
  int runs = 0;
  for (double alpha : {1.0, 4.0, 16.0})
    for (double eps : {two_pi / 8, two_pi / 16, two_pi / 32}) {
      SolverConfig cfg;
      cfg.epsilon = eps;
      cfg.t_end = 0.1;
      const VelocityField u0 = sample_u0_alpha(grid32, InitialDataSpec::defaults(grid32, alpha));
      cfg.dt = cfl_dt(u0, 0.4);
      worst = std::max(worst, worst_energy_increase(run(u0, cfg)));
      ++runs;
    }
  const bool ok = bal2d <= 1e-6 && bal3d <= 1e-6 && worst <= 1e-8;
  return {ok, fmt("balance_tg2d=%.2e balance_tg3d=%.2e (<=1e-6) worst_energy_increase=%.2e "
                  "over %d mollified runs (<=1e-8)",
                  bal2d, bal3d, worst, runs)};
}

Outcome heat_self_similarity() {
  Stopwatch clock;
  const Grid grid(128, two_pi);
  const double L = grid.length();
  InitialDataSpec spec = InitialDataSpec::defaults(grid, 1.0);
  spec.delta = L / 128;
  const double t_lo = 8 * spec.delta * spec.delta, t_hi = 0.05 * L * L;
  const VelocityField u0 = sample_u0_alpha(grid, spec);
  SolverConfig cfg;
  cfg.nonlinear = false;
  cfg.t_end = t_hi;
  cfg.snapshot_t0 = t_lo / 4 * 0.999;
  cfg.dt = t_hi;
  const Trajectory traj = run(u0, cfg);
  const ScalingResidualReport rep =
      scaling_residual(traj, DyadicLadder{1}, CoreBall::defaults(grid));
  double worst = 0.0, best = inf;
  double hold_lo = inf, hold_hi = 0.0;
  int rows = 0;
  for (const auto& r : rep.for_lambda(0.5)) {
    if (r.t < t_lo * (1 - 1e-9) || r.t > t_hi * (1 + 1e-9)) continue;
    worst = std::max(worst, r.residual);
    best = std::min(best, r.residual);
    if (r.residual <= 1e-2) {
      hold_lo = std::min(hold_lo, r.t);
      hold_hi = std::max(hold_hi, r.t);
    }
    ++rows;
  }
  const DecayReport decay = decay_law(traj, t_lo, t_hi, CoreBall{L / 4});
  const double secs = clock.seconds();
  const bool ok = rows > 0 && worst <= 1e-2 && std::abs(decay.fitted_slope + 0.5) <= 0.05 &&
                  secs <= 300.0;
  std::string held = hold_hi > 0.0 ? fmt("S<=1e-2 only for t in [%.3g, %.3g]", hold_lo, hold_hi)
                                   : std::string("S<=1e-2 nowhere");
  return {ok, fmt("t in [%.4g, %.4g]: max S(1/2,t)=%.3e min=%.3e (<=1e-2; %s) slope=%.4f "
                  "(-0.50+-0.05) sqrt(t)sup variation=%.3f runtime=%.1fs (<=300s)",
                  t_lo, t_hi, worst, best, held.c_str(), decay.fitted_slope, decay.variation,
                  secs)};
}

CommutationSetup commutation_setup(int n) {
  CommutationSetup s;
  s.n = n;
  s.length = two_pi;
  s.lambda = 0.5;
  s.epsilon = two_pi / 16;
  const Grid grid(n, two_pi);
  s.data = InitialDataSpec::defaults(grid, 2.0);
  s.data.delta = two_pi / n;
  const VelocityField u0 = sample_u0_alpha(grid, s.data);
  s.dt = cfl_dt(u0, 0.2);
  s.t_end = 0.1;
  s.compare_from = 0.25;
  s.core_radius = two_pi / 8;
  return s;
}

Outcome mollifier_commutation() {
  Stopwatch clock;
  const CommutationReport coarse = commutation_check(commutation_setup(64));
  const CommutationReport fine = commutation_check(commutation_setup(128));
  const double ratio = coarse.max_discrepancy / fine.max_discrepancy;
  const double secs = clock.seconds();
  const bool ok = coarse.max_discrepancy <= 5e-2 && ratio >= 2.0 && secs <= 600.0;
  return {ok, fmt("discrepancy N=64: %.3e (<=5e-2) N=128: %.3e ratio=%.2f (>=2) runtime=%.1fs "
                  "(<=600s)",
                  coarse.max_discrepancy, fine.max_discrepancy, ratio, secs)};
}

// Sweep levels (delta, epsilon) in decreasing order.
struct SweepResult {
  double scaling = 0.0;   // mean S(1/2, t) over the comparison decade
  double collapse = 0.0;  // max pairwise profile distance over the decade
  double variation = 0.0; // sqrt(t) sup |u| variation over the decade
};

SweepResult sweep_run(double alpha, double delta, double eps) {
  const Grid grid(64, two_pi);
  InitialDataSpec spec = InitialDataSpec::defaults(grid, alpha);
  spec.delta = delta;
  const VelocityField u0 = sample_u0_alpha(grid, spec);
  SolverConfig cfg;
  cfg.epsilon = eps;
  cfg.t_end = 0.3;
  cfg.dt = cfl_dt(u0, 0.4);
  const Trajectory traj = run(u0, cfg);
  const double t_hi = cfg.t_end, t_lo = t_hi / std::pow(2.0, 3.5);
  SweepResult r;
  const ScalingResidualReport rep = scaling_residual(traj, DyadicLadder{1}, CoreBall::defaults(grid));
  int count = 0;
  for (const auto& row : rep.for_lambda(0.5)) {
    if (row.t < t_lo * (1 - 1e-9)) continue;
    r.scaling += row.residual;
    ++count;
  }
  r.scaling /= count;
  std::vector<double> times;
  for (const auto& s : traj.snapshots)
    if (s.t >= t_lo * (1 - 1e-9)) times.push_back(s.t);
  r.collapse = profile_collapse(traj, times, 2.0, 17).max_off_diagonal();
  r.variation = decay_law(traj, t_lo, t_hi, CoreBall{grid.length() / 4}).variation;
  return r;
}

Outcome nonlinear_self_similarity() {
  Stopwatch clock;
  const double L = two_pi;
  const std::vector<std::pair<double, double>> levels{{L / 16, L / 8}, {L / 32, L / 16}, {L / 64, L / 32}};
  bool ok = true;
  std::string detail;
  for (double alpha : {1.0, 4.0, 16.0}) {
    std::vector<SweepResult> res;
    for (const auto& [delta, eps] : levels) res.push_back(sweep_run(alpha, delta, eps));
    bool mono = true;
    for (std::size_t i = 1; i < res.size(); ++i)
      mono = mono && res[i].scaling < res[i - 1].scaling && res[i].collapse < res[i - 1].collapse;
    const bool flat = res.back().variation <= 0.15;
    ok = ok && mono && flat;
    detail += fmt("alpha=%g S=[%.3e %.3e %.3e] collapse=[%.3e %.3e %.3e] variation=%.3f; ", alpha,
                  res[0].scaling, res[1].scaling, res[2].scaling, res[0].collapse, res[1].collapse,
                  res[2].collapse, res.back().variation);
  }
  const double secs = clock.seconds();
  ok = ok && secs <= 1800.0;
  return {ok, detail + fmt("runtime=%.1fs (<=1800s)", secs)};
}

Outcome data_convergence() {
  const Grid grid(64, two_pi);
  const VelocityField u0 = sample_u0_alpha(grid, InitialDataSpec::defaults(grid, 4.0));
  SolverConfig cfg;
  cfg.epsilon = two_pi / 32;
  cfg.t_end = 0.02;
  cfg.dt = cfl_dt(u0, 0.4);
  const Trajectory traj = run(u0, cfg);
  const auto rows = l2loc_convergence(traj, u0, grid.length() / 16, grid.length() / 4);
  // Trend: least-squares slope of log integral against log t over t > 0.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  const ConvergenceRow* earliest = nullptr;
  for (const auto& r : rows) {
    if (r.t <= 0.0) continue;
    if (earliest == nullptr) earliest = &r;
    const double x = std::log(r.t), y = std::log(r.integral);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  bool below_later = true;
  for (const auto& r : rows)
    if (r.t > earliest->t) below_later = below_later && earliest->integral < r.integral;
  const bool ok = slope > 0.0 && below_later && earliest->relative <= 1e-3;
  return {ok, fmt("log-log slope=%.3f (>0) earliest t=%.3g relative=%.3e (<=1e-3) latest relative=%.3e",
                  slope, earliest->t, earliest->relative, rows.back().relative)};
}

// Exact 3/p + 2/q < 1 for p = a/b, q = c/d (b or d == 0 meaning infinity).
bool rational_admissible(long a, long b, long c, long d) {
  // 3b/a + 2d/c < 1  <=>  3bc + 2ad < ac
  return 3 * b * c + 2 * a * d < a * c;
}

Outcome serrin_machinery() {
  const Grid grid(32, two_pi);
  const double h = grid.spacing();
  // Constant field on uniform snapshots.
  Trajectory traj;
  traj.grid = grid;
  VelocityField c(grid, Representation::physical);
  const double cv[3] = {1.0, 2.0, 2.0};
  for (int k = 0; k < 3; ++k)
    for (double& v : c[k].values()) v = cv[k];
  const VelocityField ch = to_spectral(c);
  for (int i = 0; i <= 40; ++i) traj.snapshots.push_back({0.025 * i, ch});
  const ParabolicCylinder cyl{{grid.length() / 2 + 0.3 * h, grid.length() / 2, grid.length() / 2}, 0.5, 0.6};
  int points = 0;
  const int reach = static_cast<int>(cyl.r / h) + 2;
  const int c0 = grid.center_index();
  for (int k = c0 - reach; k <= c0 + reach; ++k)
    for (int j = c0 - reach; j <= c0 + reach; ++j)
      for (int i = c0 - reach; i <= c0 + reach; ++i) {
        const double dx = i * h - cyl.center[0], dy = j * h - cyl.center[1], dz = k * h - cyl.center[2];
        if (dx * dx + dy * dy + dz * dz < cyl.r * cyl.r) ++points;
      }
  double first = inf, last = -inf;
  for (const auto& s : traj.snapshots)
    if (std::abs(s.t - cyl.t) < 0.5 * cyl.r * cyl.r) {
      first = std::min(first, s.t);
      last = std::max(last, s.t);
    }
  const double vol = points * h * h * h, dur = last - first;
  double closed_err = 0.0;
  for (auto [p, q] : std::vector<std::pair<double, double>>{{2, 2}, {5, 3}, {inf, 4}, {6, inf}, {inf, inf}}) {
    const double expect = 3.0 * (std::isinf(p) ? 1.0 : std::pow(vol, 1.0 / p)) *
                          (std::isinf(q) ? 1.0 : std::pow(dur, 1.0 / q));
    const SerrinNorm s = serrin_norm(traj, cyl, p, q);
    closed_err = std::max(closed_err, std::abs(s.value - expect) / expect);
  }
  // Admissibility on 20 pairs, (a/b, c/d) with b or d zero for infinity.
  const std::vector<std::array<long, 4>> pairs{
      {5, 1, 5, 1},  {6, 1, 4, 1},  {9, 1, 3, 1},   {4, 1, 8, 1},  {15, 1, 5, 2}, {1, 0, 2, 1},
      {3, 1, 1, 0},  {1, 0, 1, 0},  {7, 1, 7, 1},   {4, 1, 9, 1},  {3, 1, 100, 1}, {100, 1, 2, 1},
      {10, 1, 3, 1}, {11, 2, 11, 1}, {12, 1, 8, 3}, {8, 1, 16, 5}, {1, 1, 1, 1},  {1, 0, 3, 1},
      {4, 1, 1, 0},  {9, 2, 6, 1}};
  int wrong = 0, boundary = 0;
  for (const auto& [a, b, cc, d] : pairs) {
    const double p = b == 0 ? inf : static_cast<double>(a) / b;
    const double q = d == 0 ? inf : static_cast<double>(cc) / d;
    bool expect, on_boundary;
    if (b == 0 && d == 0) {
      expect = true;
      on_boundary = false;
    } else if (b == 0) {
      expect = 2 * d < cc;
      on_boundary = 2 * d == cc;
    } else if (d == 0) {
      expect = 3 * b < a;
      on_boundary = 3 * b == a;
    } else {
      expect = rational_admissible(a, b, cc, d);
      on_boundary = 3 * b * cc + 2 * a * d == a * cc;
    }
    boundary += on_boundary;
    if (serrin_admissible(p, q) != expect) ++wrong;
  }
  // Candidate scan on smooth runs and on a spike.
  const std::vector<double> radii{h, 2 * h, 4 * h};
  SolverConfig tg;
  tg.dt = 5e-3;
  tg.t_end = 0.5;
  std::size_t smooth = 0;
  smooth += singular_candidate_scan(run(taylor_green_3d(grid, 1.0), tg), radii, 1.0, 2).size();
  smooth += singular_candidate_scan(run(taylor_green_2d(grid, 0.0), tg), radii, 1.0, 2).size();
  Trajectory spike;
  spike.grid = grid;
  const std::array<double, 3> x0{grid.length() / 2 + 0.5 * h, grid.length() / 2 + 0.5 * h,
                                 grid.length() / 2 + 0.5 * h};
  VelocityField sp(grid, Representation::physical);
  for (int k = 0; k < grid.n(); ++k)
    for (int j = 0; j < grid.n(); ++j)
      for (int i = 0; i < grid.n(); ++i) {
        const double dx = i * h - x0[0], dy = j * h - x0[1], dz = k * h - x0[2];
        sp[0].values()[grid.point_index(i, j, k)] = 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
      }
  const VelocityField sph = to_spectral(sp);
  for (int i = 0; i <= 4; ++i) spike.snapshots.push_back({0.1 * i, sph});
  const auto flagged = singular_candidate_scan(spike, radii, 1.0, 1);
  bool near = false;
  for (const auto& cand : flagged) {
    const double dx = cand.x[0] - x0[0], dy = cand.x[1] - x0[1], dz = cand.x[2] - x0[2];
    near = near || std::sqrt(dx * dx + dy * dy + dz * dz) < h;
  }
  const bool ok = closed_err <= 1e-10 && wrong == 0 && boundary >= 1 && smooth == 0 && near;
  return {ok, fmt("constant-field error=%.2e (<=1e-10) admissibility wrong=%d of %zu (boundary cases %d) "
                  "smooth candidates=%zu (0) spike candidates=%zu (near x0: %s)",
                  closed_err, wrong, pairs.size(), boundary, smooth, flagged.size(), near ? "yes" : "no")};
}

ScalarField centered_bump(const Grid& grid, double radius) {
  ScalarField phi(grid, Representation::physical);
  const int n = grid.n();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double x = grid.centered_coordinate(i), y = grid.centered_coordinate(j),
                     z = grid.centered_coordinate(k);
        const double s = (x * x + y * y + z * z) / (radius * radius);
        phi.values()[grid.point_index(i, j, k)] = s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
      }
  return phi;
}

Outcome local_energy() {
  const Grid grid(32, two_pi);
  const VelocityField u0 = sample_u0_alpha(grid, InitialDataSpec::defaults(grid, 1.0));
  const ScalarField phi = centered_bump(grid, grid.length() / 4);
  const double t1 = 0.05, t2 = 0.15;
  double residual[2];
  for (int level = 0; level < 2; ++level) {
    const int slices = 100 << level;
    SolverConfig cfg;
    cfg.nonlinear = false;
    cfg.t_end = t2;
    cfg.dt = (t2 - t1) / slices;
    for (int i = 0; i <= slices; ++i) cfg.snapshot_times.push_back(t1 + (t2 - t1) * i / slices);
    residual[level] = local_energy_residual(run(u0, cfg), phi, t1, t2).relative;
  }
  const double ratio = residual[0] / residual[1];
  const bool ok = residual[0] <= 1e-4 && ratio >= 2.0;
  return {ok, fmt("relative residual dt=%.3g: %.3e (<=1e-4) dt/2: %.3e ratio=%.2f (>=2)",
                  (t2 - t1) / 100, residual[0], residual[1], ratio)};
}

struct Check {
  const char* name;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Check> checks{
      {"solver-validation", solver_validation},
      {"projector-suite", projector_suite},
      {"energy-balance", energy_balance_check},
      {"heat-self-similarity", heat_self_similarity},
      {"mollifier-commutation", mollifier_commutation},
      {"nonlinear-self-similarity", nonlinear_self_similarity},
      {"data-convergence", data_convergence},
      {"serrin-machinery", serrin_machinery},
      {"local-energy", local_energy},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : checks) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
