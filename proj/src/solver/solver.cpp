#include "ssns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssns/error.hpp"
#include "ssns/kernels.hpp"

namespace ssns {

namespace {

bool same_time(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

double volume_factor(const Grid& g) {
  const double n3 = static_cast<double>(g.point_count());
  return std::pow(g.length(), 3) / (n3 * n3);
}

// Exact int_0^h |grad u|^2 under the heat flow.
double heat_dissipation(const VelocityField& u, double h, const SpectralTables& t) {
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto modes = u[c].modes();
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const double decay = -std::expm1(-2.0 * t.k_squared[m] * h);
      total += std::norm(modes[m]) * t.parseval_weight[m] * 0.5 * decay;
    }
  }
  return total * volume_factor(u.grid());
}

}  // namespace

void SolverConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ValidationError("solver: " + msg); };
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail("epsilon must be >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("t_end must be > 0");
  if (!(cfl > 0.0)) fail("cfl must be > 0");
  if (snapshot_times.empty()) {
    if (!(snapshot_ratio > 1.0)) fail("snapshot_ratio must be > 1");
    if (snapshot_t0 < 0.0 || snapshot_t0 > t_end) fail("snapshot_t0 must lie in [0, t_end]");
  } else {
    double prev = 0.0;
    for (double t : snapshot_times) {
      if (!(t > prev) || t > t_end * (1.0 + 1e-12))
        fail("snapshot_times must be strictly increasing in (0, t_end]");
      prev = t;
    }
  }
}

std::vector<double> SolverConfig::resolved_snapshot_times() const {
  if (!snapshot_times.empty()) return snapshot_times;
  const double floor_t = snapshot_t0 > 0.0 ? snapshot_t0 : 1e-3 * t_end;
  std::vector<double> times;
  for (int m = 0;; ++m) {
    const double t = t_end * std::pow(snapshot_ratio, -m);
    if (t < floor_t * (1.0 - 1e-12)) break;
    times.push_back(t);
  }
  std::reverse(times.begin(), times.end());
  return times;
}

const Snapshot* Trajectory::find(double t, double rel_tol) const {
  for (const auto& s : snapshots)
    if (same_time(s.t, t, rel_tol)) return &s;
  return nullptr;
}

const EnergySample* Trajectory::find_energy(double t, double rel_tol) const {
  for (const auto& s : energy)
    if (same_time(s.t, t, rel_tol)) return &s;
  return nullptr;
}

Stepper::Stepper(const Grid& grid, const SolverConfig& config)
    : grid_(grid),
      config_(config),
      mollifier_(build_mollifier(grid, config.nonlinear ? config.epsilon : 0.0)),
      tables_(spectral_tables(grid)) {}

void Stepper::prepare(double h) {
  if (h == cached_h_) return;
  const auto& k2 = tables_->k_squared;
  full_.resize(k2.size());
  halfway_.resize(k2.size());
  for (std::size_t m = 0; m < k2.size(); ++m) {
    full_[m] = std::exp(-k2[m] * h);
    halfway_[m] = std::exp(-0.5 * k2[m] * h);
  }
  cached_h_ = h;
}

VelocityField Stepper::rhs(const VelocityField& u, double* velocity_sup) const {
  VelocityField out = [&] {
    if (config_.epsilon > 0.0) {
      const VelocityField w = mollify(u, mollifier_);
      return nonlinear_term(u, &w, velocity_sup);
    }
    return nonlinear_term(u, nullptr, velocity_sup);
  }();
  for (int c = 0; c < 3; ++c) {
    auto modes = out[c].modes();
    for (auto& z : modes) z = -z;
  }
  return out;
}

VelocityField Stepper::advance(const VelocityField& u, double h, double* dissipated,
                               double* velocity_sup) {
  u.require(Representation::spectral, "Stepper::advance");
  require_same_grid(u.grid(), grid_, "Stepper::advance");
  prepare(h);
  const auto& k = kernels::active();
  const std::size_t n = grid_.mode_count();
  const double* e = full_.data();
  const double* e2 = halfway_.data();
  const double* one = tables_->ones.data();

  if (!config_.nonlinear) {
    if (dissipated != nullptr) *dissipated = heat_dissipation(u, h, *tables_);
    VelocityField out(grid_, Representation::spectral, u.time() + h);
    for (int c = 0; c < 3; ++c) {
      auto src = u[c].modes();
      auto dst = out[c].modes();
      std::copy(src.begin(), src.end(), dst.begin());
      k.scale_modes(dst.data(), e, n);
    }
    return out;
  }

  auto combine = [&](const double* m1, const VelocityField& x, double s, const double* m2,
                     const VelocityField& y, double t) {
    VelocityField out(grid_, Representation::spectral, t);
    for (int c = 0; c < 3; ++c)
      k.combine_modes(out[c].modes().data(), m1, x[c].modes().data(), s, m2,
                      y[c].modes().data(), n);
    return out;
  };
  auto accumulate = [&](VelocityField& out, double s, const double* m, const VelocityField& y) {
    for (int c = 0; c < 3; ++c)
      k.combine_modes(out[c].modes().data(), one, out[c].modes().data(), s, m,
                      y[c].modes().data(), n);
  };

  double sup = 0.0;
  const double t = u.time();
  const VelocityField k1 = rhs(u, &sup);
  if (velocity_sup != nullptr) *velocity_sup = sup;
  const double limit = config_.cfl * grid_.spacing();
  if (sup * h > limit) {
    std::ostringstream msg;
    msg << "CFL violated at t=" << t << ": dt*max|u| = " << sup * h
        << " exceeds " << config_.cfl << "*h = " << limit;
    throw ComputeError(msg.str());
  }
  const VelocityField a = combine(e2, u, 0.5 * h, e2, k1, t + 0.5 * h);
  const VelocityField k2 = rhs(a, nullptr);
  const VelocityField b = combine(e2, u, 0.5 * h, one, k2, t + 0.5 * h);
  const VelocityField k3 = rhs(b, nullptr);
  const VelocityField c = combine(e, u, h, e2, k3, t + h);
  const VelocityField k4 = rhs(c, nullptr);

  VelocityField out = combine(e, u, h / 6.0, e, k1, t + h);
  accumulate(out, h / 3.0, e2, k2);
  accumulate(out, h / 3.0, e2, k3);
  accumulate(out, h / 6.0, one, k4);

  if (dissipated != nullptr) {
    *dissipated = h / 6.0 *
                  (dissipation_rate(u) + 2.0 * dissipation_rate(a) +
                   2.0 * dissipation_rate(b) + dissipation_rate(c));
  }
  out = leray_project(out);
  out.set_time(t + h);
  return out;
}

VelocityField step(const VelocityField& u, const SolverConfig& cfg) {
  cfg.validate();
  Stepper stepper(u.grid(), cfg);
  return stepper.advance(u, cfg.dt);
}

Trajectory run(const VelocityField& u0, const SolverConfig& cfg, const RunOptions& options) {
  cfg.validate();
  u0.require(Representation::spectral, "run");
  if (const double d = divergence_sup(u0); d > 1e-10) {
    std::ostringstream msg;
    msg << "run: initial field is not divergence-free (divergence_sup = " << d << ")";
    throw ValidationError(msg.str());
  }
  Trajectory traj;
  traj.grid = u0.grid();
  traj.config = cfg;

  Stepper stepper(u0.grid(), cfg);
  VelocityField u = u0;
  u.set_time(0.0);
  double dissipated = 0.0;

  auto record_energy = [&](double t, double velocity_sup) {
    EnergySample s;
    s.t = t;
    s.energy = kinetic_energy(u);
    s.dissipation_rate = dissipation_rate(u);
    s.dissipated = dissipated;
    s.divergence = divergence_sup(u);
    s.velocity_sup = velocity_sup;
    if (!std::isfinite(s.energy)) {
      std::ostringstream msg;
      msg << "non-finite energy at t=" << t;
      throw ComputeError(msg.str());
    }
    traj.energy.push_back(s);
  };
  auto record_snapshot = [&]() {
    Snapshot s{u.time(), u};
    if (options.on_snapshot) options.on_snapshot(s);
    if (options.keep_snapshots) traj.snapshots.push_back(std::move(s));
  };

  record_energy(0.0, 0.0);
  record_snapshot();
  for (double target : cfg.resolved_snapshot_times()) {
    while (u.time() < target) {
      const double t = u.time();
      double h = cfg.dt;
      bool land = false;
      if (t + h >= target * (1.0 - 1e-12)) {
        h = target - t;
        land = true;
      }
      double q = 0.0;
      double sup = 0.0;
      u = stepper.advance(u, h, &q, &sup);
      if (land) u.set_time(target);
      dissipated += q;
      record_energy(u.time(), sup);
    }
    record_snapshot();
  }
  return traj;
}

VelocityField linear_heat_solve(const VelocityField& u0, double t) {
  if (!(t >= 0.0)) throw ValidationError("linear_heat_solve: t must be >= 0");
  return heat_propagate(u0, t);
}

EnergyBalance energy_balance(const Trajectory& traj, double t1, double t2) {
  const EnergySample* a = traj.find_energy(t1);
  const EnergySample* b = traj.find_energy(t2);
  if (a == nullptr || b == nullptr || t2 < t1)
    throw ValidationError("energy_balance: times must be recorded samples with t1 <= t2");
  EnergyBalance r;
  r.energy_start = a->energy;
  r.energy_end = b->energy;
  r.dissipated = b->dissipated - a->dissipated;
  r.residual = r.energy_end - r.energy_start + r.dissipated;
  r.relative = r.energy_start > 0.0 ? std::abs(r.residual) / r.energy_start : 0.0;
  return r;
}

double worst_energy_increase(const Trajectory& traj) {
  double worst = 0.0;
  for (std::size_t i = 1; i < traj.energy.size(); ++i) {
    const double prev = traj.energy[i - 1].energy;
    if (prev > 0.0) worst = std::max(worst, (traj.energy[i].energy - prev) / prev);
  }
  return worst;
}

}  // namespace ssns
