#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/solver.hpp"

namespace ssns {

namespace {

struct Slice {
  double t, a, d, b, f;
};

double cell_volume(const Grid& g) { return std::pow(g.spacing(), 3); }

}  // namespace

LocalEnergyResidual local_energy_residual(const Trajectory& traj, const ScalarField& phi,
                                          double t1, double t2) {
  phi.require(Representation::physical, "local_energy_residual");
  require_same_grid(phi.grid(), traj.grid, "local_energy_residual");
  if (!(t2 > t1)) throw ValidationError("local_energy_residual: need t1 < t2");
  if (traj.find(t1) == nullptr || traj.find(t2) == nullptr)
    throw ValidationError("local_energy_residual: t1 and t2 must be snapshot times");
  const Grid& g = traj.grid;
  const auto pv = phi.values();
  const double peak = *std::max_element(pv.begin(), pv.end());
  const double low = *std::min_element(pv.begin(), pv.end());
  if (low < -1e-14 * std::max(1.0, peak))
    throw ValidationError("local_energy_residual: test function must be nonnegative");

  const ScalarField phi_hat = to_spectral(phi);
  const ScalarField lap_phi = to_physical(laplacian(phi_hat));
  const VelocityField grad_phi = to_physical(gradient(phi_hat));
  const bool nonlinear = traj.config.nonlinear;
  const Mollifier moll = build_mollifier(g, nonlinear ? traj.config.epsilon : 0.0);
  const double dv = cell_volume(g);
  const std::size_t points = g.point_count();

  std::vector<Slice> slices;
  const double tol = 1e-9 * std::max(1.0, t2);
  for (const auto& snap : traj.snapshots) {
    if (snap.t < t1 - tol || snap.t > t2 + tol) continue;
    const VelocityField& uh = snap.field;
    const VelocityField u = to_physical(uh);
    std::array<VelocityField, 3> grad{to_physical(gradient(uh[0])),
                                      to_physical(gradient(uh[1])),
                                      to_physical(gradient(uh[2]))};
    std::optional<VelocityField> w;
    std::optional<ScalarField> p;
    if (nonlinear) {
      const VelocityField wh = mollify(uh, moll);
      p = to_physical(pressure_from_velocity(uh, wh));
      w = to_physical(wh);
    }
    Slice s{snap.t, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < points; ++i) {
      const double u0 = u[0].values()[i], u1 = u[1].values()[i], u2 = u[2].values()[i];
      const double q = u0 * u0 + u1 * u1 + u2 * u2;
      double gsq = 0.0;
      for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 3; ++j) {
          const double v = grad[c][j].values()[i];
          gsq += v * v;
        }
      s.a += q * pv[i];
      s.d += gsq * pv[i];
      s.b += q * lap_phi.values()[i];
      if (nonlinear) {
        const double pp = 2.0 * p->values()[i];
        const double uu[3] = {u0, u1, u2};
        for (int j = 0; j < 3; ++j)
          s.f += (q * (*w)[j].values()[i] + pp * uu[j]) * grad_phi[j].values()[i];
      }
    }
    s.a *= dv;
    s.d *= dv;
    s.b *= dv;
    s.f *= dv;
    slices.push_back(s);
  }

  LocalEnergyResidual r;
  r.slices = static_cast<int>(slices.size());
  r.local_energy_start = slices.front().a;
  r.local_energy_end = slices.back().a;
  for (std::size_t i = 1; i < slices.size(); ++i) {
    const double h = 0.5 * (slices[i].t - slices[i - 1].t);
    r.dissipation += h * (slices[i].d + slices[i - 1].d);
    r.diffusion += h * (slices[i].b + slices[i - 1].b);
    r.transport += h * (slices[i].f + slices[i - 1].f);
  }
  r.residual = r.local_energy_end - r.local_energy_start + 2.0 * r.dissipation -
               r.diffusion - r.transport;
  r.relative = r.local_energy_start > 0.0 ? std::abs(r.residual) / r.local_energy_start : 0.0;
  return r;
}

}  // namespace ssns
