#pragma once

#include <memory>

#include "ssns/field.hpp"

namespace ssns {

/// Per-grid wavenumber tables shared by the spectral operators.
struct SpectralTables {
  Grid grid;
  RealBuffer kx_derivative;  // length N/2+1
  RealBuffer ky_derivative;  // length N
  RealBuffer kz_derivative;  // length N
  RealBuffer k_squared;      // full |k|^2 per mode (Nyquist included)
  RealBuffer dealias_mask;   // 1 on the retained band, 0 elsewhere
  RealBuffer ones;
  RealBuffer parseval_weight;  // 1 or 2 per mode for half-layout sums
};

/// Cached, immutable tables for a grid. Thread-safe.
std::shared_ptr<const SpectralTables> spectral_tables(const Grid& grid);

/// Leray projector F - k (k.F)/|k|^2 per mode. Modes whose derivative
/// wavevector vanishes (the mean and pure-Nyquist modes) pass through.
VelocityField leray_project(const VelocityField& f);

/// i k . u_hat per mode.
ScalarField divergence(const VelocityField& u);

/// max |k . u_hat| / max(1, max |u_hat|): the discrete solenoidality measure.
double divergence_sup(const VelocityField& u);

/// i k phi_hat per mode.
VelocityField gradient(const ScalarField& phi);

/// -|k|^2 phi_hat per mode.
ScalarField laplacian(const ScalarField& phi);

/// Spectral multiplier of the rescaled bump rho_eps(x) = eps^-3 rho(x/eps),
/// normalized so the k=0 entry is exactly 1.
struct Mollifier {
  double epsilon = 0.0;
  Grid grid;
  RealBuffer multiplier;
};

/// Bump rho(x) = exp(-1/(1-|x|^2)) on |x|<1. epsilon = 0 yields the identity
/// multiplier (no smoothing). Requires 0 <= epsilon < L/4.
Mollifier build_mollifier(const Grid& grid, double epsilon);

VelocityField mollify(const VelocityField& u, const Mollifier& m);

/// 2/3 rule: zero every mode with some |mode_number| > floor(N/3).
ScalarField dealias(const ScalarField& f);
VelocityField dealias(const VelocityField& f);

/// P div(w (x) u): component i is P[ sum_j d_j (w_j u_i) ], products formed
/// in physical space from 2/3-truncated inputs, result truncated and
/// projected. w is the advecting field. Both inputs spectral.
VelocityField nonlinear_term(const VelocityField& u, const VelocityField& w);
/// Unmollified case w = u, using the symmetric product tensor.
VelocityField nonlinear_term(const VelocityField& u);
/// As above with w = u when `w` is null; `velocity_sup`, when given,
/// receives max |u| of the truncated physical u formed along the way.
VelocityField nonlinear_term(const VelocityField& u, const VelocityField* w,
                             double* velocity_sup);

/// Pressure with P div(w (x) u) = div(w (x) u) + grad p, zero mean:
/// p_hat = -k_i k_j (w_i u_j)_hat / |k|^2. Spectral inputs and output.
ScalarField pressure_from_velocity(const VelocityField& u,
                                   const VelocityField& w);
ScalarField pressure_from_velocity(const VelocityField& u);

/// Divergence of the (dealiased) product tensor, div(w (x) u), unprojected.
VelocityField tensor_divergence(const VelocityField& u, const VelocityField& w);

/// Per-mode factor exp(-|k|^2 t).
VelocityField heat_propagate(const VelocityField& u, double t);

/// 1/2 int |u|^2 from spectral coefficients (Parseval).
double kinetic_energy(const VelocityField& u);
/// int |grad (x) u|^2 from spectral coefficients.
double dissipation_rate(const VelocityField& u);
/// int |u|^2 from physical values.
double l2_norm_squared(const VelocityField& u);
/// int u.v from physical values.
double inner_product(const VelocityField& u, const VelocityField& v);

/// Max |u(x)| over grid points (physical input).
double sup_norm(const VelocityField& u);
/// Max modulus over all spectral coefficients (spectral input).
double spectral_sup(const VelocityField& u);

VelocityField add(const VelocityField& a, const VelocityField& b, double s = 1.0);

}  // namespace ssns
