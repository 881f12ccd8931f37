#include "ssns/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/kernels.hpp"

namespace ssns {

namespace {

std::shared_ptr<const SpectralTables> build_tables(const Grid& grid) {
  auto t = std::make_shared<SpectralTables>(SpectralTables{grid, {}, {}, {}, {}, {}, {}, {}});
  const int n = grid.n();
  const int h = grid.half();
  t->kx_derivative.resize(h);
  t->ky_derivative.resize(n);
  t->kz_derivative.resize(n);
  for (int i = 0; i < h; ++i) t->kx_derivative[i] = grid.derivative_wavenumber(i);
  for (int i = 0; i < n; ++i) {
    t->ky_derivative[i] = grid.derivative_wavenumber(i);
    t->kz_derivative[i] = grid.derivative_wavenumber(i);
  }
  const std::size_t modes = grid.mode_count();
  t->k_squared.resize(modes);
  t->dealias_mask.resize(modes);
  t->ones.assign(modes, 1.0);
  t->parseval_weight.resize(modes);
  const int cut = grid.dealias_cutoff();
  for (int kz = 0; kz < n; ++kz) {
    const double wz = grid.wavenumber(kz);
    const bool keep_z = std::abs(grid.mode_number(kz)) <= cut;
    for (int ky = 0; ky < n; ++ky) {
      const double wy = grid.wavenumber(ky);
      const bool keep_y = std::abs(grid.mode_number(ky)) <= cut;
      for (int kx = 0; kx < h; ++kx) {
        const double wx = grid.wavenumber(kx);
        const std::size_t m = grid.mode_index(kx, ky, kz);
        t->k_squared[m] = wx * wx + wy * wy + wz * wz;
        t->dealias_mask[m] = (keep_z && keep_y && kx <= cut) ? 1.0 : 0.0;
        t->parseval_weight[m] = (kx == 0 || kx == n / 2) ? 1.0 : 2.0;
      }
    }
  }
  return t;
}

template <class Fn>
void for_each_line(const Grid& grid, Fn&& fn) {
  const int n = grid.n();
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) fn(ky, kz, grid.mode_index(0, ky, kz));
  }
}

void require_spectral(const VelocityField& u, const char* op) {
  u.require(Representation::spectral, op);
}

// Parseval sum of sum_c |u_c|^2 * weight[m] over the half layout.
double weighted_mode_sum(const VelocityField& u, const RealBuffer* extra) {
  auto tables = spectral_tables(u.grid());
  const auto& w = tables->parseval_weight;
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto modes = u[c].modes();
    for (std::size_t m = 0; m < modes.size(); ++m) {
      double s = std::norm(modes[m]) * w[m];
      if (extra != nullptr) s *= (*extra)[m];
      total += s;
    }
  }
  const double n3 = static_cast<double>(u.grid().point_count());
  const double volume = std::pow(u.grid().length(), 3);
  return total * volume / (n3 * n3);
}

// Physical-space product tensor of (dealiased) w and u, transformed back.
// Entry [i][j] holds (w_j u_i)_hat.
struct ProductTensor {
  std::array<std::array<const ScalarField*, 3>, 3> entry{};
  std::vector<ScalarField> storage;
};

ProductTensor product_tensor(const VelocityField& u, const VelocityField* w,
                             double* u_sup = nullptr) {
  const auto& k = kernels::active();
  const VelocityField up = to_physical(dealias(u));
  if (u_sup != nullptr) *u_sup = sup_norm(up);
  std::optional<VelocityField> wp;
  if (w != nullptr) wp.emplace(to_physical(dealias(*w)));
  const VelocityField& adv = wp ? *wp : up;
  const Grid& grid = u.grid();
  ProductTensor t;
  t.storage.reserve(9);
  ScalarField scratch(grid, Representation::physical);
  std::array<std::array<int, 3>, 3> slot{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (w == nullptr && j < i) {
        slot[i][j] = slot[j][i];
        continue;
      }
      k.multiply(scratch.values().data(), adv[j].values().data(),
                 up[i].values().data(), grid.point_count());
      t.storage.push_back(to_spectral(scratch));
      slot[i][j] = static_cast<int>(t.storage.size()) - 1;
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t.entry[i][j] = &t.storage[slot[i][j]];
  }
  return t;
}

VelocityField divergence_of(const ProductTensor& t, const Grid& grid) {
  auto tables = spectral_tables(grid);
  const auto& k = kernels::active();
  VelocityField out(grid, Representation::spectral);
  const std::size_t h = grid.half();
  for (int i = 0; i < 3; ++i) {
    auto o = out[i].modes();
    auto t0 = t.entry[i][0]->modes();
    auto t1 = t.entry[i][1]->modes();
    auto t2 = t.entry[i][2]->modes();
    for_each_line(grid, [&](int ky, int kz, std::size_t base) {
      k.divergence_line(o.data() + base, t0.data() + base, t1.data() + base,
                        t2.data() + base, tables->kx_derivative.data(),
                        tables->ky_derivative[ky], tables->kz_derivative[kz], h);
    });
    k.scale_modes(o.data(), tables->dealias_mask.data(), o.size());
  }
  return out;
}

}  // namespace

std::shared_ptr<const SpectralTables> spectral_tables(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const SpectralTables>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(grid.n(), grid.length());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = build_tables(grid);
  cache.emplace(key, t);
  return t;
}

VelocityField leray_project(const VelocityField& f) {
  require_spectral(f, "leray_project");
  const Grid& grid = f.grid();
  auto tables = spectral_tables(grid);
  const auto& k = kernels::active();
  VelocityField out = f;
  auto a = out[0].modes();
  auto b = out[1].modes();
  auto c = out[2].modes();
  for_each_line(grid, [&](int ky, int kz, std::size_t base) {
    k.project_line(a.data() + base, b.data() + base, c.data() + base,
                   tables->kx_derivative.data(), tables->ky_derivative[ky],
                   tables->kz_derivative[kz], grid.half());
  });
  return out;
}

ScalarField divergence(const VelocityField& u) {
  require_spectral(u, "divergence");
  const Grid& grid = u.grid();
  auto tables = spectral_tables(grid);
  const auto& k = kernels::active();
  ScalarField out(grid, Representation::spectral);
  auto o = out.modes();
  auto a = u[0].modes();
  auto b = u[1].modes();
  auto c = u[2].modes();
  for_each_line(grid, [&](int ky, int kz, std::size_t base) {
    k.divergence_line(o.data() + base, a.data() + base, b.data() + base,
                      c.data() + base, tables->kx_derivative.data(),
                      tables->ky_derivative[ky], tables->kz_derivative[kz],
                      grid.half());
  });
  return out;
}

double divergence_sup(const VelocityField& u) {
  const ScalarField d = divergence(u);
  double worst = 0.0;
  for (const Complex& z : d.modes()) worst = std::max(worst, std::abs(z));
  return worst / std::max(1.0, spectral_sup(u));
}

VelocityField gradient(const ScalarField& phi) {
  phi.require(Representation::spectral, "gradient");
  const Grid& grid = phi.grid();
  auto tables = spectral_tables(grid);
  VelocityField out(grid, Representation::spectral);
  auto p = phi.modes();
  const int n = grid.n();
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      for (int kx = 0; kx < grid.half(); ++kx) {
        const std::size_t m = grid.mode_index(kx, ky, kz);
        const Complex ip = Complex(0.0, 1.0) * p[m];
        out[0].modes()[m] = tables->kx_derivative[kx] * ip;
        out[1].modes()[m] = tables->ky_derivative[ky] * ip;
        out[2].modes()[m] = tables->kz_derivative[kz] * ip;
      }
    }
  }
  return out;
}

ScalarField laplacian(const ScalarField& phi) {
  phi.require(Representation::spectral, "laplacian");
  auto tables = spectral_tables(phi.grid());
  ScalarField out = phi;
  auto o = out.modes();
  for (std::size_t m = 0; m < o.size(); ++m) o[m] *= -tables->k_squared[m];
  return out;
}

Mollifier build_mollifier(const Grid& grid, double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < grid.length() / 4.0)) {
    throw ValidationError("build_mollifier: epsilon must satisfy 0 <= eps < L/4");
  }
  Mollifier m{epsilon, grid, RealBuffer(grid.mode_count(), 1.0)};
  if (epsilon == 0.0) return m;

  // Sample eps^-3 rho(x/eps) around the origin with minimum-image distance;
  // the constant prefactor cancels in the k=0 normalization.
  ScalarField bump(grid, Representation::physical);
  auto v = bump.values();
  const int n = grid.n();
  const double h = grid.spacing();
  for (int k = 0; k < n; ++k) {
    const double z = grid.mode_number(k) * h;
    for (int j = 0; j < n; ++j) {
      const double y = grid.mode_number(j) * h;
      for (int i = 0; i < n; ++i) {
        const double x = grid.mode_number(i) * h;
        const double s2 = (x * x + y * y + z * z) / (epsilon * epsilon);
        v[grid.point_index(i, j, k)] = s2 < 1.0 ? std::exp(-1.0 / (1.0 - s2)) : 0.0;
      }
    }
  }
  const ScalarField spec = to_spectral(bump);
  auto modes = spec.modes();
  const double norm = modes[0].real();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    m.multiplier[i] = modes[i].real() / norm;
  }
  m.multiplier[0] = 1.0;
  return m;
}

VelocityField mollify(const VelocityField& u, const Mollifier& m) {
  require_spectral(u, "mollify");
  require_same_grid(u.grid(), m.grid, "mollify");
  const auto& k = kernels::active();
  VelocityField out = u;
  for (int c = 0; c < 3; ++c) {
    k.scale_modes(out[c].modes().data(), m.multiplier.data(), m.multiplier.size());
  }
  return out;
}

ScalarField dealias(const ScalarField& f) {
  f.require(Representation::spectral, "dealias");
  auto tables = spectral_tables(f.grid());
  ScalarField out = f;
  kernels::active().scale_modes(out.modes().data(), tables->dealias_mask.data(),
                                tables->dealias_mask.size());
  return out;
}

VelocityField dealias(const VelocityField& f) {
  require_spectral(f, "dealias");
  return VelocityField({dealias(f[0]), dealias(f[1]), dealias(f[2])}, f.time());
}

VelocityField tensor_divergence(const VelocityField& u, const VelocityField& w) {
  require_spectral(u, "tensor_divergence");
  require_spectral(w, "tensor_divergence");
  require_same_grid(u.grid(), w.grid(), "tensor_divergence");
  VelocityField out = divergence_of(product_tensor(u, &w), u.grid());
  out.set_time(u.time());
  return out;
}

VelocityField nonlinear_term(const VelocityField& u, const VelocityField& w) {
  VelocityField out = leray_project(tensor_divergence(u, w));
  return out;
}

VelocityField nonlinear_term(const VelocityField& u) {
  return nonlinear_term(u, nullptr, nullptr);
}

VelocityField nonlinear_term(const VelocityField& u, const VelocityField* w,
                             double* velocity_sup) {
  require_spectral(u, "nonlinear_term");
  if (w != nullptr) {
    require_spectral(*w, "nonlinear_term");
    require_same_grid(u.grid(), w->grid(), "nonlinear_term");
  }
  VelocityField out =
      leray_project(divergence_of(product_tensor(u, w, velocity_sup), u.grid()));
  out.set_time(u.time());
  return out;
}

namespace {
ScalarField pressure_from_tensor(const ProductTensor& t, const Grid& grid) {
  // Tensor entry [i][j] = (w_j u_i)_hat, so k_i k_j (w_i u_j)_hat pairs
  // entry[j][i] with k_i k_j; the double sum is symmetric in (i, j).
  auto tables = spectral_tables(grid);
  ScalarField p(grid, Representation::spectral);
  auto out = p.modes();
  const int n = grid.n();
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      for (int kx = 0; kx < grid.half(); ++kx) {
        const std::size_t m = grid.mode_index(kx, ky, kz);
        const double kv[3] = {tables->kx_derivative[kx], tables->ky_derivative[ky],
                              tables->kz_derivative[kz]};
        const double k2 = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
        if (k2 == 0.0 || tables->dealias_mask[m] == 0.0) continue;
        Complex s{};
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) s += kv[i] * kv[j] * t.entry[j][i]->modes()[m];
        }
        out[m] = -s / k2;
      }
    }
  }
  return p;
}
}  // namespace

ScalarField pressure_from_velocity(const VelocityField& u, const VelocityField& w) {
  require_spectral(u, "pressure_from_velocity");
  require_spectral(w, "pressure_from_velocity");
  require_same_grid(u.grid(), w.grid(), "pressure_from_velocity");
  return pressure_from_tensor(product_tensor(u, &w), u.grid());
}

ScalarField pressure_from_velocity(const VelocityField& u) {
  require_spectral(u, "pressure_from_velocity");
  return pressure_from_tensor(product_tensor(u, nullptr), u.grid());
}

VelocityField heat_propagate(const VelocityField& u, double t) {
  require_spectral(u, "heat_propagate");
  auto tables = spectral_tables(u.grid());
  RealBuffer factor(tables->k_squared.size());
  for (std::size_t m = 0; m < factor.size(); ++m) {
    factor[m] = std::exp(-tables->k_squared[m] * t);
  }
  VelocityField out = u;
  for (int c = 0; c < 3; ++c) {
    kernels::active().scale_modes(out[c].modes().data(), factor.data(), factor.size());
  }
  out.set_time(u.time() + t);
  return out;
}

double kinetic_energy(const VelocityField& u) {
  require_spectral(u, "kinetic_energy");
  return 0.5 * weighted_mode_sum(u, nullptr);
}

double dissipation_rate(const VelocityField& u) {
  require_spectral(u, "dissipation_rate");
  auto tables = spectral_tables(u.grid());
  return weighted_mode_sum(u, &tables->k_squared);
}

double l2_norm_squared(const VelocityField& u) {
  u.require(Representation::physical, "l2_norm_squared");
  const auto& k = kernels::active();
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += k.sum_squares(u[c].values().data(), u.grid().point_count());
  return s * std::pow(u.grid().spacing(), 3);
}

double inner_product(const VelocityField& u, const VelocityField& v) {
  u.require(Representation::physical, "inner_product");
  v.require(Representation::physical, "inner_product");
  require_same_grid(u.grid(), v.grid(), "inner_product");
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto a = u[c].values();
    auto b = v[c].values();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  }
  return s * std::pow(u.grid().spacing(), 3);
}

double sup_norm(const VelocityField& u) {
  u.require(Representation::physical, "sup_norm");
  return kernels::active().max_magnitude(u[0].values().data(), u[1].values().data(),
                                         u[2].values().data(), u.grid().point_count());
}

double spectral_sup(const VelocityField& u) {
  require_spectral(u, "spectral_sup");
  double m = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (const Complex& z : u[c].modes()) m = std::max(m, std::abs(z));
  }
  return m;
}

VelocityField add(const VelocityField& a, const VelocityField& b, double s) {
  require_same_grid(a.grid(), b.grid(), "add");
  if (a.representation() != b.representation()) {
    throw ValidationError("add: representation mismatch");
  }
  VelocityField out = a;
  for (int c = 0; c < 3; ++c) {
    if (a.is_spectral()) {
      auto o = out[c].modes();
      auto y = b[c].modes();
      for (std::size_t i = 0; i < o.size(); ++i) o[i] += s * y[i];
    } else {
      auto o = out[c].values();
      auto y = b[c].values();
      for (std::size_t i = 0; i < o.size(); ++i) o[i] += s * y[i];
    }
  }
  return out;
}

}  // namespace ssns
