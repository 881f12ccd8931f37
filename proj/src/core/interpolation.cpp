#include "ssns/interpolation.hpp"

#include <cmath>

#include "ssns/error.hpp"
#include "ssns/kernels.hpp"

namespace ssns {

namespace {

// basis[k * m + a] for storage index k and point a.
ComplexBuffer axis_basis(const Grid& grid, std::span<const double> pts,
                         bool half_axis) {
  const int n = grid.n();
  const int count = half_axis ? grid.half() : n;
  const std::size_t m = pts.size();
  ComplexBuffer basis(static_cast<std::size_t>(count) * m);
  for (int k = 0; k < count; ++k) {
    const double kw = grid.wavenumber(k);
    for (std::size_t a = 0; a < m; ++a) {
      Complex b;
      if (k == n / 2) {
        b = Complex(std::cos(kw * pts[a]), 0.0);
      } else {
        b = Complex(std::cos(kw * pts[a]), std::sin(kw * pts[a]));
        if (half_axis && k != 0) b *= 2.0;
      }
      basis[k * m + a] = b;
    }
  }
  return basis;
}

}  // namespace

RealBuffer evaluate_tensor(const ScalarField& f, std::span<const double> xs,
                           std::span<const double> ys,
                           std::span<const double> zs) {
  f.require(Representation::spectral, "evaluate_tensor");
  const Grid& grid = f.grid();
  const auto& k = kernels::active();
  const int n = grid.n();
  const int h = grid.half();
  const std::size_t mx = xs.size(), my = ys.size(), mz = zs.size();
  const ComplexBuffer bx = axis_basis(grid, xs, true);
  const ComplexBuffer by = axis_basis(grid, ys, false);
  const ComplexBuffer bz = axis_basis(grid, zs, false);
  auto modes = f.modes();

  // Contract x: t1[(kz*n + ky)*mx + a]
  ComplexBuffer t1(static_cast<std::size_t>(n) * n * mx);
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      Complex* row = t1.data() + (static_cast<std::size_t>(kz) * n + ky) * mx;
      const std::size_t base = grid.mode_index(0, ky, kz);
      for (int kx = 0; kx < h; ++kx) {
        const Complex c = modes[base + kx];
        if (c == Complex{}) continue;
        k.accumulate_modes(row, c, bx.data() + kx * mx, mx);
      }
    }
  }
  // Contract y: t2[(kz*my + b)*mx + a]
  ComplexBuffer t2(static_cast<std::size_t>(n) * my * mx);
  for (int kz = 0; kz < n; ++kz) {
    for (std::size_t b = 0; b < my; ++b) {
      Complex* row = t2.data() + (kz * my + b) * mx;
      for (int ky = 0; ky < n; ++ky) {
        k.accumulate_modes(row, by[ky * my + b],
                           t1.data() + (static_cast<std::size_t>(kz) * n + ky) * mx, mx);
      }
    }
  }
  // Contract z: t3[(c*my + b)*mx + a]
  ComplexBuffer t3(mz * my * mx);
  for (std::size_t c = 0; c < mz; ++c) {
    for (int kz = 0; kz < n; ++kz) {
      k.accumulate_modes(t3.data() + c * my * mx, bz[kz * mz + c],
                         t2.data() + kz * my * mx, my * mx);
    }
  }
  const double scale = 1.0 / static_cast<double>(grid.point_count());
  RealBuffer out(t3.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t3[i].real() * scale;
  return out;
}

double trilinear(const ScalarField& f, const std::array<double, 3>& x) {
  const Grid& grid = f.grid();
  auto v = f.values();
  const int n = grid.n();
  const double h = grid.spacing();
  int base[3];
  double frac[3];
  for (int d = 0; d < 3; ++d) {
    const double s = x[d] / h;
    const double fl = std::floor(s);
    frac[d] = s - fl;
    base[d] = static_cast<int>(((static_cast<long long>(fl) % n) + n) % n);
  }
  double total = 0.0;
  for (int dz = 0; dz < 2; ++dz) {
    for (int dy = 0; dy < 2; ++dy) {
      for (int dx = 0; dx < 2; ++dx) {
        const double w = (dx ? frac[0] : 1 - frac[0]) * (dy ? frac[1] : 1 - frac[1]) *
                         (dz ? frac[2] : 1 - frac[2]);
        const int i = (base[0] + dx) % n;
        const int j = (base[1] + dy) % n;
        const int k = (base[2] + dz) % n;
        total += w * v[grid.point_index(i, j, k)];
      }
    }
  }
  return total;
}

std::vector<double> grid_offsets(const Grid& grid, int cells) {
  std::vector<double> out;
  out.reserve(2 * cells + 1);
  for (int m = -cells; m <= cells; ++m) out.push_back(m * grid.spacing());
  return out;
}

CubeSample sample_cube(const VelocityField& u, const std::array<double, 3>& center,
                       std::vector<double> offsets) {
  u.require(Representation::spectral, "sample_cube");
  CubeSample s;
  s.offsets = std::move(offsets);
  std::array<std::vector<double>, 3> pts;
  for (int d = 0; d < 3; ++d) {
    pts[d].reserve(s.offsets.size());
    for (double o : s.offsets) pts[d].push_back(center[d] + o);
  }
  for (int c = 0; c < 3; ++c) s.values[c] = evaluate_tensor(u[c], pts[0], pts[1], pts[2]);
  return s;
}

CubeSample grid_cube(const VelocityField& u, int cells) {
  u.require(Representation::physical, "grid_cube");
  const Grid& grid = u.grid();
  const int c0 = grid.center_index();
  if (c0 - cells < 0 || c0 + cells >= grid.n()) {
    throw ValidationError("grid_cube: cube exceeds the box");
  }
  CubeSample s;
  s.offsets = grid_offsets(grid, cells);
  const std::size_t m = s.side();
  for (int comp = 0; comp < 3; ++comp) {
    s.values[comp].resize(m * m * m);
    auto v = u[comp].values();
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t b = 0; b < m; ++b) {
        for (std::size_t a = 0; a < m; ++a) {
          s.values[comp][s.index(a, b, c)] =
              v[grid.point_index(c0 - cells + static_cast<int>(a), c0 - cells + static_cast<int>(b),
                                 c0 - cells + static_cast<int>(c))];
        }
      }
    }
  }
  return s;
}

}  // namespace ssns
