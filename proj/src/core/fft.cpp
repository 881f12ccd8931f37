#include "ssns/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace ssns {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are made once per N on scratch buffers with the same alignment
// as AlignedAllocator storage, then reused for every field.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int n) {
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  const std::size_t points = static_cast<std::size_t>(n) * n * n;
  const std::size_t modes = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  RealBuffer real(points);
  ComplexBuffer cplx(modes);
  auto* in = real.data();
  auto* out = reinterpret_cast<fftw_complex*>(cplx.data());

  auto pair = std::make_unique<PlanPair>();
  // Slowest axis first: (z, y, x). ESTIMATE keeps plans reproducible.
  pair->forward = fftw_plan_dft_r2c_3d(n, n, n, in, out, FFTW_ESTIMATE);
  pair->inverse = fftw_plan_dft_c2r_3d(n, n, n, out, in, FFTW_ESTIMATE);
  auto [pos, inserted] = cache.emplace(n, std::move(pair));
  return *pos->second;
}

}  // namespace

ScalarField to_spectral(const ScalarField& f) {
  f.require(Representation::physical, "to_spectral");
  const Grid& grid = f.grid();
  ScalarField out(grid, Representation::spectral);
  // Out-of-place r2c preserves its input (FFTW default).
  fftw_execute_dft_r2c(plans_for(grid.n()).forward,
                       const_cast<double*>(f.values().data()),
                       reinterpret_cast<fftw_complex*>(out.modes().data()));
  return out;
}

ScalarField to_physical(const ScalarField& f) {
  f.require(Representation::spectral, "to_physical");
  const Grid& grid = f.grid();
  ScalarField out(grid, Representation::physical);
  ComplexBuffer input(f.modes().begin(), f.modes().end());
  fftw_execute_dft_c2r(plans_for(grid.n()).inverse,
                       reinterpret_cast<fftw_complex*>(input.data()),
                       out.values().data());
  const double scale = 1.0 / static_cast<double>(grid.point_count());
  auto v = out.values();
  std::transform(v.begin(), v.end(), v.begin(),
                 [scale](double x) { return x * scale; });
  return out;
}

VelocityField to_spectral(const VelocityField& u) {
  u.require(Representation::physical, "to_spectral");
  return VelocityField({to_spectral(u[0]), to_spectral(u[1]), to_spectral(u[2])},
                       u.time());
}

VelocityField to_physical(const VelocityField& u) {
  u.require(Representation::spectral, "to_physical");
  return VelocityField({to_physical(u[0]), to_physical(u[1]), to_physical(u[2])},
                       u.time());
}

}  // namespace ssns
