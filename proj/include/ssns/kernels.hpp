#pragma once

// Data-parallel inner loops used by the spectral operators and the
// interpolation code. Every kernel has a scalar reference version; an AVX2
// version is selected at runtime when the CPU supports it. Set
// SSNS_KERNELS=scalar in the environment to force the reference path.

#include <cstddef>

#include "ssns/aligned.hpp"

namespace ssns::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  const char* name;

  /// data[i] *= mult[i]
  void (*scale_modes)(Complex* data, const double* mult, std::size_t n);
  /// out[i] = m1[i]*x[i] + s*m2[i]*y[i]
  void (*combine_modes)(Complex* out, const double* m1, const Complex* x,
                        double s, const double* m2, const Complex* y,
                        std::size_t n);
  /// out[i] += c*x[i]
  void (*accumulate_modes)(Complex* out, Complex c, const Complex* x,
                           std::size_t n);
  /// Removes the component of (f0,f1,f2) along (kx[i],ky,kz) for one line of
  /// modes; entries with a zero wavevector are left untouched.
  void (*project_line)(Complex* f0, Complex* f1, Complex* f2, const double* kx,
                       double ky, double kz, std::size_t n);
  /// out[i] = i*(kx[i]*t0[i] + ky*t1[i] + kz*t2[i])
  void (*divergence_line)(Complex* out, const Complex* t0, const Complex* t1,
                          const Complex* t2, const double* kx, double ky,
                          double kz, std::size_t n);
  /// out[i] = a[i]*b[i]
  void (*multiply)(double* out, const double* a, const double* b,
                   std::size_t n);
  /// sum a[i]^2
  double (*sum_squares)(const double* a, std::size_t n);
  /// max sqrt(a^2+b^2+c^2)
  double (*max_magnitude)(const double* a, const double* b, const double* c,
                          std::size_t n);
};

/// Table chosen for this process (first call decides).
const KernelTable& active();
/// Explicit variant, or nullptr when this build/CPU cannot run it.
const KernelTable* table(Isa isa);
bool cpu_supports(Isa isa);

namespace detail {
extern const KernelTable scalar_table;
#if defined(SSNS_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace ssns::kernels
