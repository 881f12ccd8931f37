// Reference implementations. Compiled without FMA contraction so the AVX2
// variants of the elementwise kernels reproduce them bit for bit.

#include <algorithm>
#include <cmath>

#include "ssns/kernels.hpp"

namespace ssns::kernels {

namespace {

inline double& re(Complex& z) { return reinterpret_cast<double(&)[2]>(z)[0]; }
inline double& im(Complex& z) { return reinterpret_cast<double(&)[2]>(z)[1]; }

void scale_modes(Complex* data, const double* mult, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    re(data[i]) *= mult[i];
    im(data[i]) *= mult[i];
  }
}

void combine_modes(Complex* out, const double* m1, const Complex* x, double s,
                   const double* m2, const Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = m1[i];
    const double b = s * m2[i];
    const double r = a * x[i].real() + b * y[i].real();
    const double q = a * x[i].imag() + b * y[i].imag();
    out[i] = Complex(r, q);
  }
}

void accumulate_modes(Complex* out, Complex c, const Complex* x,
                      std::size_t n) {
  const double cr = c.real();
  const double ci = c.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    re(out[i]) += cr * xr - ci * xi;
    im(out[i]) += cr * xi + ci * xr;
  }
}

void project_line(Complex* f0, Complex* f1, Complex* f2, const double* kx,
                  double ky, double kz, std::size_t n) {
  const double kyz = ky * ky + kz * kz;
  for (std::size_t i = 0; i < n; ++i) {
    const double k2 = kx[i] * kx[i] + kyz;
    const double inv = k2 > 0.0 ? 1.0 / k2 : 0.0;
    const double dr =
        (kx[i] * f0[i].real() + ky * f1[i].real() + kz * f2[i].real()) * inv;
    const double di =
        (kx[i] * f0[i].imag() + ky * f1[i].imag() + kz * f2[i].imag()) * inv;
    re(f0[i]) -= kx[i] * dr;
    im(f0[i]) -= kx[i] * di;
    re(f1[i]) -= ky * dr;
    im(f1[i]) -= ky * di;
    re(f2[i]) -= kz * dr;
    im(f2[i]) -= kz * di;
  }
}

void divergence_line(Complex* out, const Complex* t0, const Complex* t1,
                     const Complex* t2, const double* kx, double ky, double kz,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double sr =
        kx[i] * t0[i].real() + ky * t1[i].real() + kz * t2[i].real();
    const double si =
        kx[i] * t0[i].imag() + ky * t1[i].imag() + kz * t2[i].imag();
    out[i] = Complex(-si, sr);
  }
}

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double sum_squares(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_magnitude(const double* a, const double* b, const double* c,
                     std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max(m, a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
  }
  return std::sqrt(m);
}

}  // namespace

namespace detail {
const KernelTable scalar_table{
    "scalar",      scale_modes, combine_modes, accumulate_modes, project_line,
    divergence_line, multiply,  sum_squares,   max_magnitude,
};
}  // namespace detail

}  // namespace ssns::kernels
