// AVX2 variants. Two complex values (four doubles) per register; the
// elementwise kernels use the same operation order as the scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "ssns/kernels.hpp"

namespace ssns::kernels {

namespace {

// [m0, m0, m1, m1] from two consecutive reals.
inline __m256d spread_pair(const double* m) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(m)),
                               0b01010000);
}

inline double* raw(Complex* z) { return reinterpret_cast<double*>(z); }
inline const double* raw(const Complex* z) {
  return reinterpret_cast<const double*>(z);
}

void scale_modes(Complex* data, const double* mult, std::size_t n) {
  double* d = raw(data);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(d + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(v, spread_pair(mult + i)));
  }
  for (; i < n; ++i) {
    d[2 * i] *= mult[i];
    d[2 * i + 1] *= mult[i];
  }
}

void combine_modes(Complex* out, const double* m1, const Complex* x, double s,
                   const double* m2, const Complex* y, std::size_t n) {
  double* o = raw(out);
  const double* xd = raw(x);
  const double* yd = raw(y);
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = spread_pair(m1 + i);
    const __m256d b = _mm256_mul_pd(sv, spread_pair(m2 + i));
    const __m256d r = _mm256_add_pd(_mm256_mul_pd(a, _mm256_loadu_pd(xd + 2 * i)),
                                    _mm256_mul_pd(b, _mm256_loadu_pd(yd + 2 * i)));
    _mm256_storeu_pd(o + 2 * i, r);
  }
  for (; i < n; ++i) {
    const double a = m1[i];
    const double b = s * m2[i];
    o[2 * i] = a * xd[2 * i] + b * yd[2 * i];
    o[2 * i + 1] = a * xd[2 * i + 1] + b * yd[2 * i + 1];
  }
}

void accumulate_modes(Complex* out, Complex c, const Complex* x,
                      std::size_t n) {
  double* o = raw(out);
  const double* xd = raw(x);
  const __m256d cr = _mm256_set1_pd(c.real());
  const __m256d ci = _mm256_set1_pd(c.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xd + 2 * i);
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    // even lanes: cr*xr - ci*xi, odd lanes: cr*xi + ci*xr
    const __m256d prod =
        _mm256_addsub_pd(_mm256_mul_pd(cr, v), _mm256_mul_pd(ci, swapped));
    _mm256_storeu_pd(o + 2 * i, _mm256_add_pd(_mm256_loadu_pd(o + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = xd[2 * i];
    const double xi = xd[2 * i + 1];
    o[2 * i] += c.real() * xr - c.imag() * xi;
    o[2 * i + 1] += c.real() * xi + c.imag() * xr;
  }
}

void project_line(Complex* f0, Complex* f1, Complex* f2, const double* kx,
                  double ky, double kz, std::size_t n) {
  double* a = raw(f0);
  double* b = raw(f1);
  double* c = raw(f2);
  const double kyz = ky * ky + kz * kz;
  const __m256d kyv = _mm256_set1_pd(ky);
  const __m256d kzv = _mm256_set1_pd(kz);
  const __m256d kyzv = _mm256_set1_pd(kyz);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d kxv = spread_pair(kx + i);
    const __m256d k2 = _mm256_add_pd(_mm256_mul_pd(kxv, kxv), kyzv);
    const __m256d positive = _mm256_cmp_pd(k2, zero, _CMP_GT_OQ);
    const __m256d inv = _mm256_and_pd(positive, _mm256_div_pd(one, k2));
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    const __m256d vc = _mm256_loadu_pd(c + 2 * i);
    const __m256d dot = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(kxv, va), _mm256_mul_pd(kyv, vb)),
        _mm256_mul_pd(kzv, vc));
    const __m256d d = _mm256_mul_pd(dot, inv);
    _mm256_storeu_pd(a + 2 * i, _mm256_sub_pd(va, _mm256_mul_pd(kxv, d)));
    _mm256_storeu_pd(b + 2 * i, _mm256_sub_pd(vb, _mm256_mul_pd(kyv, d)));
    _mm256_storeu_pd(c + 2 * i, _mm256_sub_pd(vc, _mm256_mul_pd(kzv, d)));
  }
  for (; i < n; ++i) {
    const double k2 = kx[i] * kx[i] + kyz;
    const double inv = k2 > 0.0 ? 1.0 / k2 : 0.0;
    for (int part = 0; part < 2; ++part) {
      const std::size_t j = 2 * i + part;
      const double d = (kx[i] * a[j] + ky * b[j] + kz * c[j]) * inv;
      a[j] -= kx[i] * d;
      b[j] -= ky * d;
      c[j] -= kz * d;
    }
  }
}

void divergence_line(Complex* out, const Complex* t0, const Complex* t1,
                     const Complex* t2, const double* kx, double ky, double kz,
                     std::size_t n) {
  double* o = raw(out);
  const double* a = raw(t0);
  const double* b = raw(t1);
  const double* c = raw(t2);
  const __m256d kyv = _mm256_set1_pd(ky);
  const __m256d kzv = _mm256_set1_pd(kz);
  const __m256d sign = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d kxv = spread_pair(kx + i);
    const __m256d s = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(kxv, _mm256_loadu_pd(a + 2 * i)),
                      _mm256_mul_pd(kyv, _mm256_loadu_pd(b + 2 * i))),
        _mm256_mul_pd(kzv, _mm256_loadu_pd(c + 2 * i)));
    // i*(sr + i si) = (-si, sr)
    _mm256_storeu_pd(o + 2 * i, _mm256_mul_pd(_mm256_permute_pd(s, 0b0101), sign));
  }
  for (; i < n; ++i) {
    const double sr = kx[i] * a[2 * i] + ky * b[2 * i] + kz * c[2 * i];
    const double si =
        kx[i] * a[2 * i + 1] + ky * b[2 * i + 1] + kz * c[2 * i + 1];
    o[2 * i] = -si;
    o[2 * i + 1] = sr;
  }
}

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

double sum_squares(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(a + i);
    const __m256d v1 = _mm256_loadu_pd(a + i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_magnitude(const double* a, const double* b, const double* c,
                     std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d vc = _mm256_loadu_pd(c + i);
    const __m256d sq = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(va, va), _mm256_mul_pd(vb, vb)),
        _mm256_mul_pd(vc, vc));
    m = _mm256_max_pd(m, sq);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double best = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    best = std::max(best, a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
  }
  return std::sqrt(best);
}

}  // namespace

namespace detail {
const KernelTable avx2_table{
    "avx2",        scale_modes, combine_modes, accumulate_modes, project_line,
    divergence_line, multiply,  sum_squares,   max_magnitude,
};
}  // namespace detail

}  // namespace ssns::kernels
