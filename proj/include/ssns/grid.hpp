#pragma once

#include <array>
#include <cstddef>

namespace ssns {

/// Periodic cube [0, L)^3 sampled at N points per axis.
///
/// Physical arrays are stored x-fastest: index = i + N*(j + N*k). Spectral
/// arrays use the real-to-complex half layout along x: index =
/// kx + (N/2+1)*(ky + N*kz) with kx in [0, N/2].
class Grid {
 public:
  Grid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  int half() const { return n_ / 2 + 1; }
  std::size_t point_count() const {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }
  std::size_t mode_count() const {
    return static_cast<std::size_t>(n_) * n_ * half();
  }

  std::size_t point_index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n_) * (j + static_cast<std::size_t>(n_) * k);
  }
  std::size_t mode_index(int kx, int ky, int kz) const {
    return static_cast<std::size_t>(kx) +
           static_cast<std::size_t>(half()) *
               (ky + static_cast<std::size_t>(n_) * kz);
  }

  /// Signed integer wavenumber for a storage index; Nyquist maps to +N/2.
  int mode_number(int index) const { return index <= n_ / 2 ? index : index - n_; }
  /// Physical wavenumber 2*pi/L * mode_number.
  double wavenumber(int index) const;
  /// Wavenumber used by first-derivative symbols: zero at Nyquist.
  double derivative_wavenumber(int index) const;
  /// Largest retained |mode_number| under the 2/3 rule.
  int dealias_cutoff() const { return n_ / 3; }

  /// Coordinate of grid line i relative to the box center L/2.
  double centered_coordinate(int i) const { return (i - n_ / 2) * spacing(); }
  /// Grid index of the box center.
  int center_index() const { return n_ / 2; }

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int n_;
  double length_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace ssns
