#include "ssns/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ssns/error.hpp"

namespace ssns {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n < 8 || !is_power_of_two(n)) {
    throw ValidationError("grid: N must be a power of two >= 8, got " +
                          std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("grid: L must be positive and finite");
  }
}

double Grid::wavenumber(int index) const {
  return 2.0 * std::numbers::pi / length_ * mode_number(index);
}

double Grid::derivative_wavenumber(int index) const {
  if (index == n_ / 2) return 0.0;
  return wavenumber(index);
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a != b) {
    throw ValidationError(std::string(what) + ": grid mismatch");
  }
}

}  // namespace ssns
