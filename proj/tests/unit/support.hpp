#pragma once

#include <cmath>
#include <numbers>

#include "ssns/field.hpp"
#include "ssns/fft.hpp"

namespace test {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

template <class Fn>
ssns::ScalarField sample(const ssns::Grid& g, Fn&& f) {
  ssns::ScalarField s(g, ssns::Representation::physical);
  const double h = g.spacing();
  for (int k = 0; k < g.n(); ++k)
    for (int j = 0; j < g.n(); ++j)
      for (int i = 0; i < g.n(); ++i) s.values()[g.point_index(i, j, k)] = f(i * h, j * h, k * h);
  return s;
}

inline double max_abs_diff(const ssns::ScalarField& a, const ssns::ScalarField& b) {
  double worst = 0.0;
  if (a.is_spectral()) {
    for (std::size_t m = 0; m < a.modes().size(); ++m)
      worst = std::max(worst, std::abs(a.modes()[m] - b.modes()[m]));
  } else {
    for (std::size_t m = 0; m < a.values().size(); ++m)
      worst = std::max(worst, std::abs(a.values()[m] - b.values()[m]));
  }
  return worst;
}

inline double max_abs(const ssns::ScalarField& a) {
  double worst = 0.0;
  if (a.is_spectral()) {
    for (auto z : a.modes()) worst = std::max(worst, std::abs(z));
  } else {
    for (double v : a.values()) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

inline double max_abs_diff(const ssns::VelocityField& a, const ssns::VelocityField& b) {
  double w = 0.0;
  for (int c = 0; c < 3; ++c) w = std::max(w, max_abs_diff(a[c], b[c]));
  return w;
}

inline double max_abs(const ssns::VelocityField& a) {
  double w = 0.0;
  for (int c = 0; c < 3; ++c) w = std::max(w, max_abs(a[c]));
  return w;
}

}  // namespace test
