#pragma once

#include <array>
#include <span>

#include "ssns/aligned.hpp"
#include "ssns/grid.hpp"

namespace ssns {

enum class Representation { physical, spectral };

const char* to_string(Representation rep);

/// One scalar array on a grid, either as real point values or as complex
/// Fourier coefficients (unnormalized forward transform, half layout).
class ScalarField {
 public:
  ScalarField(const Grid& grid, Representation rep);

  const Grid& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_spectral() const { return rep_ == Representation::spectral; }

  std::span<double> values();
  std::span<const double> values() const;
  std::span<Complex> modes();
  std::span<const Complex> modes() const;

  void require(Representation rep, const char* op) const;

 private:
  Grid grid_;
  Representation rep_;
  RealBuffer values_;
  ComplexBuffer modes_;
};

/// Three velocity components sharing grid, representation and time stamp.
class VelocityField {
 public:
  VelocityField(const Grid& grid, Representation rep, double time = 0.0);
  /// Components must share grid and representation.
  VelocityField(std::array<ScalarField, 3> components, double time);

  const Grid& grid() const { return components_[0].grid(); }
  Representation representation() const {
    return components_[0].representation();
  }
  bool is_spectral() const { return components_[0].is_spectral(); }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  ScalarField& operator[](int c) { return components_[c]; }
  const ScalarField& operator[](int c) const { return components_[c]; }

  void require(Representation rep, const char* op) const {
    components_[0].require(rep, op);
  }

 private:
  std::array<ScalarField, 3> components_;
  double time_;
};

}  // namespace ssns
