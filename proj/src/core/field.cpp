#include "ssns/field.hpp"

#include <string>
#include <utility>

#include "ssns/error.hpp"

namespace ssns {

const char* to_string(Representation rep) {
  return rep == Representation::physical ? "physical" : "spectral";
}

ScalarField::ScalarField(const Grid& grid, Representation rep)
    : grid_(grid), rep_(rep) {
  if (rep == Representation::physical) {
    values_.assign(grid.point_count(), 0.0);
  } else {
    modes_.assign(grid.mode_count(), Complex{});
  }
}

void ScalarField::require(Representation rep, const char* op) const {
  if (rep_ != rep) {
    throw ValidationError(std::string(op) + ": expected " + to_string(rep) +
                          " representation, got " + to_string(rep_));
  }
}

std::span<double> ScalarField::values() {
  require(Representation::physical, "values");
  return values_;
}
std::span<const double> ScalarField::values() const {
  require(Representation::physical, "values");
  return values_;
}
std::span<Complex> ScalarField::modes() {
  require(Representation::spectral, "modes");
  return modes_;
}
std::span<const Complex> ScalarField::modes() const {
  require(Representation::spectral, "modes");
  return modes_;
}

VelocityField::VelocityField(const Grid& grid, Representation rep, double time)
    : components_{ScalarField(grid, rep), ScalarField(grid, rep),
                  ScalarField(grid, rep)},
      time_(time) {}

VelocityField::VelocityField(std::array<ScalarField, 3> components, double time)
    : components_(std::move(components)), time_(time) {
  for (int c = 1; c < 3; ++c) {
    require_same_grid(components_[0].grid(), components_[c].grid(), "VelocityField");
    if (components_[c].representation() != components_[0].representation()) {
      throw ValidationError("VelocityField: component representation mismatch");
    }
  }
}

}  // namespace ssns
