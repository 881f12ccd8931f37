#pragma once

#include "ssns/field.hpp"

namespace ssns {

/// Forward transform, f_hat(k) = sum_x f(x) exp(-i k.x). Throws
/// ValidationError unless the input is physical.
ScalarField to_spectral(const ScalarField& f);
VelocityField to_spectral(const VelocityField& u);

/// Inverse transform including the 1/N^3 factor. Throws ValidationError
/// unless the input is spectral.
ScalarField to_physical(const ScalarField& f);
VelocityField to_physical(const VelocityField& u);

}  // namespace ssns
