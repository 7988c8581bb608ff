#pragma once

#include <array>

#include "hhk/sphere_math.hpp"

namespace hhk {

/// Eigenvalues of a symmetric 3×3 matrix, ascending. Closed-form
/// trigonometric solution of the characteristic cubic followed by one Newton
/// step on each root.
std::array<double, 3> symmetric_eigenvalues(const Mat3& a);

}  // namespace hhk
