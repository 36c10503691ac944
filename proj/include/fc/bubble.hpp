#pragma once

#include "fc/element.hpp"

namespace fc {

// Face bubble of a reference cell: vanishes on every face except `face`.
double bubble_value(CellKind kind, int face, const Vec3& xi);
Vec3 bubble_gradient(CellKind kind, int face, const Vec3& xi);

}  // namespace fc
