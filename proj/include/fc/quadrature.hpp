#pragma once

#include <vector>

#include "fc/element.hpp"

namespace fc {

struct QuadratureRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int degree = 0;  // total-degree exactness on the reference element
};

struct FaceQuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int degree = 0;
};

// n-point Gauss-Legendre on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

const QuadratureRule& standard_quadrature(CellKind kind);
const QuadratureRule& bubble_quadrature(CellKind kind);
const FaceQuadratureRule& face_quadrature(FaceKind kind);
const FaceQuadratureRule& face_bubble_quadrature(FaceKind kind);

// Collapsed (Duffy) n x n rule on the unit triangle, exact to degree 2n-2.
FaceQuadratureRule collapsed_triangle_rule(int n);

}  // namespace fc
