#pragma once

#include <vector>

#include "fc/element.hpp"
#include "fc/quadrature.hpp"

namespace fc {

using Voigt = Eigen::Matrix<double, 6, 1>;

struct ElasticMaterial {
  double E = 1.0;
  double nu = 0.0;
};

void validate(const ElasticMaterial& m);
double lame_lambda(const ElasticMaterial& m);
double shear_modulus(const ElasticMaterial& m);

// Voigt order xx, yy, zz, yz, xz, xy with engineering shear strain.
Mat6 elasticity_tensor(const ElasticMaterial& m);
Voigt to_voigt(const Mat3& sigma);
Mat3 from_voigt(const Voigt& s);

struct ElementMatrices {
  MatX K;  // stiffness
  VecX f;  // integral of B^T sigma_eig
};

// Basis: the n nodal functions followed by one face bubble per entry of
// `bubble_faces`; each basis function carries 3 dofs (dof = 3*basis + dir).
ElementMatrices element_kernel(CellKind kind, const MatX& coords,
                               const Mat6& C, const Mat3& sigma_eig,
                               const std::vector<int>& bubble_faces,
                               const QuadratureRule& rule, Index cell_id = -1);

MatX element_stiffness(CellKind kind, const MatX& coords,
                       const ElasticMaterial& mat, Index cell_id = -1);
VecX element_eigenstress_load(CellKind kind, const MatX& coords,
                              const Mat3& sigma_eig, Index cell_id = -1);

// Scalar mass and gradient (Laplacian) matrices over the same basis.
void scalar_basis_matrices(CellKind kind, const MatX& coords,
                           const std::vector<int>& bubble_faces,
                           const QuadratureRule& rule, MatX& mass,
                           MatX& laplace, Index cell_id = -1);

double cell_volume(CellKind kind, const MatX& coords);

}  // namespace fc
