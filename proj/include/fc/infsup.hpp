#pragma once

#include <vector>

#include "fc/mesh.hpp"

namespace fc {

// Discrete inf-sup constant of the (displacement, P0 traction) pair over the
// fault faces, all faces in stick. Displacements are measured in the
// broken norm diam^-2 |u|_0^2 + |grad u|_0^2, tractions in sum h |phi| mu^2.
// Components decouple, so the scalar problem is solved.
double estimate_infsup(const Mesh& mesh, bool enriched);

// Unit cube of n^3 hexahedra cut by a fault at x = 1/2 (n even).
Mesh two_block_mesh(int n);

struct InfsupRow {
  int n = 0;
  double h = 0.0;
  double beta_enriched = 0.0;
  double beta_unenriched = 0.0;
};

// Two-block meshes with n = 2, 4, 8, ... (levels entries).
std::vector<InfsupRow> infsup_study(int levels);
// CSV: n,h,beta_enriched,beta_unenriched
std::string infsup_csv(const std::vector<InfsupRow>& rows);

}  // namespace fc
