#pragma once

#include <string>
#include <vector>

#include "fc/mesh.hpp"
#include "fc/solver.hpp"

namespace fc {

struct FaultProfileRecord {
  Index face = 0;
  Vec3 centroid = Vec3::Zero();
  double xi = 0.0;  // coordinate along the fault
  Vec3 traction = Vec3::Zero();  // t_N, t_1, t_2
  double g_n = 0.0;
  Vec2 dg_t = Vec2::Zero();
  ContactState state = ContactState::Stick;
};

// Position of each face centroid along the dominant direction of its fault
// surface (same tag), measured from the surface's first face.
std::vector<double> fault_coordinate(const Mesh& mesh);

// xi defaults to fault_coordinate(mesh).
std::vector<FaultProfileRecord> profile_records(const Mesh& mesh,
                                                const std::vector<FaceResult>& faces,
                                                std::vector<double> xi = {});
// CSV: face,cx,cy,cz,xi,t_N,t_1,t_2,g_N,dg_1,dg_2,state
std::string profile_csv(const std::vector<FaultProfileRecord>& rows);

// Legacy VTK unstructured grid with nodal displacement; u may be empty.
std::string vtk_field(const Mesh& mesh, const VecX& u);
// Fault faces (minus-side geometry) with local and global tractions, jumps
// and state as cell data.
std::string vtk_fault(const Mesh& mesh, const std::vector<FaceResult>& faces);

}  // namespace fc
