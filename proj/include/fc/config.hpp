#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fc/problem.hpp"
#include "fc/solver.hpp"

namespace fc {

struct MeshSource {
  std::string builder = "grid";  // grid | file
  std::string file;
  CellKind kind = CellKind::Hex8;
  std::vector<double> x, y, z;  // grid coordinates
  std::vector<PlaneSpec> fault_planes;
  std::vector<RegionBox> regions;
  bool allow_intersections = false;
  // extra sets from axis boxes: lo x y z, hi x y z
  std::map<std::string, std::array<double, 6>> node_boxes, face_boxes;
};

struct OutputConfig {
  std::string profile;  // prefix: <profile>_step<k>.csv
  std::string field;    // prefix: <field>.vtk and <field>_fault.vtk
  std::string report;   // iteration report CSV
};

struct RunConfig {
  MeshSource mesh;
  std::map<int, MaterialProps> materials;
  std::map<int, Mat3> initial_stress;  // by region
  bool enriched = true;
  FrictionParams friction;
  std::optional<PenaltyParams> penalty;  // explicit values override the scale
  SolverConfig solver;
  std::vector<LoadStep> steps;
  OutputConfig output;
};

// Sections: [mesh] [material.<region>] [fault] [friction] [penalty]
// [solver] [steps.<n>] [output]; "key = value" lines, '#' comments.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// Every setting, defaults included, in a form parse_config accepts.
std::string echo_config(const RunConfig& c);

Mesh build_mesh(const MeshSource& m);
ProblemDefinition build_problem(const RunConfig& c);

}  // namespace fc
