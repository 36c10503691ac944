#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fc/contact.hpp"
#include "fc/elasticity.hpp"
#include "fc/mesh.hpp"

namespace fc {

struct MaterialProps {
  ElasticMaterial elastic;
  double biot = 1.0;
};

// Prescribed total displacement components on a node set; unset
// components stay free.
struct DirichletBC {
  std::string set;
  std::array<std::optional<double>, 3> value;
};

// Total traction vector (global frame) on a boundary face set.
struct NeumannBC {
  std::string set;
  Vec3 traction = Vec3::Zero();
};

struct LoadStep {
  double time = 0.0;
  std::vector<DirichletBC> dirichlet;
  std::vector<NeumannBC> neumann;
  std::map<int, double> pressure;        // region -> pore pressure change
  std::map<int, double> fault_pressure;  // fault tag -> fluid pressure
};

struct ProblemDefinition {
  Mesh mesh;
  std::map<int, MaterialProps> materials;
  Mat3 initial_stress = Mat3::Zero();
  std::map<int, Mat3> region_initial_stress;
  FrictionParams friction;
  std::map<int, FrictionParams> fault_friction;  // per fault tag
  std::optional<PenaltyParams> penalty;          // uniform override
  bool enriched = true;
  std::vector<LoadStep> steps;

  const MaterialProps& material(int region) const;
  const FrictionParams& friction_for(int tag) const;
  const Mat3& initial_stress_for(int region) const;
};

// Checks materials, friction, sets referenced by steps and stress symmetry.
void validate(const ProblemDefinition& p);

}  // namespace fc
