#include "fc/problem.hpp"

namespace fc {

const MaterialProps& ProblemDefinition::material(int region) const {
  auto it = materials.find(region);
  if (it == materials.end()) {
    throw Error("no material for region " + std::to_string(region));
  }
  return it->second;
}

const FrictionParams& ProblemDefinition::friction_for(int tag) const {
  auto it = fault_friction.find(tag);
  return it == fault_friction.end() ? friction : it->second;
}

const Mat3& ProblemDefinition::initial_stress_for(int region) const {
  auto it = region_initial_stress.find(region);
  return it == region_initial_stress.end() ? initial_stress : it->second;
}

namespace {

void check_symmetric(const Mat3& s, const std::string& what) {
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(what + " is not symmetric");
  }
}

}  // namespace

void validate(const ProblemDefinition& p) {
  if (p.steps.empty()) throw Error("problem has no load steps");
  for (const Cell& c : p.mesh.cells) {
    const MaterialProps& m = p.material(c.region);
    validate(m.elastic);
    if (m.biot < 0.0 || m.biot > 1.0) {
      throw Error("Biot coefficient of region " + std::to_string(c.region) +
                  " outside [0, 1]");
    }
  }
  validate(p.friction);
  for (const auto& [tag, f] : p.fault_friction) validate(f);
  if (p.penalty && !(p.penalty->eps_n > 0.0 && p.penalty->eps_t > 0.0)) {
    throw Error("penalty parameters must be positive");
  }
  check_symmetric(p.initial_stress, "initial stress");
  for (const auto& [r, s] : p.region_initial_stress) {
    check_symmetric(s, "initial stress of region " + std::to_string(r));
  }
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    const LoadStep& st = p.steps[k];
    for (const DirichletBC& d : st.dirichlet) {
      if (!p.mesh.node_sets.count(d.set)) {
        throw Error("step " + std::to_string(k) + ": undefined node set '" +
                    d.set + "'");
      }
    }
    for (const NeumannBC& n : st.neumann) {
      if (!p.mesh.face_sets.count(n.set)) {
        throw Error("step " + std::to_string(k) + ": undefined face set '" +
                    n.set + "'");
      }
    }
  }
}

}  // namespace fc
