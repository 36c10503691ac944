#pragma once

#include <memory>
#include <vector>

#include <Eigen/LU>

#include "fc/problem.hpp"
#include "fc/sparse.hpp"

namespace fc {

// Fault faces whose parent cells overlap share one dense bubble block.
struct BubbleGroup {
  std::vector<Index> faces;
  std::vector<Index> bdofs;  // global bubble dofs, 3 per bubble
  std::vector<Index> udofs;  // sorted nodal dofs of the parent cells
  MatX Kbb, Kbu;             // bulk stiffness parts
};

// eps_N = scale * mean(E) / mean(h) over the two parent cells, with
// h = volume^(1/3); eps_T = eps_N.
std::vector<PenaltyParams> default_penalty(const Mesh& mesh,
                                           const ProblemDefinition& p,
                                           double scale);

// Everything that does not change during a solve: bulk stiffness, bubble
// groups, jump operators, load shapes, sparsity.
class Discretization {
 public:
  Discretization(const ProblemDefinition& problem, double penalty_scale,
                 int threads = 1);

  const ProblemDefinition& problem() const { return *problem_; }
  const Mesh& mesh() const { return problem_->mesh; }
  bool enriched() const { return problem_->enriched; }
  Index nodal_dofs() const { return 3 * mesh().num_nodes(); }
  Index bubble_dofs() const { return enriched() ? 6 * mesh().num_fault_faces() : 0; }

  const CsrMatrix& K() const { return K_; }
  std::shared_ptr<const CsrPattern> pattern() const { return K_.pattern_ptr(); }
  const std::vector<BubbleGroup>& groups() const { return groups_; }
  Index group_of_face(Index f) const { return face_group_[f]; }
  // Position of a global bubble dof inside its group.
  Index bubble_local(Index bdof) const { return bdof_local_[bdof]; }
  Index node_local(Index group, Index udof) const;
  const FaceJumpOperator& jump(Index f) const { return jumps_[f]; }
  const std::vector<PenaltyParams>& penalties() const { return eps_; }

  // Residual load (bulk eigenstress minus external), excluding fault pressure.
  VecX load_u(const LoadStep& s) const;
  VecX load_b(const LoadStep& s) const;
  // Free-dof mask and prescribed values for a step.
  void dirichlet(const LoadStep& s, std::vector<char>& fixed,
                 VecX& values) const;
  // Reference length (mean fault-face parent size or mesh cell size).
  double h_ref() const { return h_ref_; }
  double e_ref() const { return e_ref_; }

 private:
  const ProblemDefinition* problem_;
  CsrMatrix K_;
  std::vector<BubbleGroup> groups_;
  std::vector<Index> face_group_, bdof_local_;
  std::vector<FaceJumpOperator> jumps_;
  std::vector<PenaltyParams> eps_;
  VecX f0_u_, f0_b_;
  std::map<int, VecX> fp_u_, fp_b_;  // per region, unit pore pressure
  std::map<std::string, VecX> neumann_weights_;
  double h_ref_ = 1.0, e_ref_ = 1.0;
};

struct SystemBlocks {
  VecX r_u, r_b;
  CsrMatrix A_uu;
  std::vector<MatX> A_bb, A_bu, A_ub;  // per group
  std::vector<LocalUpdate> faces;      // augmented traction per face
  std::vector<Vec3> jumps;             // local (g_N, dg_1, dg_2)
};

struct ContactInput {
  const std::vector<Vec3>* multipliers;  // local (t_N, t_1, t_2)
  const std::vector<Vec3>* jump_prev;    // global mean jump at step start
  const LoadStep* step;
  bool symmetric = false;
};

SystemBlocks assemble_global(const Discretization& d, const VecX& u,
                             const VecX& ub, const ContactInput& in,
                             bool with_jacobian = true);
// Bubble rows and columns only (r_b, A_bb, A_bu, A_ub); assemble_global
// fills the same blocks alongside the nodal ones.
SystemBlocks assemble_bubble_blocks(const Discretization& d, const VecX& u,
                                    const VecX& ub, const ContactInput& in);

struct CondensedSystem {
  CsrMatrix A_hat;
  VecX r_hat;
  std::vector<Eigen::PartialPivLU<MatX>> lu;  // per group A_bb
};

CondensedSystem static_condense(const Discretization& d,
                                const SystemBlocks& s);
// delta_ub = -A_bb^{-1} (r_b + A_bu delta_u)
VecX recover_bubble_increments(const Discretization& d, const SystemBlocks& s,
                               const CondensedSystem& c, const VecX& du);

// Rows and columns of the free dofs only.
struct ReducedMap {
  std::vector<Index> free;      // reduced -> full dof
  std::vector<Index> position;  // reduced entry -> full entry
  std::shared_ptr<const CsrPattern> pattern;
};
ReducedMap make_reduced_map(const CsrPattern& full,
                            const std::vector<char>& fixed);
CsrMatrix restrict_matrix(const CsrMatrix& full, const ReducedMap& m);

// Full [A_uu A_ub; A_bu A_bb] over free nodal dofs and all bubble dofs.
Eigen::SparseMatrix<double> full_block_matrix(const Discretization& d,
                                              const SystemBlocks& s,
                                              const std::vector<char>& fixed);

}  // namespace fc
