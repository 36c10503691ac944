#pragma once

#include <array>
#include <string>
#include <vector>

#include "fc/mesh.hpp"

namespace fc {

enum class ContactState { Stick, Slip, Open };
std::string to_string(ContactState s);

struct FrictionParams {
  double cohesion = 0.0;  // Pa
  double angle = 0.0;     // radians
};
void validate(const FrictionParams& f);

struct PenaltyParams {
  double eps_n = 1.0;  // Pa/m
  double eps_t = 1.0;
};

double negative_part(double x);
Vec2 ball_projection(const Vec2& t, double rho);
double tau_max(const FrictionParams& f, double t_n);

double update_normal(double t_n_old, double g_n, double eps_n);
Vec2 update_tangential(const Vec2& t_t_old, const Vec2& dg_t, double eps_t,
                       double t_n_for_limit, const FrictionParams& f);

// Trial shear magnitudes at or below this fraction of eps_T count as stick.
inline constexpr double kZeroSlipFraction = 1e-14;

ContactState classify_state(double t_n_old, double g_n, double eps_n,
                            const Vec2& t_trial, double tau_max,
                            double eps_t);

// Derivatives in the face frame. t_star is the tangential trial traction.
struct TangentBlocks {
  double dtn_dgn = 0.0;
  Vec2 dtt_dgn = Vec2::Zero();
  Mat2 dtt_ddgt = Mat2::Zero();
};
TangentBlocks tangent_derivatives(ContactState state, const Vec2& t_star,
                                  double tau_max, const PenaltyParams& eps,
                                  const FrictionParams& f, bool symmetric);

// Full per-face return map: t_old = (t_N, t_1, t_2), jump = (g_N, dg_1,
// dg_2). The tangent is d t_new / d jump in the face frame.
struct LocalUpdate {
  Vec3 traction = Vec3::Zero();
  ContactState state = ContactState::Stick;
  Mat3 tangent = Mat3::Zero();
};
LocalUpdate augmented_update(const Vec3& t_old, const Vec3& jump,
                             const PenaltyParams& eps,
                             const FrictionParams& f, bool symmetric);

// Rotation with columns (n, m1, m2): global = R * local.
Mat3 frame_matrix(const FaceFrame& f);

// Face-averaged jump as a linear combination of nodal and bubble dofs:
// mean jump = sum_k node_coef[k] u(nodes[k]) + sum_s bubble_coef[s] ub(2f+s).
struct FaceJumpOperator {
  std::vector<Index> nodes;
  std::vector<double> node_coef;
  std::array<double, 2> bubble_coef = {0.0, 0.0};  // minus, plus
};

FaceJumpOperator face_jump_operator(const Mesh& mesh, Index face,
                                    bool enriched);

// Mean jump vector over the face (global components).
Vec3 mean_jump(const FaceJumpOperator& op, Index face, const VecX& u,
               const VecX& ub);

struct FaceJumps {
  double g_n = 0.0;
  Vec2 dg_t = Vec2::Zero();
};
FaceJumps face_average_jumps(const FaceJumpOperator& op, const FaceFrame& frame,
                             Index face, const VecX& u, const VecX& ub,
                             const VecX& u_prev, const VecX& ub_prev);

// Jump of the nodal field at face reference point s (no bubbles).
Vec3 pointwise_jump(const Mesh& mesh, Index face, const Vec2& s,
                    const VecX& u);

// Integral of the face bubble trace of one side over the physical face.
double bubble_trace_integral(const Mesh& mesh, Index face, int side);

}  // namespace fc
