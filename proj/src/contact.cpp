#include "fc/contact.hpp"

#include <cmath>
#include <numbers>

#include "fc/bubble.hpp"
#include "fc/quadrature.hpp"

namespace fc {

std::string to_string(ContactState s) {
  switch (s) {
    case ContactState::Stick: return "stick";
    case ContactState::Slip: return "slip";
    case ContactState::Open: return "open";
  }
  return "?";
}

void validate(const FrictionParams& f) {
  if (!(f.cohesion >= 0.0) || !(f.angle >= 0.0 && f.angle < 0.5 * std::numbers::pi)) {
    throw Error("invalid friction parameters");
  }
}

double negative_part(double x) { return std::min(x, 0.0); }

Vec2 ball_projection(const Vec2& t, double rho) {
  const double n = t.norm();
  if (n == 0.0) return Vec2::Zero();
  if (n <= rho) return t;
  return (rho / n) * t;
}

double tau_max(const FrictionParams& f, double t_n) {
  return f.cohesion - std::tan(f.angle) * t_n;
}

double update_normal(double t_n_old, double g_n, double eps_n) {
  return negative_part(t_n_old + eps_n * g_n);
}

Vec2 update_tangential(const Vec2& t_t_old, const Vec2& dg_t, double eps_t,
                       double t_n_for_limit, const FrictionParams& f) {
  return ball_projection(t_t_old + eps_t * dg_t, tau_max(f, t_n_for_limit));
}

ContactState classify_state(double t_n_old, double g_n, double eps_n,
                            const Vec2& t_trial, double tmax, double eps_t) {
  if (t_n_old + eps_n * g_n > 0.0) return ContactState::Open;
  const double s = t_trial.norm();
  if (s <= kZeroSlipFraction * eps_t || s <= tmax) return ContactState::Stick;
  return ContactState::Slip;
}

TangentBlocks tangent_derivatives(ContactState state, const Vec2& t_star,
                                  double tmax, const PenaltyParams& eps,
                                  const FrictionParams& f, bool symmetric) {
  TangentBlocks d;
  if (state == ContactState::Open) return d;
  d.dtn_dgn = eps.eps_n;
  if (state == ContactState::Stick) {
    d.dtt_ddgt = eps.eps_t * Mat2::Identity();
    return d;
  }
  const double s = t_star.norm();
  if (s == 0.0) throw SolverError("slip tangent requested at zero trial shear");
  d.dtt_ddgt = eps.eps_t * tmax *
               (s * s * Mat2::Identity() - t_star * t_star.transpose()) /
               (s * s * s);
  if (!symmetric) d.dtt_dgn = -eps.eps_n * std::tan(f.angle) * t_star / s;
  return d;
}

LocalUpdate augmented_update(const Vec3& t_old, const Vec3& jump,
                             const PenaltyParams& eps,
                             const FrictionParams& f, bool symmetric) {
  LocalUpdate out;
  const double trial_n = t_old(0) + eps.eps_n * jump(0);
  const double t_n = negative_part(trial_n);
  const Vec2 t_star = t_old.tail<2>() + eps.eps_t * jump.tail<2>();
  const double tmax = tau_max(f, symmetric ? t_old(0) : t_n);
  out.state = classify_state(t_old(0), jump(0), eps.eps_n, t_star, tmax,
                             eps.eps_t);
  if (out.state == ContactState::Open) return out;
  out.traction(0) = t_n;
  out.traction.tail<2>() =
      out.state == ContactState::Stick ? t_star : ball_projection(t_star, tmax);
  const TangentBlocks d =
      tangent_derivatives(out.state, t_star, tmax, eps, f, symmetric);
  out.tangent(0, 0) = d.dtn_dgn;
  out.tangent.block<2, 1>(1, 0) = d.dtt_dgn;
  out.tangent.block<2, 2>(1, 1) = d.dtt_ddgt;
  return out;
}

Mat3 frame_matrix(const FaceFrame& f) {
  Mat3 r;
  r.col(0) = f.n;
  r.col(1) = f.m1;
  r.col(2) = f.m2;
  return r;
}

namespace {

// Surface measure at a face reference point.
double surface_jacobian(FaceKind kind, const std::vector<Vec3>& x,
                        const Vec2& s) {
  const MatX g = face_shape_gradients(kind, s);
  Vec3 t1 = Vec3::Zero(), t2 = Vec3::Zero();
  for (std::size_t a = 0; a < x.size(); ++a) {
    t1 += g(a, 0) * x[a];
    t2 += g(a, 1) * x[a];
  }
  return t1.cross(t2).norm();
}

}  // namespace

double bubble_trace_integral(const Mesh& mesh, Index face, int side) {
  const FaultFace& f = mesh.fault_faces[face];
  const FaceSide& s = side == 0 ? f.minus : f.plus;
  const Cell& cell = mesh.cells[s.cell];
  const std::vector<Vec3> x = mesh.face_coords(f.minus.nodes);
  const FaceQuadratureRule& rule = face_bubble_quadrature(f.kind);
  double w = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const Vec3 xi =
        face_to_cell_reference(cell.kind, f.kind, s.local_vertices, rule.points[q]);
    w += rule.weights[q] * surface_jacobian(f.kind, x, rule.points[q]) *
         bubble_value(cell.kind, s.local_face, xi);
  }
  return w;
}

FaceJumpOperator face_jump_operator(const Mesh& mesh, Index face,
                                    bool enriched) {
  const FaultFace& f = mesh.fault_faces[face];
  const std::vector<Vec3> x = mesh.face_coords(f.minus.nodes);
  const FaceQuadratureRule& rule = face_quadrature(f.kind);
  const int n = num_nodes(f.kind);
  VecX w = VecX::Zero(n);
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    w += rule.weights[q] * surface_jacobian(f.kind, x, rule.points[q]) *
         face_shape_values(f.kind, rule.points[q]);
  }
  FaceJumpOperator op;
  auto add = [&](Index node, double c) {
    for (std::size_t k = 0; k < op.nodes.size(); ++k) {
      if (op.nodes[k] == node) {
        op.node_coef[k] += c;
        return;
      }
    }
    op.nodes.push_back(node);
    op.node_coef.push_back(c);
  };
  for (int a = 0; a < n; ++a) {
    add(f.minus.nodes[a], -w(a) / f.area);
    add(f.plus.nodes[a], w(a) / f.area);
  }
  // drop shared rim nodes whose contributions cancel
  for (std::size_t k = op.nodes.size(); k-- > 0;) {
    if (op.node_coef[k] == 0.0) {
      op.nodes.erase(op.nodes.begin() + k);
      op.node_coef.erase(op.node_coef.begin() + k);
    }
  }
  if (enriched) {
    op.bubble_coef = {-bubble_trace_integral(mesh, face, 0) / f.area,
                      bubble_trace_integral(mesh, face, 1) / f.area};
  }
  return op;
}

Vec3 mean_jump(const FaceJumpOperator& op, Index face, const VecX& u,
               const VecX& ub) {
  Vec3 j = Vec3::Zero();
  for (std::size_t k = 0; k < op.nodes.size(); ++k) {
    j += op.node_coef[k] * u.segment<3>(3 * op.nodes[k]);
  }
  if (ub.size() > 0) {
    for (int s = 0; s < 2; ++s) {
      j += op.bubble_coef[s] * ub.segment<3>(3 * (2 * face + s));
    }
  }
  return j;
}

FaceJumps face_average_jumps(const FaceJumpOperator& op, const FaceFrame& frame,
                             Index face, const VecX& u, const VecX& ub,
                             const VecX& u_prev, const VecX& ub_prev) {
  const Vec3 j = mean_jump(op, face, u, ub);
  const Vec3 dj = j - mean_jump(op, face, u_prev, ub_prev);
  FaceJumps out;
  out.g_n = frame.n.dot(j);
  out.dg_t = Vec2(frame.m1.dot(dj), frame.m2.dot(dj));
  return out;
}

Vec3 pointwise_jump(const Mesh& mesh, Index face, const Vec2& s,
                    const VecX& u) {
  const FaultFace& f = mesh.fault_faces[face];
  const VecX n = face_shape_values(f.kind, s);
  Vec3 j = Vec3::Zero();
  for (int a = 0; a < n.size(); ++a) {
    j += n(a) * (u.segment<3>(3 * f.plus.nodes[a]) -
                 u.segment<3>(3 * f.minus.nodes[a]));
  }
  return j;
}

}  // namespace fc
