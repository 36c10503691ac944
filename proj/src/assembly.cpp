#include "fc/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

namespace fc {

namespace {

double cell_size(const Mesh& m, Index c) {
  return std::cbrt(cell_volume(m.cells[c].kind, m.cell_coords(c)));
}

template <class Fn>
void parallel_for(Index n, int threads, Fn fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (threads == 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([=, &fn] {
      for (Index i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

Index find_union(std::vector<Index>& p, Index i) {
  while (p[i] != i) i = p[i] = p[p[i]];
  return i;
}

struct CellWork {
  MatX K;
  VecX f0;
  std::map<int, VecX> fp;
};

}  // namespace

std::vector<PenaltyParams> default_penalty(const Mesh& mesh,
                                           const ProblemDefinition& p,
                                           double scale) {
  std::vector<PenaltyParams> eps(mesh.fault_faces.size());
  for (std::size_t f = 0; f < eps.size(); ++f) {
    const FaultFace& face = mesh.fault_faces[f];
    const double e = 0.5 * (p.material(mesh.cells[face.minus.cell].region).elastic.E +
                            p.material(mesh.cells[face.plus.cell].region).elastic.E);
    const double h = 0.5 * (cell_size(mesh, face.minus.cell) +
                            cell_size(mesh, face.plus.cell));
    eps[f].eps_n = eps[f].eps_t = scale * e / h;
  }
  return eps;
}

Discretization::Discretization(const ProblemDefinition& p,
                               double penalty_scale, int threads)
    : problem_(&p) {
  const Mesh& m = p.mesh;
  const Index nf = m.num_fault_faces();
  const Index nc = m.num_cells();
  const bool enr = p.enriched;

  eps_ = p.penalty ? std::vector<PenaltyParams>(nf, *p.penalty)
                   : default_penalty(m, p, penalty_scale);
  jumps_.reserve(nf);
  for (Index f = 0; f < nf; ++f) jumps_.push_back(face_jump_operator(m, f, enr));

  // (local face, bubble id) per cell
  std::vector<std::vector<std::pair<int, Index>>> cell_bubbles(nc);
  std::vector<Index> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  if (enr) {
    std::vector<Index> first_face(nc, -1);
    for (Index f = 0; f < nf; ++f) {
      const FaultFace& face = m.fault_faces[f];
      const FaceSide* sides[2] = {&face.minus, &face.plus};
      for (int s = 0; s < 2; ++s) {
        const Index c = sides[s]->cell;
        cell_bubbles[c].push_back({sides[s]->local_face, 2 * f + s});
        if (first_face[c] < 0) {
          first_face[c] = f;
        } else {
          parent[find_union(parent, f)] = find_union(parent, first_face[c]);
        }
      }
    }
  }

  face_group_.assign(nf, -1);
  bdof_local_.assign(bubble_dofs(), -1);
  if (enr) {
    std::vector<Index> root_group(nf, -1);
    for (Index f = 0; f < nf; ++f) {
      const Index r = find_union(parent, f);
      if (root_group[r] < 0) {
        root_group[r] = static_cast<Index>(groups_.size());
        groups_.emplace_back();
      }
      face_group_[f] = root_group[r];
      groups_[root_group[r]].faces.push_back(f);
    }
    for (BubbleGroup& g : groups_) {
      std::set<Index> ud;
      for (Index f : g.faces) {
        for (int s = 0; s < 2; ++s) {
          for (int d = 0; d < 3; ++d) {
            bdof_local_[3 * (2 * f + s) + d] = static_cast<Index>(g.bdofs.size());
            g.bdofs.push_back(3 * (2 * f + s) + d);
          }
        }
        const FaultFace& face = m.fault_faces[f];
        for (Index c : {face.minus.cell, face.plus.cell}) {
          for (Index n : m.cells[c].nodes) {
            for (int d = 0; d < 3; ++d) ud.insert(3 * n + d);
          }
        }
      }
      g.udofs.assign(ud.begin(), ud.end());
      g.Kbb = MatX::Zero(g.bdofs.size(), g.bdofs.size());
      g.Kbu = MatX::Zero(g.bdofs.size(), g.udofs.size());
    }
  }

  std::vector<std::vector<Index>> cliques;
  cliques.reserve(nc + groups_.size() + nf);
  for (const Cell& c : m.cells) {
    std::vector<Index> dofs;
    for (Index n : c.nodes) {
      for (int d = 0; d < 3; ++d) dofs.push_back(3 * n + d);
    }
    cliques.push_back(std::move(dofs));
  }
  for (const BubbleGroup& g : groups_) cliques.push_back(g.udofs);
  for (const FaceJumpOperator& op : jumps_) {
    std::vector<Index> dofs;
    for (Index n : op.nodes) {
      for (int d = 0; d < 3; ++d) dofs.push_back(3 * n + d);
    }
    cliques.push_back(std::move(dofs));
  }
  K_ = CsrMatrix(std::make_shared<const CsrPattern>(
      pattern_from_cliques(nodal_dofs(), cliques)));

  std::set<int> pressured;
  for (const LoadStep& s : p.steps) {
    for (const auto& [r, v] : s.pressure) pressured.insert(r);
  }

  std::vector<CellWork> work(nc);
  parallel_for(nc, threads, [&](Index c) {
    const Cell& cell = m.cells[c];
    const MaterialProps& mat = p.material(cell.region);
    const Mat6 C = elasticity_tensor(mat.elastic);
    const MatX x = m.cell_coords(c);
    std::vector<int> bf;
    for (const auto& [lf, b] : cell_bubbles[c]) bf.push_back(lf);
    const QuadratureRule& rule =
        bf.empty() ? standard_quadrature(cell.kind) : bubble_quadrature(cell.kind);
    ElementMatrices em =
        element_kernel(cell.kind, x, C, p.initial_stress_for(cell.region), bf, rule, c);
    work[c].K = std::move(em.K);
    work[c].f0 = std::move(em.f);
    if (pressured.count(cell.region) && mat.biot != 0.0) {
      work[c].fp[cell.region] =
          element_kernel(cell.kind, x, Mat6::Zero(), -mat.biot * Mat3::Identity(),
                         bf, rule, c)
              .f;
    }
  });

  f0_u_ = VecX::Zero(nodal_dofs());
  f0_b_ = VecX::Zero(bubble_dofs());
  for (int r : pressured) {
    fp_u_[r] = VecX::Zero(nodal_dofs());
    fp_b_[r] = VecX::Zero(bubble_dofs());
  }
  for (Index c = 0; c < nc; ++c) {
    const Cell& cell = m.cells[c];
    const int nn = static_cast<int>(cell.nodes.size());
    const int nb = static_cast<int>(cell_bubbles[c].size());
    std::vector<Index> dof(3 * (nn + nb));
    for (int a = 0; a < nn; ++a) {
      for (int d = 0; d < 3; ++d) dof[3 * a + d] = 3 * cell.nodes[a] + d;
    }
    for (int k = 0; k < nb; ++k) {
      for (int d = 0; d < 3; ++d) {
        dof[3 * (nn + k) + d] = 3 * cell_bubbles[c][k].second + d;
      }
    }
    const int nu = 3 * nn;
    const MatX& Ke = work[c].K;
    for (int i = 0; i < nu; ++i) {
      for (int j = 0; j < nu; ++j) K_.add(dof[i], dof[j], Ke(i, j));
      f0_u_(dof[i]) += work[c].f0(i);
      for (auto& [r, fp] : work[c].fp) fp_u_[r](dof[i]) += fp(i);
    }
    if (nb > 0) {
      const Index g = face_group_[cell_bubbles[c][0].second / 2];
      BubbleGroup& grp = groups_[g];
      for (int i = nu; i < static_cast<int>(dof.size()); ++i) {
        const Index bi = bdof_local_[dof[i]];
        f0_b_(dof[i]) += work[c].f0(i);
        for (auto& [r, fp] : work[c].fp) fp_b_[r](dof[i]) += fp(i);
        for (int j = nu; j < static_cast<int>(dof.size()); ++j) {
          grp.Kbb(bi, bdof_local_[dof[j]]) += Ke(i, j);
        }
        for (int j = 0; j < nu; ++j) {
          grp.Kbu(bi, node_local(g, dof[j])) += Ke(i, j);
        }
      }
    }
    work[c] = CellWork{};
  }

  for (const LoadStep& s : p.steps) {
    for (const NeumannBC& nb : s.neumann) {
      if (neumann_weights_.count(nb.set)) continue;
      auto it = m.face_sets.find(nb.set);
      if (it == m.face_sets.end()) throw Error("undefined face set '" + nb.set + "'");
      VecX w = VecX::Zero(m.num_nodes());
      for (const BoundaryFace& bf : it->second) {
        const std::vector<Index> ids = boundary_face_nodes(m, bf);
        const FaceKind fk = local_face_kind(m.cells[bf.cell].kind, bf.local_face);
        const VecX wf = face_node_weights(fk, m.face_coords(ids));
        for (std::size_t a = 0; a < ids.size(); ++a) w(ids[a]) += wf(a);
      }
      neumann_weights_[nb.set] = std::move(w);
    }
  }

  double hs = 0.0, es = 0.0;
  for (Index c = 0; c < nc; ++c) {
    hs += cell_size(m, c);
    es += p.material(m.cells[c].region).elastic.E;
  }
  if (nc > 0) {
    h_ref_ = hs / nc;
    e_ref_ = es / nc;
  }
}

Index Discretization::node_local(Index group, Index udof) const {
  const std::vector<Index>& u = groups_[group].udofs;
  auto it = std::lower_bound(u.begin(), u.end(), udof);
  if (it == u.end() || *it != udof) {
    throw Error("dof " + std::to_string(udof) + " not in bubble group " +
                std::to_string(group));
  }
  return it - u.begin();
}

VecX Discretization::load_u(const LoadStep& s) const {
  VecX f = f0_u_;
  for (const auto& [r, p] : s.pressure) {
    auto it = fp_u_.find(r);
    if (it != fp_u_.end()) f += p * it->second;
  }
  for (const NeumannBC& nb : s.neumann) {
    const VecX& w = neumann_weights_.at(nb.set);
    for (Index a = 0; a < w.size(); ++a) {
      if (w(a) != 0.0) f.segment<3>(3 * a) -= w(a) * nb.traction;
    }
  }
  return f;
}

VecX Discretization::load_b(const LoadStep& s) const {
  VecX f = f0_b_;
  for (const auto& [r, p] : s.pressure) {
    auto it = fp_b_.find(r);
    if (it != fp_b_.end()) f += p * it->second;
  }
  return f;
}

void Discretization::dirichlet(const LoadStep& s, std::vector<char>& fixed,
                               VecX& values) const {
  fixed.assign(nodal_dofs(), 0);
  values = VecX::Zero(nodal_dofs());
  for (const DirichletBC& bc : s.dirichlet) {
    auto it = mesh().node_sets.find(bc.set);
    if (it == mesh().node_sets.end()) {
      throw Error("undefined node set '" + bc.set + "'");
    }
    for (Index n : it->second) {
      for (int d = 0; d < 3; ++d) {
        if (!bc.value[d]) continue;
        fixed[3 * n + d] = 1;
        values(3 * n + d) = *bc.value[d];
      }
    }
  }
}

namespace {

SystemBlocks assemble(const Discretization& d, const VecX& u, const VecX& ub,
                      const ContactInput& in, bool jac, bool nodal) {
  const Mesh& m = d.mesh();
  const ProblemDefinition& p = d.problem();
  const LoadStep& step = *in.step;
  SystemBlocks s;
  if (nodal) {
    s.r_u = d.K() * u + d.load_u(step);
    if (jac) s.A_uu = d.K();
  }
  s.r_b = d.load_b(step);
  const auto& groups = d.groups();
  const std::size_t ng = groups.size();
  if (jac) {
    s.A_bb.resize(ng);
    s.A_bu.resize(ng);
    s.A_ub.resize(ng);
  }
  for (std::size_t g = 0; g < ng; ++g) {
    const BubbleGroup& grp = groups[g];
    VecX ug(grp.udofs.size()), ubg(grp.bdofs.size());
    for (std::size_t i = 0; i < grp.udofs.size(); ++i) ug(i) = u(grp.udofs[i]);
    for (std::size_t i = 0; i < grp.bdofs.size(); ++i) ubg(i) = ub(grp.bdofs[i]);
    const VecX rb = grp.Kbb * ubg + grp.Kbu * ug;
    for (std::size_t i = 0; i < grp.bdofs.size(); ++i) s.r_b(grp.bdofs[i]) += rb(i);
    if (nodal) {
      const VecX ru = grp.Kbu.transpose() * ubg;
      for (std::size_t i = 0; i < grp.udofs.size(); ++i) s.r_u(grp.udofs[i]) += ru(i);
    }
    if (jac) {
      s.A_bb[g] = grp.Kbb;
      s.A_bu[g] = grp.Kbu;
      s.A_ub[g] = grp.Kbu.transpose();
    }
  }

  const Index nf = m.num_fault_faces();
  s.faces.resize(nf);
  s.jumps.resize(nf);
  struct Entry {
    bool bubble;
    Index id;  // node or bubble id
    double c;
  };
  std::vector<Entry> entries;
  for (Index f = 0; f < nf; ++f) {
    const FaultFace& face = m.fault_faces[f];
    const FaceJumpOperator& op = d.jump(f);
    const Mat3 R = frame_matrix(face.frame);
    const Vec3 J = mean_jump(op, f, u, ub);
    const Vec3 dJ = J - (*in.jump_prev)[f];
    const Vec3 jl(face.frame.n.dot(J), face.frame.m1.dot(dJ), face.frame.m2.dot(dJ));
    s.jumps[f] = jl;
    s.faces[f] = augmented_update((*in.multipliers)[f], jl, d.penalties()[f],
                                  p.friction_for(face.tag), in.symmetric);
    double pf = 0.0;
    if (auto it = step.fault_pressure.find(face.tag); it != step.fault_pressure.end()) {
      pf = it->second;
    }
    const Vec3 F = face.area * (R * s.faces[f].traction - pf * face.frame.n);

    entries.clear();
    for (std::size_t k = 0; k < op.nodes.size(); ++k) {
      entries.push_back({false, op.nodes[k], op.node_coef[k]});
    }
    if (d.enriched()) {
      for (int b = 0; b < 2; ++b) {
        if (op.bubble_coef[b] != 0.0) entries.push_back({true, 2 * f + b, op.bubble_coef[b]});
      }
    }
    for (const Entry& e : entries) {
      if (e.bubble) {
        s.r_b.segment<3>(3 * e.id) += e.c * F;
      } else if (nodal) {
        s.r_u.segment<3>(3 * e.id) += e.c * F;
      }
    }
    if (!jac || s.faces[f].state == ContactState::Open) continue;
    const Mat3 D = face.area * R * s.faces[f].tangent * R.transpose();
    const Index g = d.enriched() ? d.group_of_face(f) : -1;
    for (const Entry& ei : entries) {
      for (const Entry& ej : entries) {
        const Mat3 blk = ei.c * ej.c * D;
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) {
            const Index ri = 3 * ei.id + a, cj = 3 * ej.id + b;
            if (!ei.bubble && !ej.bubble) {
              if (nodal) s.A_uu.add(ri, cj, blk(a, b));
            } else if (ei.bubble && ej.bubble) {
              s.A_bb[g](d.bubble_local(ri), d.bubble_local(cj)) += blk(a, b);
            } else if (ei.bubble) {
              s.A_bu[g](d.bubble_local(ri), d.node_local(g, cj)) += blk(a, b);
            } else {
              s.A_ub[g](d.node_local(g, ri), d.bubble_local(cj)) += blk(a, b);
            }
          }
        }
      }
    }
  }
  return s;
}

}  // namespace

SystemBlocks assemble_global(const Discretization& d, const VecX& u,
                             const VecX& ub, const ContactInput& in,
                             bool with_jacobian) {
  return assemble(d, u, ub, in, with_jacobian, true);
}

SystemBlocks assemble_bubble_blocks(const Discretization& d, const VecX& u,
                                    const VecX& ub, const ContactInput& in) {
  return assemble(d, u, ub, in, true, false);
}

CondensedSystem static_condense(const Discretization& d,
                                const SystemBlocks& s) {
  CondensedSystem c;
  c.A_hat = s.A_uu;
  c.r_hat = s.r_u;
  const auto& groups = d.groups();
  c.lu.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const BubbleGroup& grp = groups[g];
    c.lu.emplace_back(s.A_bb[g]);
    const auto& lu = c.lu.back();
    if (!(lu.rcond() > 1e-13)) {
      throw SolverError("singular bubble block at fault face " +
                        std::to_string(grp.faces.front()));
    }
    VecX rb(grp.bdofs.size());
    for (std::size_t i = 0; i < grp.bdofs.size(); ++i) rb(i) = s.r_b(grp.bdofs[i]);
    const MatX S = s.A_ub[g] * lu.solve(s.A_bu[g]);
    const VecX y = s.A_ub[g] * lu.solve(rb);
    for (std::size_t i = 0; i < grp.udofs.size(); ++i) {
      c.r_hat(grp.udofs[i]) -= y(i);
      for (std::size_t j = 0; j < grp.udofs.size(); ++j) {
        if (S(i, j) != 0.0) c.A_hat.add(grp.udofs[i], grp.udofs[j], -S(i, j));
      }
    }
  }
  return c;
}

VecX recover_bubble_increments(const Discretization& d, const SystemBlocks& s,
                               const CondensedSystem& c, const VecX& du) {
  VecX dub = VecX::Zero(d.bubble_dofs());
  const auto& groups = d.groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const BubbleGroup& grp = groups[g];
    VecX rhs(grp.bdofs.size()), ug(grp.udofs.size());
    for (std::size_t i = 0; i < grp.bdofs.size(); ++i) rhs(i) = s.r_b(grp.bdofs[i]);
    for (std::size_t i = 0; i < grp.udofs.size(); ++i) ug(i) = du(grp.udofs[i]);
    rhs += s.A_bu[g] * ug;
    const VecX x = -c.lu[g].solve(rhs);
    for (std::size_t i = 0; i < grp.bdofs.size(); ++i) dub(grp.bdofs[i]) = x(i);
  }
  return dub;
}

ReducedMap make_reduced_map(const CsrPattern& full,
                            const std::vector<char>& fixed) {
  ReducedMap m;
  std::vector<Index> to_reduced(full.n, -1);
  for (Index i = 0; i < full.n; ++i) {
    if (!fixed[i]) {
      to_reduced[i] = static_cast<Index>(m.free.size());
      m.free.push_back(i);
    }
  }
  auto p = std::make_shared<CsrPattern>();
  p->n = static_cast<Index>(m.free.size());
  p->row_ptr.reserve(p->n + 1);
  p->row_ptr.push_back(0);
  for (Index r : m.free) {
    for (Index k = full.row_ptr[r]; k < full.row_ptr[r + 1]; ++k) {
      const Index c = to_reduced[full.col[k]];
      if (c < 0) continue;
      p->col.push_back(c);
      m.position.push_back(k);
    }
    p->row_ptr.push_back(static_cast<Index>(p->col.size()));
  }
  m.pattern = p;
  return m;
}

CsrMatrix restrict_matrix(const CsrMatrix& full, const ReducedMap& m) {
  CsrMatrix r(m.pattern);
  auto& v = r.values();
  const auto& fv = full.values();
  for (std::size_t k = 0; k < m.position.size(); ++k) v[k] = fv[m.position[k]];
  return r;
}

Eigen::SparseMatrix<double> full_block_matrix(const Discretization& d,
                                              const SystemBlocks& s,
                                              const std::vector<char>& fixed) {
  const Index nu = d.nodal_dofs();
  std::vector<Index> to_reduced(nu, -1);
  Index nfree = 0;
  for (Index i = 0; i < nu; ++i) {
    if (!fixed[i]) to_reduced[i] = nfree++;
  }
  std::vector<Eigen::Triplet<double>> trip;
  const CsrPattern& p = s.A_uu.pattern();
  for (Index r = 0; r < nu; ++r) {
    if (to_reduced[r] < 0) continue;
    for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) {
      const Index c = to_reduced[p.col[k]];
      if (c >= 0) trip.emplace_back(to_reduced[r], c, s.A_uu.values()[k]);
    }
  }
  const auto& groups = d.groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const BubbleGroup& grp = groups[g];
    for (std::size_t i = 0; i < grp.bdofs.size(); ++i) {
      const Index bi = nfree + grp.bdofs[i];
      for (std::size_t j = 0; j < grp.bdofs.size(); ++j) {
        trip.emplace_back(bi, nfree + grp.bdofs[j], s.A_bb[g](i, j));
      }
      for (std::size_t j = 0; j < grp.udofs.size(); ++j) {
        const Index c = to_reduced[grp.udofs[j]];
        if (c < 0) continue;
        trip.emplace_back(bi, c, s.A_bu[g](i, j));
        trip.emplace_back(c, bi, s.A_ub[g](j, i));
      }
    }
  }
  Eigen::SparseMatrix<double> A(nfree + d.bubble_dofs(), nfree + d.bubble_dofs());
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

}  // namespace fc
