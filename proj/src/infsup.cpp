#include "fc/infsup.hpp"

#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "fc/contact.hpp"
#include "fc/elasticity.hpp"
#include "fc/io_util.hpp"
#include "fc/quadrature.hpp"

namespace fc {

double estimate_infsup(const Mesh& mesh, bool enriched) {
  const Index nf = mesh.num_fault_faces();
  if (nf == 0) throw Error("inf-sup estimate needs at least one fault face");
  const Index nn = mesh.num_nodes();
  const Index n = nn + (enriched ? 2 * nf : 0);

  // bubble faces of each cell, with their scalar dof
  std::vector<std::vector<std::pair<int, Index>>> cell_bubbles(mesh.cells.size());
  if (enriched) {
    for (Index f = 0; f < nf; ++f) {
      const FaultFace& ff = mesh.fault_faces[f];
      cell_bubbles[ff.minus.cell].push_back({ff.minus.local_face, nn + 2 * f});
      cell_bubbles[ff.plus.cell].push_back({ff.plus.local_face, nn + 2 * f + 1});
    }
  }

  const double d2 = 1.0 / (mesh.diameter() * mesh.diameter());
  std::vector<Eigen::Triplet<double>> trip;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Cell& cell = mesh.cells[c];
    std::vector<int> faces;
    std::vector<Index> dofs(cell.nodes.begin(), cell.nodes.end());
    for (const auto& [lf, dof] : cell_bubbles[c]) {
      faces.push_back(lf);
      dofs.push_back(dof);
    }
    MatX mass, lap;
    const QuadratureRule& rule =
        faces.empty() ? standard_quadrature(cell.kind) : bubble_quadrature(cell.kind);
    scalar_basis_matrices(cell.kind, mesh.cell_coords(c), faces, rule, mass, lap, c);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      for (std::size_t j = 0; j < dofs.size(); ++j) {
        trip.emplace_back(dofs[i], dofs[j], d2 * mass(i, j) + lap(i, j));
      }
    }
  }
  Eigen::SparseMatrix<double> K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());

  MatX Bt = MatX::Zero(n, nf);
  VecX scale(nf);
  for (Index f = 0; f < nf; ++f) {
    const FaultFace& ff = mesh.fault_faces[f];
    const FaceJumpOperator op = face_jump_operator(mesh, f, enriched);
    for (std::size_t k = 0; k < op.nodes.size(); ++k) {
      Bt(op.nodes[k], f) += ff.area * op.node_coef[k];
    }
    if (enriched) {
      Bt(nn + 2 * f, f) += ff.area * op.bubble_coef[0];
      Bt(nn + 2 * f + 1, f) += ff.area * op.bubble_coef[1];
    }
    const double h = std::sqrt(ff.area);
    scale(f) = 1.0 / std::sqrt(h * ff.area);
  }

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(K);
  if (llt.info() != Eigen::Success) throw SolverError("inf-sup norm matrix is not positive definite");
  const MatX X = llt.solve(Bt);
  MatX S = Bt.transpose() * X;
  S = scale.asDiagonal() * S * scale.asDiagonal();
  S = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<MatX> eig(S, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues()(0)));
}

Mesh two_block_mesh(int n) {
  if (n < 2 || n % 2) throw Error("two-block mesh needs an even division count");
  return build_structured_hex_grid(Vec3(1.0, 1.0, 1.0), {n, n, n},
                                   {PlaneSpec{0, 0.5, {}}});
}

std::vector<InfsupRow> infsup_study(int levels) {
  if (levels < 1) throw Error("infsup study needs at least one level");
  std::vector<InfsupRow> rows;
  for (int l = 0; l < levels; ++l) {
    InfsupRow r;
    r.n = 2 << l;
    r.h = 1.0 / r.n;
    const Mesh m = two_block_mesh(r.n);
    r.beta_enriched = estimate_infsup(m, true);
    r.beta_unenriched = estimate_infsup(m, false);
    rows.push_back(r);
  }
  return rows;
}

std::string infsup_csv(const std::vector<InfsupRow>& rows) {
  std::ostringstream os;
  os << "n,h,beta_enriched,beta_unenriched\n";
  for (const InfsupRow& r : rows) {
    os << r.n << ',' << fmt_e17(r.h) << ',' << fmt_e17(r.beta_enriched) << ','
       << fmt_e17(r.beta_unenriched) << '\n';
  }
  return os.str();
}

}  // namespace fc
