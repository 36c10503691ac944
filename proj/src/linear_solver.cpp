#include "fc/linear_solver.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

namespace fc {

std::string to_string(KrylovMethod m) {
  switch (m) {
    case KrylovMethod::GMRES: return "gmres";
    case KrylovMethod::CG: return "cg";
    case KrylovMethod::Direct: return "direct";
  }
  return "?";
}

KrylovMethod krylov_method_from_string(const std::string& s) {
  if (s == "gmres" || s == "GMRES") return KrylovMethod::GMRES;
  if (s == "cg" || s == "CG") return KrylovMethod::CG;
  if (s == "direct") return KrylovMethod::Direct;
  throw Error("unknown linear solver '" + s + "'");
}

namespace {

VecX diagonal(const CsrMatrix& A) {
  VecX d(A.rows());
  for (Index r = 0; r < A.rows(); ++r) {
    d(r) = A.coeff(r, r);
    if (d(r) == 0.0) {
      throw SolverError("zero diagonal in row " + std::to_string(r) +
                        "; Gauss-Seidel preconditioner undefined");
    }
  }
  return d;
}

}  // namespace

void sgs_apply(const CsrMatrix& A, const VecX& diag, const VecX& r, VecX& z) {
  const CsrPattern& p = A.pattern();
  const auto& v = A.values();
  const Index n = p.n;
  z.resize(n);
  // (D + L) y = r
  for (Index i = 0; i < n; ++i) {
    double s = r(i);
    for (Index k = p.row_ptr[i]; k < p.row_ptr[i + 1] && p.col[k] < i; ++k) {
      s -= v[k] * z(p.col[k]);
    }
    z(i) = s / diag(i);
  }
  // (D + U) z = D y
  for (Index i = n - 1; i >= 0; --i) {
    double s = 0.0;
    for (Index k = p.row_ptr[i + 1] - 1; k >= p.row_ptr[i] && p.col[k] > i; --k) {
      s += v[k] * z(p.col[k]);
    }
    z(i) -= s / diag(i);
  }
}

LinearSolveResult gmres_solve(const CsrMatrix& A, const VecX& b,
                              const KrylovConfig& cfg) {
  LinearSolveResult res;
  const Index n = A.rows();
  res.x = VecX::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return res;
  const VecX d = diagonal(A);
  const int m = std::max(1, cfg.restart);
  MatX V(n, m + 1);
  MatX Z(n, m);
  MatX H = MatX::Zero(m + 1, m);
  VecX cs(m), sn(m), g(m + 1);
  VecX w, z;
  VecX r = b;
  double beta = bnorm;
  while (res.iterations < cfg.max_iter) {
    V.col(0) = r / beta;
    g.setZero();
    g(0) = beta;
    H.setZero();
    int j = 0;
    for (; j < m && res.iterations < cfg.max_iter; ++j) {
      ++res.iterations;
      sgs_apply(A, d, V.col(j), z);
      Z.col(j) = z;
      A.multiply(z, w);
      for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
        H(i, j) = w.dot(V.col(i));
        w -= H(i, j) * V.col(i);
      }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) > 0.0) V.col(j + 1) = w / H(j + 1, j);
      for (int i = 0; i < j; ++i) {
        const double t = cs(i) * H(i, j) + sn(i) * H(i + 1, j);
        H(i + 1, j) = -sn(i) * H(i, j) + cs(i) * H(i + 1, j);
        H(i, j) = t;
      }
      const double den = std::hypot(H(j, j), H(j + 1, j));
      if (den == 0.0) throw SolverError("GMRES breakdown");
      cs(j) = H(j, j) / den;
      sn(j) = H(j + 1, j) / den;
      H(j, j) = den;
      H(j + 1, j) = 0.0;
      g(j + 1) = -sn(j) * g(j);
      g(j) = cs(j) * g(j);
      if (std::abs(g(j + 1)) <= cfg.rel_tol * bnorm) {
        ++j;
        break;
      }
    }
    const VecX y = H.topLeftCorner(j, j)
                       .triangularView<Eigen::Upper>()
                       .solve(g.head(j));
    res.x += Z.leftCols(j) * y;
    r = b - A * res.x;
    beta = r.norm();
    res.rel_residual = beta / bnorm;
    if (res.rel_residual <= cfg.rel_tol) return res;
  }
  std::ostringstream os;
  os << "GMRES did not converge in " << res.iterations
     << " iterations (relative residual " << res.rel_residual << ")";
  throw NonConvergence(os.str(), res.rel_residual);
}

LinearSolveResult cg_solve(const CsrMatrix& A, const VecX& b,
                           const KrylovConfig& cfg) {
  LinearSolveResult res;
  const Index n = A.rows();
  res.x = VecX::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return res;
  const VecX d = diagonal(A);
  VecX r = b, z, q;
  sgs_apply(A, d, r, z);
  VecX p = z;
  double rz = r.dot(z);
  while (res.iterations < cfg.max_iter) {
    ++res.iterations;
    A.multiply(p, q);
    const double pq = p.dot(q);
    if (!(pq > 0.0)) throw SolverError("CG breakdown: matrix not positive definite");
    const double alpha = rz / pq;
    res.x += alpha * p;
    r -= alpha * q;
    res.rel_residual = r.norm() / bnorm;
    if (res.rel_residual <= cfg.rel_tol) return res;
    sgs_apply(A, d, r, z);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  std::ostringstream os;
  os << "CG did not converge in " << res.iterations
     << " iterations (relative residual " << res.rel_residual << ")";
  throw NonConvergence(os.str(), res.rel_residual);
}

namespace {

constexpr const char* kSingularHint =
    "singular system: check Dirichlet data for unconstrained rigid-body "
    "modes (e.g. a block detached by open fault faces)";

void check_solution(const CsrMatrix& A, const VecX& b, LinearSolveResult& res) {
  const double bnorm = b.norm();
  res.rel_residual = bnorm > 0.0 ? (b - A * res.x).norm() / bnorm : 0.0;
  if (!res.x.allFinite() || res.rel_residual > 1e-6) throw SolverError(kSingularHint);
}

}  // namespace

struct DirectSolver::Impl {
  std::shared_ptr<const CsrPattern> pattern;
  bool symmetric = false;
  bool factored = false;
  std::vector<double> values;
  Eigen::SparseMatrix<double> m;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

DirectSolver::DirectSolver() : impl_(std::make_unique<Impl>()) {}
DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;

LinearSolveResult DirectSolver::solve(const CsrMatrix& A, const VecX& b,
                                      bool symmetric) {
  Impl& c = *impl_;
  const bool same_pattern = c.pattern == A.pattern_ptr() && c.symmetric == symmetric;
  if (!same_pattern || !c.factored || c.values != A.values()) {
    c.factored = false;
    c.m = A.to_eigen();
    if (symmetric) {
      if (!same_pattern) c.ldlt.analyzePattern(c.m);
      c.ldlt.factorize(c.m);
      if (c.ldlt.info() != Eigen::Success) throw SolverError(kSingularHint);
    } else {
      if (!same_pattern) c.lu.analyzePattern(c.m);
      c.lu.factorize(c.m);
      if (c.lu.info() != Eigen::Success) throw SolverError(kSingularHint);
    }
    c.pattern = A.pattern_ptr();
    c.symmetric = symmetric;
    c.values = A.values();
    c.factored = true;
    ++factorizations_;
  }
  LinearSolveResult res;
  res.direct = true;
  res.x = symmetric ? VecX(c.ldlt.solve(b)) : VecX(c.lu.solve(b));
  check_solution(A, b, res);
  return res;
}

LinearSolveResult direct_solve(const CsrMatrix& A, const VecX& b,
                               bool symmetric) {
  DirectSolver d;
  return d.solve(A, b, symmetric);
}

LinearSolveResult linear_solve(const CsrMatrix& A, const VecX& b,
                               const KrylovConfig& cfg, bool symmetric,
                               DirectSolver& direct) {
  if (cfg.method == KrylovMethod::CG && !symmetric) {
    throw Error("CG requires the symmetric variant");
  }
  if (cfg.method == KrylovMethod::Direct) return direct.solve(A, b, symmetric);
  try {
    return cfg.method == KrylovMethod::CG ? cg_solve(A, b, cfg)
                                          : gmres_solve(A, b, cfg);
  } catch (const SolverError& e) {
    if (A.rows() >= cfg.direct_fallback_dofs) throw;
    LinearSolveResult res = direct.solve(A, b, symmetric);
    res.iterations = cfg.max_iter;
    return res;
  }
}

LinearSolveResult linear_solve(const CsrMatrix& A, const VecX& b,
                               const KrylovConfig& cfg, bool symmetric) {
  DirectSolver d;
  return linear_solve(A, b, cfg, symmetric, d);
}

}  // namespace fc
