#pragma once

#include <memory>
#include <string>

#include "fc/sparse.hpp"

namespace fc {

enum class KrylovMethod { GMRES, CG, Direct };
std::string to_string(KrylovMethod m);
KrylovMethod krylov_method_from_string(const std::string& s);

struct KrylovConfig {
  KrylovMethod method = KrylovMethod::GMRES;
  double rel_tol = 1e-10;
  int max_iter = 2000;
  int restart = 50;
  // Systems below this size fall back to a sparse direct solve when the
  // Krylov iteration fails.
  Index direct_fallback_dofs = 50000;
};

struct LinearSolveResult {
  VecX x;
  int iterations = 0;
  double rel_residual = 0.0;
  bool direct = false;
};

// Symmetric Gauss-Seidel sweep pair: z = M^{-1} r.
void sgs_apply(const CsrMatrix& A, const VecX& diag, const VecX& r, VecX& z);

LinearSolveResult gmres_solve(const CsrMatrix& A, const VecX& b,
                              const KrylovConfig& cfg);
LinearSolveResult cg_solve(const CsrMatrix& A, const VecX& b,
                           const KrylovConfig& cfg);
LinearSolveResult direct_solve(const CsrMatrix& A, const VecX& b,
                               bool symmetric);

// Sparse direct solver that keeps the symbolic analysis while the pattern
// object is unchanged and the numeric factorization while the values are.
class DirectSolver {
 public:
  DirectSolver();
  ~DirectSolver();
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;

  LinearSolveResult solve(const CsrMatrix& A, const VecX& b, bool symmetric);
  int factorizations() const { return factorizations_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int factorizations_ = 0;
};

LinearSolveResult linear_solve(const CsrMatrix& A, const VecX& b,
                               const KrylovConfig& cfg, bool symmetric);
// Same, with the direct path going through `direct`.
LinearSolveResult linear_solve(const CsrMatrix& A, const VecX& b,
                               const KrylovConfig& cfg, bool symmetric,
                               DirectSolver& direct);

}  // namespace fc
