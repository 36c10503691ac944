#pragma once

#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "fc/common.hpp"

namespace fc {

// Compressed-row sparsity pattern with sorted column indices.
struct CsrPattern {
  Index n = 0;
  std::vector<Index> row_ptr;
  std::vector<Index> col;

  Index nnz() const { return static_cast<Index>(col.size()); }
  // Position of (r, c) in col/val, or -1.
  Index find(Index r, Index c) const;
  bool contains(Index r, Index c) const { return find(r, c) >= 0; }
};

// Pattern coupling every pair of dofs within each clique.
CsrPattern pattern_from_cliques(Index n,
                                const std::vector<std::vector<Index>>& cliques);

class CsrMatrix {
 public:
  CsrMatrix() = default;
  explicit CsrMatrix(std::shared_ptr<const CsrPattern> pattern);

  Index rows() const { return pattern_ ? pattern_->n : 0; }
  const CsrPattern& pattern() const { return *pattern_; }
  std::shared_ptr<const CsrPattern> pattern_ptr() const { return pattern_; }
  std::vector<double>& values() { return val_; }
  const std::vector<double>& values() const { return val_; }

  void set_zero();
  // Throws if (r, c) is outside the pattern.
  void add(Index r, Index c, double v);
  double coeff(Index r, Index c) const;

  void multiply(const VecX& x, VecX& y) const;
  VecX operator*(const VecX& x) const;
  double max_abs() const;
  double asymmetry() const;  // max |A - A^T|

  Eigen::SparseMatrix<double> to_eigen() const;
  MatX to_dense() const;

 private:
  std::shared_ptr<const CsrPattern> pattern_;
  std::vector<double> val_;
};

}  // namespace fc
