#include "fc/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace fc {

Index CsrPattern::find(Index r, Index c) const {
  const auto b = col.begin() + row_ptr[r];
  const auto e = col.begin() + row_ptr[r + 1];
  const auto it = std::lower_bound(b, e, c);
  return it != e && *it == c ? static_cast<Index>(it - col.begin()) : -1;
}

CsrPattern pattern_from_cliques(
    Index n, const std::vector<std::vector<Index>>& cliques) {
  std::vector<std::vector<Index>> rows(n);
  for (const auto& c : cliques) {
    for (Index r : c) {
      rows[r].insert(rows[r].end(), c.begin(), c.end());
    }
  }
  CsrPattern p;
  p.n = n;
  p.row_ptr.assign(n + 1, 0);
  for (Index r = 0; r < n; ++r) {
    auto& v = rows[r];
    v.push_back(r);  // diagonal always present
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    p.row_ptr[r + 1] = p.row_ptr[r] + static_cast<Index>(v.size());
  }
  p.col.reserve(p.row_ptr[n]);
  for (auto& v : rows) {
    p.col.insert(p.col.end(), v.begin(), v.end());
    std::vector<Index>().swap(v);
  }
  return p;
}

CsrMatrix::CsrMatrix(std::shared_ptr<const CsrPattern> pattern)
    : pattern_(std::move(pattern)), val_(pattern_->col.size(), 0.0) {}

void CsrMatrix::set_zero() { std::fill(val_.begin(), val_.end(), 0.0); }

void CsrMatrix::add(Index r, Index c, double v) {
  const Index k = pattern_->find(r, c);
  if (k < 0) {
    throw Error("entry (" + std::to_string(r) + ", " + std::to_string(c) +
                ") outside sparsity pattern");
  }
  val_[k] += v;
}

double CsrMatrix::coeff(Index r, Index c) const {
  const Index k = pattern_->find(r, c);
  return k < 0 ? 0.0 : val_[k];
}

void CsrMatrix::multiply(const VecX& x, VecX& y) const {
  const CsrPattern& p = *pattern_;
  y.resize(p.n);
  for (Index r = 0; r < p.n; ++r) {
    double s = 0.0;
    for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) {
      s += val_[k] * x(p.col[k]);
    }
    y(r) = s;
  }
}

VecX CsrMatrix::operator*(const VecX& x) const {
  VecX y;
  multiply(x, y);
  return y;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : val_) m = std::max(m, std::abs(v));
  return m;
}

double CsrMatrix::asymmetry() const {
  const CsrPattern& p = *pattern_;
  double m = 0.0;
  for (Index r = 0; r < p.n; ++r) {
    for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) {
      m = std::max(m, std::abs(val_[k] - coeff(p.col[k], r)));
    }
  }
  return m;
}

Eigen::SparseMatrix<double> CsrMatrix::to_eigen() const {
  const CsrPattern& p = *pattern_;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(val_.size());
  for (Index r = 0; r < p.n; ++r) {
    for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) {
      trips.emplace_back(static_cast<int>(r), static_cast<int>(p.col[k]),
                         val_[k]);
    }
  }
  Eigen::SparseMatrix<double> a(p.n, p.n);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

MatX CsrMatrix::to_dense() const {
  const CsrPattern& p = *pattern_;
  MatX a = MatX::Zero(p.n, p.n);
  for (Index r = 0; r < p.n; ++r) {
    for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) {
      a(r, p.col[k]) = val_[k];
    }
  }
  return a;
}

}  // namespace fc
