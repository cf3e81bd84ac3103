#include "primform/linalg.hpp"

#include <sstream>

#include "primform/errors.hpp"

namespace primform {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.c_ != b.r_) throw Error(ErrorCode::VariableMismatch, "exactalg", "matrix shape mismatch");
  QMatrix out(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const Rat& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(QMatrix& m, QMatrix* companion) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
      if (companion)
        for (std::size_t j = 0; j < companion->cols(); ++j) std::swap((*companion)(p, j), (*companion)(row, j));
    }
    Rat inv = m(row, col).inverse();
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    if (companion)
      for (std::size_t j = 0; j < companion->cols(); ++j) (*companion)(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Rat f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
      if (companion)
        for (std::size_t j = 0; j < companion->cols(); ++j)
          if (!(*companion)(row, j).is_zero()) (*companion)(i, j) -= f * (*companion)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

QMatrix transpose(const QMatrix& m) {
  QMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

}  // namespace

std::size_t QMatrix::rank() const {
  QMatrix m = *this;
  return echelon(m, nullptr).size();
}

QMatrix QMatrix::inverse() const {
  if (r_ != c_) throw Error(ErrorCode::VariableMismatch, "exactalg", "inverse of a non-square matrix");
  QMatrix m = *this;
  QMatrix inv = identity(r_);
  if (echelon(m, &inv).size() != r_) throw Error(ErrorCode::DivisionByZero, "exactalg", "singular matrix");
  return inv;
}

std::vector<std::vector<Rat>> QMatrix::left_nullspace() const {
  // x * A = 0  <=>  A^T x^T = 0
  QMatrix t = transpose(*this);
  auto pivots = echelon(t, nullptr);
  std::vector<bool> is_pivot(t.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < t.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(t.cols());
    v[free] = Rat(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -t(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> QMatrix::solve_left(const std::vector<Rat>& b) const {
  // Solve A^T x = b^T via the augmented system.
  QMatrix aug(c_, r_ + 1);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) aug(j, i) = (*this)(i, j);
  for (std::size_t j = 0; j < c_; ++j) aug(j, r_) = b[j];
  auto pivots = echelon(aug, nullptr);
  std::vector<Rat> x(r_);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] == r_) return std::nullopt;
    x[pivots[k]] = aug(k, r_);
  }
  return x;
}

std::string QMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < r_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]\n";
  }
  return os.str();
}

std::vector<Rat> row_times(const std::vector<Rat>& v, const QMatrix& m) {
  std::vector<Rat> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out[j] += v[i] * m(i, j);
  }
  return out;
}

}  // namespace primform
