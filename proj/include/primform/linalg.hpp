#ifndef PRIMFORM_LINALG_HPP
#define PRIMFORM_LINALG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "primform/rational.hpp"

namespace primform {

// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

  std::size_t rank() const;
  // Throws DivisionByZero when singular.
  QMatrix inverse() const;
  // Basis of {x : x * this = 0} as row vectors.
  std::vector<std::vector<Rat>> left_nullspace() const;
  // Some x with x * this = b, if one exists.
  std::optional<std::vector<Rat>> solve_left(const std::vector<Rat>& b) const;

  std::string str() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rat> a_;
};

std::vector<Rat> row_times(const std::vector<Rat>& v, const QMatrix& m);

}  // namespace primform

#endif  // PRIMFORM_LINALG_HPP
