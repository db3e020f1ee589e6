#ifndef QSPAIR_LINALG_HPP
#define QSPAIR_LINALG_HPP

#include <vector>

#include "qspair/scalar.hpp"

namespace qspair {

// Dense matrix over the exact scalar field. Sizes stay small (module
// dimensions), entries are mostly zero and ops skip zero entries.
class ScalarMat {
 public:
  ScalarMat() = default;
  ScalarMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static ScalarMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool is_zero() const;
  bool operator==(const ScalarMat& b) const;

  ScalarMat operator+(const ScalarMat& b) const;
  ScalarMat operator-(const ScalarMat& b) const;
  ScalarMat operator*(const ScalarMat& b) const;
  ScalarMat scaled(const Scalar& f) const;
  ScalarMat transposed() const;

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;       // M v
  std::vector<Scalar> apply_left(const std::vector<Scalar>& v) const;  // v^T M

  // first nonzero entry in row-major order, if any
  bool first_nonzero(int& i, int& j) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

// Right null space { x : M x = 0 }; basis vectors of length cols().
std::vector<std::vector<Scalar>> kernel_basis(const ScalarMat& m);
// Left null space { x : x^T M = 0 }.
std::vector<std::vector<Scalar>> left_kernel_basis(const ScalarMat& m);
int rank_of(const ScalarMat& m);

// Solves A x = b for square nonsingular A (small systems only).
std::vector<Scalar> solve_square(const ScalarMat& a, const std::vector<Scalar>& b);

}  // namespace qspair

#endif
