#include "qspair/linalg.hpp"

#include <algorithm>

namespace qspair {

ScalarMat ScalarMat::identity(int n) {
  ScalarMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

bool ScalarMat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool ScalarMat::operator==(const ScalarMat& b) const {
  return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_;
}

ScalarMat ScalarMat::operator+(const ScalarMat& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw DomainError("matrix shape mismatch");
  ScalarMat out(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] + b.a_[k];
  return out;
}

ScalarMat ScalarMat::operator-(const ScalarMat& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw DomainError("matrix shape mismatch");
  ScalarMat out(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] - b.a_[k];
  return out;
}

ScalarMat ScalarMat::operator*(const ScalarMat& b) const {
  if (cols_ != b.rows_) throw DomainError("matrix shape mismatch in product");
  ScalarMat out(rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& f = at(i, k);
      if (f.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Scalar& g = b.at(k, j);
        if (g.is_zero()) continue;
        out.at(i, j) += f * g;
      }
    }
  return out;
}

ScalarMat ScalarMat::scaled(const Scalar& f) const {
  ScalarMat out(rows_, cols_);
  if (f.is_zero()) return out;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!a_[k].is_zero()) out.a_[k] = a_[k] * f;
  return out;
}

ScalarMat ScalarMat::transposed() const {
  ScalarMat out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

std::vector<Scalar> ScalarMat::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw DomainError("vector length mismatch");
  std::vector<Scalar> out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Scalar& f = at(i, j);
      if (!f.is_zero() && !v[j].is_zero()) out[i] += f * v[j];
    }
  return out;
}

std::vector<Scalar> ScalarMat::apply_left(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != rows_) throw DomainError("vector length mismatch");
  std::vector<Scalar> out(cols_);
  for (int i = 0; i < rows_; ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < cols_; ++j) {
      const Scalar& f = at(i, j);
      if (!f.is_zero()) out[j] += v[i] * f;
    }
  }
  return out;
}

bool ScalarMat::first_nonzero(int& i, int& j) const {
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (!at(r, c).is_zero()) {
        i = r;
        j = c;
        return true;
      }
  return false;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination. Rows are first scaled to clear denominators,
// then reduced Bareiss-style; back substitution runs in the fraction field.
// ---------------------------------------------------------------------------

namespace {

struct Echelon {
  std::vector<std::vector<Scalar>> rows;  // echelon rows, pivot cols ascending
  std::vector<int> pivot_col;
};

std::size_t weight_of(const Scalar& s) {
  // parameter-carrying pivots make the symbol degrees grow during
  // elimination, so they are heavily disfavored
  std::size_t w = s.num().terms().size() + s.den().terms().size();
  if (s.depends_on_parameters()) w += 1u << 20;
  return w;
}

std::vector<Scalar> cleared_row(const std::vector<Scalar>& row) {
  // multiply by the lcm of denominators, then strip the shared numerator gcd
  Poly lcm = Poly::constant(1);
  for (const auto& x : row) {
    if (x.is_zero() || x.den().is_one()) continue;
    Poly g = Poly::gcd(lcm, x.den());
    lcm = lcm * x.den().divexact(g);
  }
  std::vector<Scalar> out(row.size());
  Poly content;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k].is_zero()) continue;
    Poly scaled = row[k].num() * lcm.divexact(row[k].den());
    if (!content.is_one()) content = Poly::gcd(content, scaled);
    out[k] = Scalar::from_fraction(std::move(scaled), Poly::constant(1));
  }
  if (!content.is_zero() && !content.is_one()) {
    for (auto& x : out)
      if (!x.is_zero()) x = Scalar::from_fraction(x.num().divexact(content), Poly::constant(1));
  }
  return out;
}

Echelon echelonize(const ScalarMat& m) {
  const int n = m.cols();
  std::vector<std::vector<Scalar>> work;
  work.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<Scalar> row(n);
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      row[j] = m.at(i, j);
      nonzero = nonzero || !row[j].is_zero();
    }
    if (!nonzero) continue;
    auto cleared = cleared_row(row);
    if (std::find(work.begin(), work.end(), cleared) == work.end()) work.push_back(std::move(cleared));
  }

  Echelon ech;
  std::vector<char> col_used(n, 0);
  while (!work.empty()) {
    // pick the sparsest remaining row, then its lightest usable entry
    std::size_t best_row = 0, best_score = ~std::size_t(0);
    for (std::size_t r = 0; r < work.size(); ++r) {
      std::size_t score = 0;
      bool any = false;
      for (int j = 0; j < n; ++j)
        if (!work[r][j].is_zero()) {
          score += weight_of(work[r][j]);
          any = true;
        }
      if (!any) continue;
      if (score < best_score) {
        best_score = score;
        best_row = r;
      }
    }
    if (best_score == ~std::size_t(0)) break;
    std::vector<Scalar> row = std::move(work[best_row]);
    work.erase(work.begin() + best_row);
    int pc = -1;
    std::size_t best_w = ~std::size_t(0);
    for (int j = 0; j < n; ++j) {
      if (row[j].is_zero() || col_used[j]) continue;
      std::size_t w = weight_of(row[j]);
      if (w < best_w) {
        best_w = w;
        pc = j;
      }
    }
    if (pc < 0) throw StructuralViolation("row survived reduction against a full pivot set");
    col_used[pc] = 1;
    const Scalar& piv = row[pc];
    for (auto& other : work) {
      if (other[pc].is_zero()) continue;
      Scalar f = other[pc] / piv;
      bool any = false;
      for (int j = 0; j < n; ++j) {
        if (row[j].is_zero()) continue;
        other[j] -= f * row[j];
        if (!other[j].is_zero()) any = true;
      }
      other[pc] = Scalar();
      for (int j = 0; !any && j < n; ++j) any = !other[j].is_zero();
      if (any) other = cleared_row(other);
    }
    // drop rows that became zero
    std::vector<std::vector<Scalar>> keep;
    keep.reserve(work.size());
    for (auto& r : work) {
      bool any = false;
      for (int j = 0; j < n && !any; ++j) any = !r[j].is_zero();
      if (any) keep.push_back(std::move(r));
    }
    work = std::move(keep);
    ech.rows.push_back(std::move(row));
    ech.pivot_col.push_back(pc);
  }
  return ech;
}

}  // namespace

namespace {

std::vector<std::vector<Scalar>> kernel_basis_direct(const ScalarMat& m);

// Parameter-free rows are eliminated first over the plain v-field; the
// parameter-carrying rows are then restricted to that kernel, which keeps
// symbol degrees from compounding during elimination.
std::vector<std::vector<Scalar>> kernel_basis_two_stage(const ScalarMat& m) {
  const int n = m.cols();
  std::vector<int> plain_rows, param_rows;
  for (int i = 0; i < m.rows(); ++i) {
    bool param = false, nonzero = false;
    for (int j = 0; j < n; ++j) {
      const Scalar& x = m.at(i, j);
      if (x.is_zero()) continue;
      nonzero = true;
      param = param || x.depends_on_parameters();
    }
    if (!nonzero) continue;
    (param ? param_rows : plain_rows).push_back(i);
  }
  if (plain_rows.empty() || param_rows.empty()) return kernel_basis_direct(m);

  ScalarMat plain(static_cast<int>(plain_rows.size()), n);
  for (std::size_t r = 0; r < plain_rows.size(); ++r)
    for (int j = 0; j < n; ++j) plain.at(static_cast<int>(r), j) = m.at(plain_rows[r], j);
  auto k1 = kernel_basis_direct(plain);
  if (k1.empty()) return {};

  const int k = static_cast<int>(k1.size());
  ScalarMat reduced(static_cast<int>(param_rows.size()), k);
  for (std::size_t r = 0; r < param_rows.size(); ++r)
    for (int c = 0; c < k; ++c) {
      Scalar acc;
      for (int j = 0; j < n; ++j) {
        const Scalar& a = m.at(param_rows[r], j);
        if (!a.is_zero() && !k1[c][j].is_zero()) acc += a * k1[c][j];
      }
      reduced.at(static_cast<int>(r), c) = std::move(acc);
    }
  auto k2 = kernel_basis_direct(reduced);
  std::vector<std::vector<Scalar>> out;
  for (const auto& z : k2) {
    std::vector<Scalar> x(n);
    for (int c = 0; c < k; ++c) {
      if (z[c].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!k1[c][j].is_zero()) x[j] += z[c] * k1[c][j];
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

std::vector<std::vector<Scalar>> kernel_basis(const ScalarMat& m) {
  return kernel_basis_two_stage(m);
}

namespace {

std::vector<std::vector<Scalar>> kernel_basis_direct(const ScalarMat& m) {
  const int n = m.cols();
  Echelon ech = echelonize(m);
  std::vector<char> is_pivot(n, 0);
  for (int c : ech.pivot_col) is_pivot[c] = 1;

  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> x(n);
    x[f] = Scalar(1);
    // rows were produced with fresh pivots each time, so solving in reverse
    // insertion order only uses already-known coordinates
    for (int r = static_cast<int>(ech.rows.size()) - 1; r >= 0; --r) {
      const auto& row = ech.rows[r];
      int pc = ech.pivot_col[r];
      Scalar acc;
      for (int j = 0; j < n; ++j) {
        if (j == pc || row[j].is_zero() || x[j].is_zero()) continue;
        acc += row[j] * x[j];
      }
      x[pc] = acc.is_zero() ? Scalar() : -(acc / row[pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace

std::vector<std::vector<Scalar>> left_kernel_basis(const ScalarMat& m) {
  return kernel_basis(m.transposed());
}

int rank_of(const ScalarMat& m) { return static_cast<int>(echelonize(m).rows.size()); }

std::vector<Scalar> solve_square(const ScalarMat& a, const std::vector<Scalar>& b) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) throw DomainError("solve_square shape mismatch");
  // augmented Gauss-Jordan over the fraction field
  std::vector<std::vector<Scalar>> w(n, std::vector<Scalar>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = a.at(i, j);
    w[i][n] = b[i];
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    std::size_t best = ~std::size_t(0);
    for (int r = c; r < n; ++r) {
      if (w[r][c].is_zero()) continue;
      std::size_t wt = weight_of(w[r][c]);
      if (wt < best) {
        best = wt;
        piv = r;
      }
    }
    if (piv < 0) throw DomainError("singular system in solve_square");
    std::swap(w[c], w[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c || w[r][c].is_zero()) continue;
      Scalar f = w[r][c] / w[c][c];
      for (int j = c; j <= n; ++j)
        if (!w[c][j].is_zero()) w[r][j] -= f * w[c][j];
      w[r][c] = Scalar();
    }
  }
  std::vector<Scalar> x(n);
  for (int i = 0; i < n; ++i) x[i] = w[i][n] / w[i][i];
  return x;
}

}  // namespace qspair
