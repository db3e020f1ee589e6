#include "qspair/intmat.hpp"

#include <algorithm>

namespace qspair {

namespace {

int rows_of(const IMat& a) { return static_cast<int>(a.size()); }
int cols_of(const IMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

}  // namespace

Int imat_determinant(IMat a) {
  int n = rows_of(a);
  if (n == 0) return 1;
  // fraction-free Bareiss
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { piv = i; break; }
      if (piv < 0) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

IMat integer_kernel(const IMat& a) {
  int m = rows_of(a), n = cols_of(a);
  // column reduction of A while tracking the transform U (A U = H)
  IMat h = a;
  IMat u(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;

  auto col_addmul = [&](int dst, int src, const Int& f) {
    for (int r = 0; r < m; ++r) h[r][dst] += f * h[r][src];
    for (int r = 0; r < n; ++r) u[r][dst] += f * u[r][src];
  };
  auto col_swap = [&](int x, int y) {
    for (int r = 0; r < m; ++r) std::swap(h[r][x], h[r][y]);
    for (int r = 0; r < n; ++r) std::swap(u[r][x], u[r][y]);
  };
  auto col_neg = [&](int x) {
    for (int r = 0; r < m; ++r) h[r][x] = -h[r][x];
    for (int r = 0; r < n; ++r) u[r][x] = -u[r][x];
  };

  int lead = 0;
  for (int row = 0; row < m && lead < n; ++row) {
    // gcd-reduce the entries of this row across columns lead..n-1
    while (true) {
      int nz = 0, last = -1;
      for (int c = lead; c < n; ++c)
        if (h[row][c] != 0) { ++nz; last = c; }
      if (nz == 0) break;
      if (nz == 1) {
        col_swap(lead, last);
        if (h[row][lead] < 0) col_neg(lead);
        ++lead;
        break;
      }
      // pick the column with the smallest nonzero |entry| and reduce others
      int best = -1;
      for (int c = lead; c < n; ++c) {
        if (h[row][c] == 0) continue;
        if (best < 0 || cmp(abs(h[row][c]), abs(h[row][best])) < 0) best = c;
      }
      col_swap(lead, best);
      for (int c = lead + 1; c < n; ++c) {
        if (h[row][c] == 0) continue;
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), h[row][c].get_mpz_t(), h[row][lead].get_mpz_t());
        col_addmul(c, lead, -f);
      }
    }
  }
  IMat kernel;
  for (int c = lead; c < n; ++c) {
    bool zero = true;
    for (int r = 0; r < m; ++r)
      if (h[r][c] != 0) { zero = false; break; }
    if (!zero) continue;
    std::vector<Int> vec(n);
    for (int r = 0; r < n; ++r) vec[r] = u[r][c];
    kernel.push_back(std::move(vec));
  }
  return kernel;
}

IMat hermite_row_basis(IMat rows) {
  int m = rows_of(rows);
  if (m == 0) return rows;
  int n = cols_of(rows);
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    while (true) {
      int best = -1;
      for (int i = r; i < m; ++i)
        if (rows[i][c] != 0 && (best < 0 || cmp(abs(rows[i][c]), abs(rows[best][c])) < 0)) best = i;
      if (best < 0) break;
      std::swap(rows[r], rows[best]);
      bool again = false;
      for (int i = r + 1; i < m; ++i) {
        if (rows[i][c] == 0) continue;
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (int j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
        if (rows[i][c] != 0) again = true;
      }
      if (!again) break;
    }
    if (rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (int j = 0; j < n; ++j) rows[r][j] = -rows[r][j];
      ++r;
    }
  }
  rows.resize(r);
  // reduce entries above pivots for a unique basis
  for (int i = r - 1; i >= 0; --i) {
    int c = 0;
    while (c < n && rows[i][c] == 0) ++c;
    if (c == n) continue;
    for (int k = 0; k < i; ++k) {
      if (rows[k][c] == 0) continue;
      Int f;
      mpz_fdiv_q(f.get_mpz_t(), rows[k][c].get_mpz_t(), rows[i][c].get_mpz_t());
      for (int j = 0; j < n; ++j) rows[k][j] -= f * rows[i][j];
    }
  }
  return rows;
}

std::vector<Int> smith_invariant_factors(IMat rel, int ambient_rank) {
  int m = rows_of(rel);
  int n = ambient_rank;
  for (auto& row : rel) row.resize(n, 0);

  std::vector<Int> factors;
  int top = 0;
  while (top < std::min(m, n)) {
    // find a nonzero pivot with the smallest absolute value
    int pi = -1, pj = -1;
    for (int i = top; i < m; ++i)
      for (int j = top; j < n; ++j)
        if (rel[i][j] != 0 && (pi < 0 || cmp(abs(rel[i][j]), abs(rel[pi][pj])) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(rel[top], rel[pi]);
    for (int i = 0; i < m; ++i) std::swap(rel[i][top], rel[i][pj]);

    bool dirty = false;
    for (int i = top + 1; i < m; ++i) {
      if (rel[i][top] == 0) continue;
      Int f;
      mpz_fdiv_q(f.get_mpz_t(), rel[i][top].get_mpz_t(), rel[top][top].get_mpz_t());
      for (int j = top; j < n; ++j) rel[i][j] -= f * rel[top][j];
      if (rel[i][top] != 0) dirty = true;
    }
    for (int j = top + 1; j < n; ++j) {
      if (rel[top][j] == 0) continue;
      Int f;
      mpz_fdiv_q(f.get_mpz_t(), rel[top][j].get_mpz_t(), rel[top][top].get_mpz_t());
      for (int i = top; i < m; ++i) rel[i][j] -= f * rel[i][top];
      if (rel[top][j] != 0) dirty = true;
    }
    if (dirty) continue;
    // ensure divisibility of the remaining block by the pivot
    bool fixed = true;
    for (int i = top + 1; i < m && fixed; ++i)
      for (int j = top + 1; j < n && fixed; ++j) {
        if (rel[i][j] % rel[top][top] != 0) {
          for (int jj = top; jj < n; ++jj) rel[top][jj] += rel[i][jj];
          fixed = false;
        }
      }
    if (!fixed) continue;
    Int d = abs(rel[top][top]);
    factors.push_back(d);
    ++top;
  }
  std::vector<Int> out;
  for (const auto& d : factors)
    if (d != 1) out.push_back(d);
  for (int k = top; k < n; ++k) out.push_back(0);  // free summands
  return out;
}

}  // namespace qspair
