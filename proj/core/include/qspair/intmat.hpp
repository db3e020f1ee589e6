#ifndef QSPAIR_INTMAT_HPP
#define QSPAIR_INTMAT_HPP

#include <vector>

#include "qspair/scalar.hpp"

namespace qspair {

// Small exact integer matrix helpers for lattice computations.
using IMat = std::vector<std::vector<Int>>;

Int imat_determinant(IMat a);

// Basis (as rows) of { x in Z^n : A x = 0 }. The kernel of an integer matrix
// is automatically saturated.
IMat integer_kernel(const IMat& a);

// Row-style Hermite basis of the lattice generated by the given row vectors;
// zero rows are dropped, so the result has full row rank.
IMat hermite_row_basis(IMat rows);

// Nontrivial invariant factors d_1 | d_2 | ... of the abelian group
// presented by the rows of `rel` inside Z^n modulo nothing, i.e. of
// Z^n / (row span). Factors equal to 1 are dropped; a trailing count of free
// factors (0s) is returned as zeros.
std::vector<Int> smith_invariant_factors(IMat rel, int ambient_rank);

}  // namespace qspair

#endif
