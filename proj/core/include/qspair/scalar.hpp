#ifndef QSPAIR_SCALAR_HPP
#define QSPAIR_SCALAR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qspair/errors.hpp"

namespace qspair {

using Int = mpz_class;
using Rat = mpq_class;

bool is_integer(const Rat& r);

// ---------------------------------------------------------------------------
// Symbols.
//
// All exact scalars live in the fraction field of Q[v, s_i, d_i, c_i, s'_i].
// The deformation parameter is v with q = v^2, so q^{k/2} is the monomial v^k
// and no algebraic extension is ever needed for half-integer powers of q.
// ---------------------------------------------------------------------------

enum class SymKind : std::uint32_t { S = 1, D = 2, C = 3, SPrime = 4, V = 0xff };

using VarId = std::uint32_t;

constexpr VarId var_id(SymKind kind, int index = 0) {
  return (static_cast<std::uint32_t>(kind) << 16) | static_cast<std::uint32_t>(index);
}
constexpr VarId var_v() { return var_id(SymKind::V); }
// index is the 1-based node index
inline VarId var_s(int i) { return var_id(SymKind::S, i); }
inline VarId var_d(int i) { return var_id(SymKind::D, i); }
inline VarId var_c(int i) { return var_id(SymKind::C, i); }
inline VarId var_sprime(int i) { return var_id(SymKind::SPrime, i); }

std::string var_name(VarId v);

// ---------------------------------------------------------------------------
// Monomial: sparse exponent vector, factors sorted by descending VarId.
// The term order is lex with v most significant.
// ---------------------------------------------------------------------------

struct Monomial {
  std::vector<std::pair<VarId, std::uint32_t>> factors;

  bool is_one() const { return factors.empty(); }
  std::uint32_t exponent(VarId v) const;
  static int compare(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial& b) const { return factors == b.factors; }
  bool divides(const Monomial& b) const;

  Monomial operator*(const Monomial& b) const;
  // exact division; caller must check divisibility
  Monomial operator/(const Monomial& b) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);
};

// ---------------------------------------------------------------------------
// Poly: sparse multivariate polynomial with integer coefficients, terms kept
// sorted in decreasing term order with no zero coefficients.
// ---------------------------------------------------------------------------

class Poly {
 public:
  using Term = std::pair<Monomial, Int>;

  Poly() = default;
  static Poly constant(Int c);
  static Poly variable(VarId v, std::uint32_t exp = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const;

  bool operator==(const Poly& b) const { return terms_ == b.terms_; }

  Poly operator-() const;
  Poly operator+(const Poly& b) const;
  Poly operator-(const Poly& b) const;
  Poly operator*(const Poly& b) const;
  Poly mul_term(const Monomial& m, const Int& c) const;

  // exact division; throws DomainError if the division leaves a remainder
  Poly divexact(const Poly& b) const;
  // non-throwing variant; empty when the division is not exact
  std::optional<Poly> try_divexact(const Poly& b) const;

  // gcd of the integer coefficients (positive), zero for the zero polynomial
  Int content() const;
  // positive integer n with n * this having integer content 1; plus sign flip
  // so the leading coefficient is positive
  Poly normalized_primitive() const;

  std::uint32_t degree(VarId v) const;
  void collect_vars(std::vector<VarId>& out) const;
  bool depends_on(VarId v) const;
  bool depends_on_parameters() const;  // any symbol other than v

  // substitute rational values for a subset of the symbols; the result is a
  // pair (poly, den) with poly / den^(max degree ...) — see .cpp; exposed via
  // Scalar::substitute instead, this stays internal-ish.
  void substitute(const std::map<VarId, Rat>& values, Poly& num_out, Int& den_out) const;

  static Poly gcd(const Poly& a, const Poly& b);

  std::string to_string() const;

  // construction helper used by the arithmetic: terms must be sorted/clean
  static Poly from_sorted_terms(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Scalar: element of the fraction field, kept in canonical reduced form so
// structural equality is mathematical equality:
//   * den != 0, gcd(num, den) = 1 (including integer content),
//   * leading coefficient of den positive.
// ---------------------------------------------------------------------------

class Scalar {
 public:
  Scalar() : num_(), den_(Poly::constant(1)) {}
  Scalar(int c) : Scalar(Int(c)) {}
  Scalar(const Int& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}
  Scalar(const Rat& c);
  static Scalar from_fraction(Poly num, Poly den);  // canonicalizes
  static Scalar variable(VarId v);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool operator==(const Scalar& b) const { return num_ == b.num_ && den_ == b.den_; }
  bool operator!=(const Scalar& b) const { return !(*this == b); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& b) const;
  Scalar operator-(const Scalar& b) const;
  Scalar operator*(const Scalar& b) const;
  Scalar operator/(const Scalar& b) const;  // throws DivisionByZero
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }
  Scalar inverse() const;

  // v^k for k in Z (negative exponents give 1/v^|k|)
  static Scalar v_power(long k);
  // q^k for half-integer k, i.e. v^{2k}; throws DomainError otherwise
  static Scalar q_power(const Rat& k);

  // substitute rational values for symbols (partial substitution allowed);
  // throws DivisionByZero if the denominator vanishes at the given point
  Scalar substitute(const std::map<VarId, Rat>& values) const;
  // full evaluation; throws DomainError if symbols remain after substitution
  Rat evaluate(const std::map<VarId, Rat>& values) const;

  bool depends_on_parameters() const {
    return num_.depends_on_parameters() || den_.depends_on_parameters();
  }
  bool denominator_depends_on_parameters() const { return den_.depends_on_parameters(); }
  // true when the denominator involves only v and the invertible d symbols
  bool denominator_unit_parameters_only() const;

  std::string to_string() const;

 private:
  Poly num_, den_;
};

inline Scalar operator*(int a, const Scalar& b) { return Scalar(a) * b; }

// quantum integer [m]_{q_i} = (q_i^m - q_i^{-m}) / (q_i - q_i^{-1}) where
// q_i = q^{d_i} and d_i = (alpha_i, alpha_i)/2
Scalar gauss_integer(long m, long d_i);
Scalar gauss_factorial(long m, long d_i);
// quantum binomial [n choose k]_{q_i}
Scalar gauss_binomial(long n, long k, long d_i);

}  // namespace qspair

#endif
