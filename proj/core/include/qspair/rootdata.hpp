#ifndef QSPAIR_ROOTDATA_HPP
#define QSPAIR_ROOTDATA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qspair/intmat.hpp"
#include "qspair/scalar.hpp"

namespace qspair {

// ---------------------------------------------------------------------------
// WeightVec: rational coordinate vector in the simple-root basis.
// ---------------------------------------------------------------------------

struct WeightVec {
  std::vector<Rat> coords;

  WeightVec() = default;
  explicit WeightVec(int rank) : coords(rank, Rat(0)) {}
  explicit WeightVec(std::vector<Rat> c) : coords(std::move(c)) {}

  int rank() const { return static_cast<int>(coords.size()); }
  bool is_zero() const;
  bool operator==(const WeightVec& b) const { return coords == b.coords; }
  bool operator!=(const WeightVec& b) const { return !(*this == b); }

  WeightVec operator+(const WeightVec& b) const;
  WeightVec operator-(const WeightVec& b) const;
  WeightVec operator-() const;
  WeightVec operator*(const Rat& f) const;

  std::string to_string() const;
};

// strict weak order (lexicographic), usable as a map key comparator
struct WeightLess {
  bool operator()(const WeightVec& a, const WeightVec& b) const;
};

// ---------------------------------------------------------------------------
// RootDatum: finite (possibly reducible) root system with a fixed simple
// basis, normalized so short roots have squared length 2 in each component.
// ---------------------------------------------------------------------------

class RootDatum {
 public:
  RootDatum() = default;  // empty datum; fill via simple()/direct_sum()

  // type is one of 'A'..'G'; rank restrictions follow the classical series.
  static RootDatum simple(char type, int rank);
  static RootDatum direct_sum(const RootDatum& a, const RootDatum& b);

  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  // a_ij = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)
  int cartan(int i, int j) const { return cartan_[i][j]; }
  // d_i = (alpha_i, alpha_i)/2
  int d(int i) const { return sym_[i]; }

  const std::vector<WeightVec>& roots() const { return roots_; }
  std::vector<WeightVec> positive_roots() const;
  WeightVec simple_root(int i) const;
  const WeightVec& fundamental_weight(int i) const { return fundamental_[i]; }
  const WeightVec& rho() const { return rho_; }

  Rat inner(const WeightVec& a, const WeightVec& b) const;
  // (lambda, alpha_i^vee)
  Rat coroot_pairing(const WeightVec& lambda, int i) const;
  bool is_root(const WeightVec& b) const;
  bool is_dominant_integral(const WeightVec& lambda) const;

  WeightVec from_fundamental_coords(const std::vector<Int>& m) const;
  std::vector<Rat> to_fundamental_coords(const WeightVec& lambda) const;

  Int weyl_dimension(const WeightVec& lambda) const;

  // all dominant integral weights with dim L(lambda) <= dim_bound, sorted by
  // (dimension, fundamental coordinates)
  std::vector<WeightVec> enumerate_dominant(const Int& dim_bound) const;

 private:
  void finish();  // roots, fundamental weights, rho

  std::string name_;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> sym_;
  std::vector<WeightVec> roots_;
  std::vector<WeightVec> fundamental_;
  WeightVec rho_;
};

// ---------------------------------------------------------------------------
// RestrictedData: the restricted root system attached to an involution,
// together with the lattices used by the support and character-ring layers.
// ---------------------------------------------------------------------------

struct RestrictedData {
  // distinct nonzero restricted roots (beta - Theta(beta))/2
  std::vector<WeightVec> sigma;
  // distinct simple restricted roots, indexed by their first node in pi_star
  std::vector<WeightVec> simple;
  std::vector<int> pi_star;            // representative nodes, parallel to simple
  std::vector<char> rep_in_S;          // whether the representative node lies in S
  // free generators of the monoid N: 2*simple off S, simple on S
  std::vector<WeightVec> monoid_gens;
  std::vector<WeightVec> q2_basis;     // basis of Q(2*Sigma): 2*simple
  std::vector<WeightVec> p_sigma_basis;  // basis of the weight lattice P(Sigma)

  bool non_reduced = false;            // some restricted root has twice itself in sigma

  // coordinates of beta in the simple restricted basis, if beta lies in their span
  std::optional<std::vector<Rat>> in_simple_span(const WeightVec& beta, const RootDatum& rd) const;
  bool in_monoid_N(const WeightVec& beta, const RootDatum& rd) const;
  bool in_lattice_N(const WeightVec& beta, const RootDatum& rd) const;
  bool in_p2sigma(const WeightVec& beta, const RootDatum& rd) const;
  bool restricted_dominant(const WeightVec& beta, const RootDatum& rd) const;
  WeightVec half_sum_positive(const RootDatum& rd) const;
};

// ---------------------------------------------------------------------------
// InvolutionDatum: one entry of the classification of irreducible pairs.
// ---------------------------------------------------------------------------

struct AdFactor {
  int node;   // 0-based
  int power;  // divided-power exponent
};

// data for building theta~(y_i): apply ad_r x over `factors` (leftmost factor
// outermost), seeded with t_seed^{-1} x_seed, times sign
struct ThetaSeq {
  std::vector<AdFactor> factors;
  int sign = 1;
  int seed = 0;
};

struct InvolutionDatum {
  std::string tag;   // family tag: AI, AII, AIII.1, ..., G, DOUBLE.A, ...
  int family_r = 0;  // the r parameter, when the family has one
  RootDatum rd;

  std::vector<char> pi_theta;     // per node
  std::vector<int> p;             // involutive diagram permutation
  // S is recomputed from Theta (evenness of the pairings against all nodes
  // with Theta(alpha_j) = -alpha_j); S_table keeps the classification row's
  // printed claim, which misses the rows where the fixed subalgebra has a
  // central so(2) factor (rank-one AI, BI with r=2, DI.1 with r=2)
  std::vector<char> S, S_table, D;  // per node
  std::map<int, ThetaSeq> seqs;   // one entry per node outside pi_theta
  std::vector<std::vector<Rat>> theta_mat;  // column j = coordinates of Theta(alpha_j)
  IMat t_theta_basis;             // basis of {mu in Q(pi) : Theta(mu) = mu}
  RestrictedData rest;

  int n() const { return rd.rank(); }
  bool in_pi_theta(int i) const { return pi_theta[i] != 0; }
  bool in_pi_star(int i) const { return !in_pi_theta(i) && p[i] >= i; }
  std::vector<int> s_nodes() const;
  std::vector<int> d_nodes() const;

  WeightVec theta(const WeightVec& beta) const;
  WeightVec tilde(const WeightVec& beta) const;

  std::string display_name() const;  // e.g. "AIII.1(r=2) of A4"
};

// Builds one classification row. r is the family parameter where applicable.
// For DOUBLE tags ("DOUBLE.A" ... ) n is the rank of each simple factor.
InvolutionDatum make_involution(const std::string& tag, int n, int r = 0);

// Structural validation; throws StructuralViolation with a description.
void validate_involution(const InvolutionDatum& inv);

// Representative instances of every classification row, exceptional types
// included. Used by the sanity sweep and the CLI listing.
std::vector<InvolutionDatum> builtin_catalog();
std::vector<std::string> known_tags();

// ---------------------------------------------------------------------------
// Weight-level operations.
// ---------------------------------------------------------------------------

// true iff lambda is dominant integral, orthogonal to the Theta-fixed
// subspace, and has integral restricted pairings (lambda~, beta~)/(beta~,beta~)
// over the whole finite set Sigma
bool in_P_plus_theta(const InvolutionDatum& inv, const WeightVec& lambda);

// alternative characterization: lambda in P(2 Sigma) and restricted-dominant
bool in_P_plus_theta_lattice_form(const InvolutionDatum& inv, const WeightVec& lambda);

// beta <=_r gamma : gamma~ - beta~ is a nonnegative integer combination of
// the simple restricted roots
bool leq_r(const InvolutionDatum& inv, const WeightVec& beta, const WeightVec& gamma);
bool lt_r(const InvolutionDatum& inv, const WeightVec& beta, const WeightVec& gamma);

// all lambda in P+_Theta with dim L(lambda) <= dim_bound, sorted by dimension
std::vector<WeightVec> enumerate_P_plus_theta(const InvolutionDatum& inv, const Int& dim_bound);

// reflection in the k-th simple restricted root
WeightVec weyl_reflect(const InvolutionDatum& inv, int k, const WeightVec& beta);

}  // namespace qspair

#endif
