#ifndef QSPAIR_CHARRING_HPP
#define QSPAIR_CHARRING_HPP

#include "qspair/spherical.hpp"

namespace qspair {

// true iff phi is fixed by every simple restricted reflection; the support
// must lie in the doubled restricted weight lattice
bool is_w_invariant(const Character& phi, const InvolutionDatum& inv);

// orbit sum over the restricted Weyl group: sum of z^mu, mu in W.lambda,
// every coefficient one
Character orbit_sum(const InvolutionDatum& inv, const WeightVec& lambda,
                    std::size_t orbit_cap = 1u << 20);

// unique expansion of a W-invariant character in orbit sums, by greedy
// elimination at <=_r-maximal exponents (lexicographic tie break); throws on
// non-invariant input or when a residual escapes the orbit-sum span
std::map<WeightVec, Scalar, WeightLess> expand_in_orbit_sums(const Character& phi,
                                                             const InvolutionDatum& inv);

// multiplicative character of the lattice N, given by its (nonzero) values
// on the free generators of N
struct LatticeCharacter {
  std::vector<Scalar> values;  // parallel to inv.rest.monoid_gens

  static LatticeCharacter trivial(const InvolutionDatum& inv);
  Scalar eval(const WeightVec& beta, const InvolutionDatum& inv) const;  // beta in the lattice N
  bool in_G_theta(const InvolutionDatum& inv) const;  // trivial on Q(2 Sigma)
};

// g . z^beta = g(beta) z^beta; every exponent must lie in the lattice N
Character act_lattice_char(const LatticeCharacter& g, const Character& phi,
                           const InvolutionDatum& inv);

// family action g . phi_lambda = z^lambda g(z^{-lambda} phi_lambda); needs
// supp(phi) inside lambda - N and preserves the leading-one normalization
Character act_on_family_member(const LatticeCharacter& g, const WeightVec& lambda,
                               const Character& phi, const InvolutionDatum& inv);

struct LatticeQuotient {
  std::vector<WeightVec> n_basis;       // free generators of N
  std::vector<WeightVec> q2_basis;      // generators of Q(2 Sigma)
  std::vector<Int> invariant_factors;   // of N / Q(2 Sigma); checked to be |S| twos
};

LatticeQuotient lattice_N_and_quotient(const InvolutionDatum& inv);

// all 2^{|S|} sign characters of N that are trivial on Q(2 Sigma)
std::vector<LatticeCharacter> g_theta_elements(const InvolutionDatum& inv);

}  // namespace qspair

#endif
