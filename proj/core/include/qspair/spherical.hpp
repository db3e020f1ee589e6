#ifndef QSPAIR_SPHERICAL_HPP
#define QSPAIR_SPHERICAL_HPP

#include <optional>

#include "qspair/qsp.hpp"

namespace qspair {

// finitely supported map from weights to scalars; zero coefficients are
// never stored
struct Character {
  std::map<WeightVec, Scalar, WeightLess> coeff;

  bool is_zero() const { return coeff.empty(); }
  void add(const WeightVec& w, const Scalar& c);
  Character operator+(const Character& b) const;
  Character operator-(const Character& b) const;
  Character scaled(const Scalar& f) const;
  bool operator==(const Character& b) const { return coeff == b.coeff; }
  static Character monomial(const WeightVec& w, const Scalar& c = Scalar(1));
  std::string to_string() const;
};

struct SphericalVector {
  std::vector<Scalar> coeffs;  // over the module basis, v_lambda first
  bool normalized = false;     // leading coefficient one
};

// Joint kernel of the presentation; empty when there is no invariant line.
// A kernel of dimension two or more contradicts the one-dimensionality bound
// and raises StructuralViolation, as does a vanishing v_lambda coefficient.
std::optional<SphericalVector> invariant_vector(const ModuleRep& m, const CoidealPresentation& pres);

// Right-module analogue on the dual: left null covector of the same
// operators, normalized at the dual highest weight vector.
std::optional<std::vector<Scalar>> dual_invariant_covector(const ModuleRep& m,
                                                           const CoidealPresentation& pres);

// restriction of the matrix coefficient c_{w*,w} to the torus:
// sum over weights mu of <w*_mu, w_mu> z^mu
Character upsilon(const std::vector<Scalar>& w_star, const std::vector<Scalar>& w, const ModuleRep& m);

struct ZonalData {
  Character phi;                  // leading coefficient one at z^lambda
  SphericalVector xi;             // invariant under the partner presentation
  std::vector<Scalar> xi_star;    // invariant under the base presentation
};

// The zonal character of L(lambda) for the pair (B, chi_c-partner). Checks
// the triangular shape and the support conditions and throws
// StructuralViolation when they fail.
ZonalData zonal(const PairSpec& spec, const PartnerParams& partner, const WeightVec& lambda,
                const Int& dim_cap = 200);
ZonalData zonal_on_module(const PairSpec& spec, const PartnerParams& partner, const ModuleRep& m);

// Same pipeline with explicit presentations: xi invariant under pres_right,
// xi* invariant under pres_left. Used for custom (possibly mismatched)
// partner choices, where Weyl invariance is reported rather than asserted.
ZonalData zonal_with_presentations(const PairSpec& spec, const ModuleRep& m,
                                   const CoidealPresentation& pres_left,
                                   const CoidealPresentation& pres_right);

}  // namespace qspair

#endif
