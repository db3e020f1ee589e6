#ifndef QSPAIR_QSP_HPP
#define QSPAIR_QSP_HPP

#include <optional>
#include <string>

#include "qspair/rootdata.hpp"
#include "qspair/uqrep.hpp"

namespace qspair {

// ---------------------------------------------------------------------------
// PairSpec: an involution row together with the parameter choices. s_i is
// zero off S and d_i is one off D; on S/D the entries are either free symbols
// or explicit scalars.
// ---------------------------------------------------------------------------

struct PairSpec {
  InvolutionDatum inv;
  std::vector<Scalar> s, d;

  // free symbols s_i on S and d_i on D
  static PairSpec symbolic(const InvolutionDatum& inv);
  // explicit values for the S/D slots; missing entries default to symbols
  static PairSpec with_params(const InvolutionDatum& inv, const std::map<int, Scalar>& s_values,
                              const std::map<int, Scalar>& d_values);

  const RootDatum& rd() const { return inv.rd; }
};

// parameters of the invariance-compatible partner: B' = chi_c(B_{theta,s',c^2 d})
struct PartnerParams {
  std::vector<Scalar> s_prime;  // zero off S
  std::vector<Scalar> c;        // one off D

  static PartnerParams symbolic(const InvolutionDatum& inv);
};

// ---------------------------------------------------------------------------
// CoidealPresentation: the generators of B evaluated on one carrier, each
// with its counit. A vector is invariant iff (op - counit) kills it for
// every generator.
// ---------------------------------------------------------------------------

struct GeneratorOp {
  std::string name;
  Operator op;
  Scalar counit;
};

struct CoidealPresentation {
  int dim = 0;
  std::vector<GeneratorOp> gens;
  // the counit-free annihilators C_k (one per node) of the same algebra,
  // used for the block-triangular invariant solves
  std::vector<ScalarMat> c_ops;
  std::vector<WeightVec> theta_alpha;  // Theta(alpha_k) per node

  // all rows of (op - counit I), stacked
  ScalarMat stacked_shifted() const;
};

// ---------------------------------------------------------------------------
// Generators as operators.
// ---------------------------------------------------------------------------

// theta~(y_i) for i outside pi_theta, built from the stored ad_r sequence
// seeded with t_{p(i)}^{-1} x_{p(i)}
Operator theta_tilde_y(const PairSpec& spec, int i, const Carrier& m);
// the kappa image: sign * (ad_r y_...) y_{p(i)}
Operator kappa_theta_tilde_y(const PairSpec& spec, int i, const Carrier& m);

// B_i = y_i t_i + d_i theta~(y_i) t_i + s_i t_i  (y_i t_i on pi_theta nodes)
Operator B_op(const PairSpec& spec, int i, const Carrier& m);

// C_k = x_k + q_k^2 d_{p(k)}^{-1} kappa(theta~(y_k)) t_k + q_k^2 s_k (t_k - 1),
// and plain x_k on pi_theta nodes
Operator C_op(const PairSpec& spec, int k, const Carrier& m);

// the full generator list on a carrier
CoidealPresentation invariance_system(const PairSpec& spec, const Carrier& m);

// the partner presentation chi_c(B_{theta, s', c^2 d}); generator scalars are
// rescaled by q^{-(rho, Theta(alpha_i) - alpha_i)/2} c_i^{-1} on x_i and the
// inverse on y_i
CoidealPresentation chi_c_presentation(const PairSpec& spec, const PartnerParams& partner,
                                       const Carrier& m);

// ---------------------------------------------------------------------------
// Relation verifier.
// ---------------------------------------------------------------------------

enum class RelKind { I, II, III, IV, V, VI };
std::string rel_name(RelKind r);

struct RelationInstance {
  RelKind rel;
  int i, j;  // 0-based; j = -1 when the relation involves only i
};

struct RelationOutcome {
  RelationInstance instance;
  WeightVec module_highest;
  bool zero = false;
  // nonzero witness entry (row, col, value string)
  int row = -1, col = -1;
  std::string value;
};

// all relation instances applicable to the pair (every Cartan entry match)
std::vector<RelationInstance> applicable_relations(const PairSpec& spec);

// evaluates LHS - RHS of one relation on each battery module; an optional
// perturbed node multiplies the twisted summand of that B generator by q^2,
// which leaves the generator family and must break some relation
std::vector<RelationOutcome> verify_relation(const PairSpec& spec, const RelationInstance& instance,
                                             const std::vector<const Carrier*>& battery,
                                             std::optional<int> perturb_node = std::nullopt);

}  // namespace qspair

#endif
