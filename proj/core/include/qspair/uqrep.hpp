#ifndef QSPAIR_UQREP_HPP
#define QSPAIR_UQREP_HPP

#include <map>
#include <optional>

#include "qspair/linalg.hpp"
#include "qspair/rootdata.hpp"

namespace qspair {

// ---------------------------------------------------------------------------
// Carrier: a weight-graded module given by generator matrices. The torus
// action is diagonal and implied by the basis weights. Simple modules come
// out of build_module; tensor products reuse the same shape.
// ---------------------------------------------------------------------------

struct Carrier {
  RootDatum rd;
  std::vector<WeightVec> weights;       // weight of each basis vector
  std::vector<ScalarMat> x, y;          // one matrix per node
  std::optional<WeightVec> highest;     // set for simple modules, v_lambda first

  int dim() const { return static_cast<int>(weights.size()); }
  std::map<WeightVec, std::vector<int>, WeightLess> weight_blocks() const;
};

using ModuleRep = Carrier;

// Matrix attached to a carrier, with an optional weight tag: an operator of
// weight gamma maps the mu block into the mu+gamma block.
struct Operator {
  ScalarMat mat;
  std::optional<WeightVec> weight;

  Operator() = default;
  explicit Operator(ScalarMat m, std::optional<WeightVec> w = std::nullopt)
      : mat(std::move(m)), weight(std::move(w)) {}
};

// ---------------------------------------------------------------------------
// Construction and actions.
// ---------------------------------------------------------------------------

// The simple module with the given dominant integral highest weight, built
// from lowering words modulo the radical of the contravariant form. Throws
// ResourceLimit when the dimension exceeds dim_cap.
ModuleRep build_module(const RootDatum& rd, const WeightVec& lambda, const Int& dim_cap = 200);

// Asserts every structural invariant of a simple module (weight grading,
// commutators, quantum Serre relations, dimension, highest weight line).
void validate_module(const ModuleRep& m);

// diag(q^{(wt_b, mu)}); mu may be rational as long as every exponent doubles
// to an integer
Operator act_tau(const Carrier& m, const WeightVec& mu);

// right adjoint action of the divided power x_i^(m) (resp. y_i^(m)) on an
// operator:  ad_r(x_i) a = -t_i^{-1} x_i a + t_i^{-1} a x_i,
//            ad_r(y_i) a = a y_i - y_i t_i a t_i^{-1}
Operator ad_r_x(const Carrier& m, int i, int power, const Operator& a);
Operator ad_r_y(const Carrier& m, int i, int power, const Operator& a);

// tensor product module with the coproduct
//   x_i -> x_i (x) 1 + t_i (x) x_i,   y_i -> y_i (x) t_i^{-1} + 1 (x) y_i
Carrier tensor_module(const Carrier& a, const Carrier& b);

// the right action on the dual space: covectors are row vectors and act
// through the same generator matrices, (w* . u)(w) = w*(u w)
std::vector<Scalar> dual_right_action(const std::vector<Scalar>& covec, const ScalarMat& generator);

}  // namespace qspair

#endif
