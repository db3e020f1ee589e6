#include "qspair/charring.hpp"

#include <algorithm>
#include <set>

namespace qspair {

namespace {

WeightVec reflect(const InvolutionDatum& inv, int k, const WeightVec& beta) {
  return weyl_reflect(inv, k, beta);
}

// integer coordinates of beta over the free generators of N, if any
std::optional<std::vector<Int>> n_coords(const InvolutionDatum& inv, const WeightVec& beta) {
  auto simple_coords = inv.rest.in_simple_span(beta, inv.rd);
  if (!simple_coords) return std::nullopt;
  std::vector<Int> out(simple_coords->size());
  for (std::size_t k = 0; k < simple_coords->size(); ++k) {
    Rat c = (*simple_coords)[k];
    if (!inv.rest.rep_in_S[k]) c /= 2;
    if (!is_integer(c)) return std::nullopt;
    out[k] = c.get_num();
  }
  return out;
}

}  // namespace

bool is_w_invariant(const Character& phi, const InvolutionDatum& inv) {
  for (const auto& [w, c] : phi.coeff)
    if (!inv.rest.in_p2sigma(w, inv.rd))
      throw DomainError("character support leaves the doubled restricted weight lattice");
  for (std::size_t k = 0; k < inv.rest.simple.size(); ++k) {
    for (const auto& [w, c] : phi.coeff) {
      WeightVec img = reflect(inv, static_cast<int>(k), w);
      auto it = phi.coeff.find(img);
      if (it == phi.coeff.end() || !(it->second == c)) return false;
    }
  }
  return true;
}

Character orbit_sum(const InvolutionDatum& inv, const WeightVec& lambda, std::size_t orbit_cap) {
  if (!inv.rest.restricted_dominant(lambda, inv.rd))
    throw DomainError("orbit_sum expects a restricted-dominant weight");
  std::set<std::vector<Rat>> seen;
  std::vector<WeightVec> queue = {lambda};
  seen.insert(lambda.coords);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    WeightVec w = queue[head];
    for (std::size_t k = 0; k < inv.rest.simple.size(); ++k) {
      WeightVec img = reflect(inv, static_cast<int>(k), w);
      if (seen.insert(img.coords).second) {
        if (seen.size() > orbit_cap) throw ResourceLimit("restricted Weyl orbit exceeds the cap");
        queue.push_back(img);
      }
    }
  }
  Character out;
  for (const auto& w : queue) out.coeff.emplace(w, Scalar(1));
  return out;
}

std::map<WeightVec, Scalar, WeightLess> expand_in_orbit_sums(const Character& phi,
                                                             const InvolutionDatum& inv) {
  if (!is_w_invariant(phi, inv))
    throw DomainError("orbit-sum expansion needs a Weyl-invariant character");
  std::map<WeightVec, Scalar, WeightLess> out;
  Character rest = phi;
  std::size_t guard = phi.coeff.size() + 1;
  while (!rest.is_zero()) {
    if (guard-- == 0) throw StructuralViolation("orbit-sum elimination failed to terminate");
    // a <=_r-maximal exponent; lexicographically largest among the maxima
    const WeightVec* top = nullptr;
    for (const auto& [w, c] : rest.coeff) {
      bool maximal = true;
      for (const auto& [w2, c2] : rest.coeff)
        if (!(w2 == w) && lt_r(inv, w, w2)) {
          maximal = false;
          break;
        }
      if (!maximal) continue;
      if (!top || WeightLess()(*top, w)) top = &w;
    }
    if (!top) throw StructuralViolation("no maximal exponent in a nonzero character");
    WeightVec mu = *top;
    if (!inv.rest.restricted_dominant(mu, inv.rd))
      throw DomainError("maximal exponent is not restricted-dominant: residual outside the span");
    Scalar c = rest.coeff.at(mu);
    rest = rest - orbit_sum(inv, mu).scaled(c);
    out.emplace(std::move(mu), std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// lattice characters
// ---------------------------------------------------------------------------

LatticeCharacter LatticeCharacter::trivial(const InvolutionDatum& inv) {
  LatticeCharacter g;
  g.values.assign(inv.rest.monoid_gens.size(), Scalar(1));
  return g;
}

Scalar LatticeCharacter::eval(const WeightVec& beta, const InvolutionDatum& inv) const {
  auto coords = n_coords(inv, beta);
  if (!coords) throw DomainError("weight outside the lattice N");
  Scalar out(1);
  for (std::size_t k = 0; k < coords->size(); ++k) {
    Int e = (*coords)[k];
    if (e == 0) continue;
    if (values[k].is_zero()) throw DomainError("lattice character with zero value");
    Scalar base = e > 0 ? values[k] : values[k].inverse();
    for (Int t = 0; t < abs(e); ++t) out *= base;
  }
  return out;
}

bool LatticeCharacter::in_G_theta(const InvolutionDatum& inv) const {
  for (const auto& q2 : inv.rest.q2_basis)
    if (!eval(q2, inv).is_one()) return false;
  return true;
}

Character act_lattice_char(const LatticeCharacter& g, const Character& phi,
                           const InvolutionDatum& inv) {
  Character out;
  for (const auto& [w, c] : phi.coeff) out.add(w, c * g.eval(w, inv));
  return out;
}

Character act_on_family_member(const LatticeCharacter& g, const WeightVec& lambda,
                               const Character& phi, const InvolutionDatum& inv) {
  Character out;
  for (const auto& [w, c] : phi.coeff) {
    if (!inv.rest.in_monoid_N(lambda - w, inv.rd))
      throw DomainError("family member support leaves lambda - N");
    out.add(w, c * g.eval(w - lambda, inv));
  }
  return out;
}

LatticeQuotient lattice_N_and_quotient(const InvolutionDatum& inv) {
  LatticeQuotient out;
  out.n_basis = inv.rest.monoid_gens;
  out.q2_basis = inv.rest.q2_basis;
  const int k = static_cast<int>(out.n_basis.size());
  // Q(2 Sigma) generators in the N basis
  IMat rel;
  for (const auto& q2 : out.q2_basis) {
    auto coords = n_coords(inv, q2);
    if (!coords) throw StructuralViolation("doubled root lattice escapes N");
    rel.push_back(*coords);
  }
  out.invariant_factors = smith_invariant_factors(rel, k);
  std::size_t s_count = inv.s_nodes().size();
  bool shape_ok = out.invariant_factors.size() == s_count;
  for (const auto& f : out.invariant_factors) shape_ok = shape_ok && f == 2;
  if (!shape_ok)
    throw StructuralViolation("N/Q(2 Sigma) is not a product of |S| copies of Z_2 for " +
                              inv.display_name());
  return out;
}

std::vector<LatticeCharacter> g_theta_elements(const InvolutionDatum& inv) {
  // sign characters on the S generators, trivial elsewhere
  std::vector<int> s_positions;
  for (std::size_t k = 0; k < inv.rest.monoid_gens.size(); ++k)
    if (inv.rest.rep_in_S[k]) s_positions.push_back(static_cast<int>(k));
  std::vector<LatticeCharacter> out;
  const std::size_t total = 1u << s_positions.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    LatticeCharacter g = LatticeCharacter::trivial(inv);
    for (std::size_t b = 0; b < s_positions.size(); ++b)
      if (mask & (1u << b)) g.values[s_positions[b]] = Scalar(-1);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace qspair
