#include "qspair/spherical.hpp"

#include "qspair/linalg.hpp"

namespace qspair {

void Character::add(const WeightVec& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = coeff.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) coeff.erase(it);
  }
}

Character Character::operator+(const Character& b) const {
  Character out = *this;
  for (const auto& [w, c] : b.coeff) out.add(w, c);
  return out;
}

Character Character::operator-(const Character& b) const {
  Character out = *this;
  for (const auto& [w, c] : b.coeff) out.add(w, -c);
  return out;
}

Character Character::scaled(const Scalar& f) const {
  Character out;
  if (f.is_zero()) return out;
  for (const auto& [w, c] : coeff) out.coeff.emplace(w, c * f);
  return out;
}

Character Character::monomial(const WeightVec& w, const Scalar& c) {
  Character out;
  out.add(w, c);
  return out;
}

std::string Character::to_string() const {
  if (coeff.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : coeff) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*z^" + w.to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariant vectors.
//
// The annihilating elements C_k = x_k + (lower-order terms) make both the
// vector and the covector block-triangular over the weight grading: each
// weight block is pinned down by small exact solves against blocks closer to
// the top. A candidate produced this way is the only possible normalized
// invariant, so a final check against the whole presentation decides
// existence. Kernels of dimension two and higher are ruled out structurally:
// any invariant vector with zero highest component would sit in the joint
// kernel of the raising operators below the top line, which is trivial in a
// simple module.
// ---------------------------------------------------------------------------

namespace {

struct BlockIndex {
  std::vector<WeightVec> order;  // shallow to deep
  std::map<WeightVec, std::vector<int>, WeightLess> members;
  std::map<WeightVec, int, WeightLess> depth;

  explicit BlockIndex(const ModuleRep& m) {
    members = m.weight_blocks();
    std::vector<std::pair<Rat, WeightVec>> by_depth;
    for (const auto& [w, idx] : members) {
      Rat d(0);
      for (int i = 0; i < m.rd.rank(); ++i) d += m.highest->coords[i] - w.coords[i];
      by_depth.emplace_back(d, w);
    }
    std::sort(by_depth.begin(), by_depth.end(), [](const auto& a, const auto& b) {
      int c = cmp(a.first, b.first);
      if (c != 0) return c < 0;
      return WeightLess()(a.second, b.second);
    });
    for (auto& [d, w] : by_depth) {
      depth[w] = static_cast<int>(d.get_num().get_si());
      order.push_back(w);
    }
  }
};

// A z + b = 0 for full-column-rank A; nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve_overdetermined(const ScalarMat& a,
                                                        const std::vector<Scalar>& b) {
  const int cols = a.cols();
  ScalarMat aug(a.rows(), cols + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < cols; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, cols) = b[r];
  }
  auto ker = kernel_basis(aug);
  // full column rank of A leaves exactly the one solution ray (z, 1)
  if (ker.size() != 1) {
    if (ker.empty()) return std::nullopt;
    throw StructuralViolation("triangular block system is underdetermined");
  }
  if (ker[0][cols].is_zero()) return std::nullopt;  // inconsistent: ray misses the affine slice
  std::vector<Scalar> x(cols);
  for (int c = 0; c < cols; ++c)
    if (!ker[0][c].is_zero()) x[c] = ker[0][c] / ker[0][cols];
  return x;
}

enum class TriStatus { solved, none, fallback };

// candidate invariant (co)vector from the C_k block recursion, top normalized
TriStatus triangular_candidate(const ModuleRep& m, const CoidealPresentation& pres, bool dual,
                               std::vector<Scalar>& out) {
  const int n = m.rd.rank();
  if (static_cast<int>(pres.c_ops.size()) != n) return TriStatus::fallback;
  BlockIndex blocks(m);

  out.assign(m.dim(), Scalar());
  out[0] = Scalar(1);
  for (const auto& mu : blocks.order) {
    if (mu == *m.highest) continue;
    const auto& cols = blocks.members.at(mu);
    // rows of each C_k (transposed, for the covector) linking this block to
    // already-solved shallower ones
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    for (int k = 0; k < n; ++k) {
      WeightVec eq_block = dual ? mu - pres.theta_alpha[k] : mu + m.rd.simple_root(k);
      auto it = blocks.members.find(eq_block);
      if (it == blocks.members.end()) continue;
      for (int e : it->second) {
        std::vector<Scalar> row(cols.size());
        Scalar acc;
        bool row_nonzero = false;
        bool unsolved = false;
        for (int b = 0; b < m.dim() && !unsolved; ++b) {
          const Scalar& entry = dual ? pres.c_ops[k].at(b, e) : pres.c_ops[k].at(e, b);
          if (entry.is_zero()) continue;
          auto pos = std::find(cols.begin(), cols.end(), b);
          if (pos != cols.end()) {
            row[pos - cols.begin()] = entry;
            row_nonzero = true;
          } else if (blocks.depth.at(m.weights[b]) >= blocks.depth.at(mu)) {
            unsolved = true;  // equation touches a deeper block: unusable here
          } else if (!out[b].is_zero()) {
            acc += entry * out[b];
          }
        }
        if (unsolved) continue;
        if (row_nonzero || !acc.is_zero()) {
          rows.push_back(std::move(row));
          rhs.push_back(std::move(acc));
        }
      }
    }
    if (rows.empty()) return TriStatus::fallback;
    ScalarMat a(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        a.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    if (rank_of(a) < static_cast<int>(cols.size())) return TriStatus::fallback;
    auto sol = solve_overdetermined(a, rhs);
    if (!sol) return TriStatus::none;
    for (std::size_t c = 0; c < cols.size(); ++c) out[cols[c]] = (*sol)[c];
  }
  return TriStatus::solved;
}

bool annihilated_by(const CoidealPresentation& pres, const std::vector<Scalar>& xi, bool dual) {
  for (const auto& g : pres.gens) {
    std::vector<Scalar> img = dual ? g.op.mat.apply_left(xi) : g.op.mat.apply(xi);
    for (std::size_t b = 0; b < img.size(); ++b) {
      if (!g.counit.is_zero() && !xi[b].is_zero()) img[b] -= g.counit * xi[b];
      if (!img[b].is_zero()) return false;
    }
  }
  return true;
}

// global elimination fallback: the joint kernel of the shifted generators
std::optional<std::vector<Scalar>> global_kernel(const CoidealPresentation& pres, bool dual) {
  ScalarMat stacked(pres.dim * static_cast<int>(pres.gens.size()), pres.dim);
  int base = 0;
  for (const auto& g : pres.gens) {
    for (int r = 0; r < pres.dim; ++r)
      for (int c = 0; c < pres.dim; ++c) {
        Scalar v = dual ? g.op.mat.at(c, r) : g.op.mat.at(r, c);
        if (r == c) v -= g.counit;
        if (!v.is_zero()) stacked.at(base + r, c) = std::move(v);
      }
    base += pres.dim;
  }
  auto ker = kernel_basis(stacked);
  if (ker.empty()) return std::nullopt;
  if (ker.size() > 1)
    throw StructuralViolation("invariant space has dimension " + std::to_string(ker.size()) +
                              ", expected at most one");
  std::vector<Scalar> out = std::move(ker[0]);
  if (out[0].is_zero())
    throw StructuralViolation("invariant vector has no highest weight component");
  Scalar lead = out[0];
  for (auto& c : out)
    if (!c.is_zero()) c /= lead;
  return out;
}

std::optional<std::vector<Scalar>> invariant_solve(const ModuleRep& m,
                                                   const CoidealPresentation& pres, bool dual) {
  if (pres.dim != m.dim()) throw DomainError("presentation was built on a different carrier");
  std::vector<Scalar> candidate;
  switch (triangular_candidate(m, pres, dual, candidate)) {
    case TriStatus::none:
      return std::nullopt;
    case TriStatus::solved:
      if (!annihilated_by(pres, candidate, dual)) return std::nullopt;
      return candidate;
    case TriStatus::fallback:
      return global_kernel(pres, dual);
  }
  return std::nullopt;
}

}  // namespace

std::optional<SphericalVector> invariant_vector(const ModuleRep& m, const CoidealPresentation& pres) {
  auto sol = invariant_solve(m, pres, false);
  if (!sol) return std::nullopt;
  SphericalVector out;
  out.coeffs = std::move(*sol);
  out.normalized = true;
  return out;
}

std::optional<std::vector<Scalar>> dual_invariant_covector(const ModuleRep& m,
                                                           const CoidealPresentation& pres) {
  return invariant_solve(m, pres, true);
}

Character upsilon(const std::vector<Scalar>& w_star, const std::vector<Scalar>& w, const ModuleRep& m) {
  if (static_cast<int>(w_star.size()) != m.dim() || static_cast<int>(w.size()) != m.dim())
    throw DomainError("vector length mismatch in upsilon");
  Character out;
  for (int b = 0; b < m.dim(); ++b)
    if (!w_star[b].is_zero() && !w[b].is_zero()) out.add(m.weights[b], w_star[b] * w[b]);
  return out;
}

ZonalData zonal_with_presentations(const PairSpec& spec, const ModuleRep& m,
                                   const CoidealPresentation& pres_left,
                                   const CoidealPresentation& pres_right) {
  const InvolutionDatum& inv = spec.inv;
  if (!m.highest) throw DomainError("zonal needs a simple module");
  const WeightVec& lambda = *m.highest;
  if (!in_P_plus_theta(inv, lambda))
    throw DomainError("zonal character asked for a non-spherical weight");

  auto xi = invariant_vector(m, pres_right);
  auto xi_star = dual_invariant_covector(m, pres_left);
  if (!xi || !xi_star) throw StructuralViolation("spherical weight without invariant vector");

  ZonalData out;
  out.xi = std::move(*xi);
  out.xi_star = std::move(*xi_star);
  out.phi = upsilon(out.xi_star, out.xi.coeffs, m);

  // leading-one triangular shape with support in the doubled weight lattice
  auto top = out.phi.coeff.find(lambda);
  if (top == out.phi.coeff.end() || !top->second.is_one())
    throw StructuralViolation("zonal character is not normalized at its leading term");
  for (const auto& [beta, c] : out.phi.coeff) {
    if (beta == lambda) continue;
    if (!lt_r(inv, beta, lambda))
      throw StructuralViolation("zonal character support is not strictly below the top");
    if (!inv.rest.in_p2sigma(beta, inv.rd))
      throw StructuralViolation("zonal character support leaves the doubled weight lattice");
  }
  // invariant vector support sits in lambda - N
  for (int b = 0; b < m.dim(); ++b) {
    if (out.xi.coeffs[b].is_zero()) continue;
    if (!inv.rest.in_monoid_N(lambda - m.weights[b], inv.rd))
      throw StructuralViolation("invariant vector support leaves lambda - N");
  }
  return out;
}

ZonalData zonal_on_module(const PairSpec& spec, const PartnerParams& partner, const ModuleRep& m) {
  return zonal_with_presentations(spec, m, invariance_system(spec, m),
                                  chi_c_presentation(spec, partner, m));
}

ZonalData zonal(const PairSpec& spec, const PartnerParams& partner, const WeightVec& lambda,
                const Int& dim_cap) {
  ModuleRep m = build_module(spec.rd(), lambda, dim_cap);
  return zonal_on_module(spec, partner, m);
}

}  // namespace qspair
