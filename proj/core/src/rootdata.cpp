#include "qspair/rootdata.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qspair {

// ---------------------------------------------------------------------------
// WeightVec
// ---------------------------------------------------------------------------

bool WeightVec::is_zero() const {
  for (const auto& c : coords)
    if (c != 0) return false;
  return true;
}

WeightVec WeightVec::operator+(const WeightVec& b) const {
  WeightVec out = *this;
  for (int i = 0; i < rank(); ++i) out.coords[i] += b.coords[i];
  return out;
}

WeightVec WeightVec::operator-(const WeightVec& b) const {
  WeightVec out = *this;
  for (int i = 0; i < rank(); ++i) out.coords[i] -= b.coords[i];
  return out;
}

WeightVec WeightVec::operator-() const {
  WeightVec out = *this;
  for (auto& c : out.coords) c = -c;
  return out;
}

WeightVec WeightVec::operator*(const Rat& f) const {
  WeightVec out = *this;
  for (auto& c : out.coords) c *= f;
  return out;
}

std::string WeightVec::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rank(); ++i) {
    if (i) os << ",";
    os << coords[i].get_str();
  }
  os << "]";
  return os.str();
}

bool WeightLess::operator()(const WeightVec& a, const WeightVec& b) const {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  for (int i = 0; i < a.rank(); ++i) {
    int c = cmp(a.coords[i], b.coords[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// RootDatum
// ---------------------------------------------------------------------------

namespace {

// builds Cartan data from the symmetric inner products (alpha_i, alpha_j)
struct TypeData {
  std::vector<int> sym;                        // d_i
  std::vector<std::vector<int>> inner;         // (alpha_i, alpha_j)
};

TypeData simple_type_data(char type, int n) {
  TypeData t;
  t.sym.assign(n, 1);
  t.inner.assign(n, std::vector<int>(n, 0));
  auto chain = [&](int i, int j, int val) {
    t.inner[i][j] = val;
    t.inner[j][i] = val;
  };
  switch (type) {
    case 'A':
      if (n < 1) throw DomainError("type A needs rank >= 1");
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1, -1);
      break;
    case 'B':
      if (n < 2) throw DomainError("type B needs rank >= 2");
      for (int i = 0; i + 1 < n; ++i) t.sym[i] = 2;
      t.sym[n - 1] = 1;
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1, -2);
      chain(n - 2, n - 1, -2);
      break;
    case 'C':
      // C_1 is A_1 in the short-root normalization
      if (n < 1) throw DomainError("type C needs rank >= 1");
      if (n >= 2) {
        t.sym[n - 1] = 2;
        for (int i = 0; i + 2 < n; ++i) chain(i, i + 1, -1);
        chain(n - 2, n - 1, -2);
      }
      break;
    case 'D':
      if (n < 3) throw DomainError("type D needs rank >= 3");
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1, -1);
      chain(n - 3, n - 1, -1);
      break;
    case 'E': {
      if (n < 6 || n > 8) throw DomainError("type E needs rank 6..8");
      // Bourbaki numbering: node 2 attached to node 4, chain 1-3-4-5-6(-7-8)
      chain(0, 2, -1);
      chain(2, 3, -1);
      chain(3, 4, -1);
      chain(4, 5, -1);
      chain(1, 3, -1);
      if (n >= 7) chain(5, 6, -1);
      if (n == 8) chain(6, 7, -1);
      break;
    }
    case 'F':
      if (n != 4) throw DomainError("type F needs rank 4");
      t.sym = {2, 2, 1, 1};
      chain(0, 1, -2);
      chain(1, 2, -2);
      chain(2, 3, -1);
      break;
    case 'G':
      if (n != 2) throw DomainError("type G needs rank 2");
      t.sym = {1, 3};
      chain(0, 1, -3);
      break;
    default:
      throw DomainError(std::string("unknown simple type ") + type);
  }
  for (int i = 0; i < n; ++i) t.inner[i][i] = 2 * t.sym[i];
  return t;
}

std::vector<std::vector<Rat>> invert_rational(std::vector<std::vector<Rat>> m) {
  int n = static_cast<int>(m.size());
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) { piv = r; break; }
    if (piv < 0) throw DomainError("singular matrix");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    Rat f = m[c][c];
    for (int j = 0; j < n; ++j) {
      m[c][j] /= f;
      inv[c][j] /= f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat g = m[r][c];
      for (int j = 0; j < n; ++j) {
        m[r][j] -= g * m[c][j];
        inv[r][j] -= g * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

RootDatum RootDatum::simple(char type, int rank) {
  TypeData t = simple_type_data(type, rank);
  RootDatum rd;
  rd.name_ = std::string(1, type) + std::to_string(rank);
  rd.rank_ = rank;
  rd.sym_ = t.sym;
  rd.cartan_.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      if (t.inner[i][j] % t.sym[i] != 0) throw StructuralViolation("non-integral Cartan entry");
      rd.cartan_[i][j] = t.inner[i][j] / t.sym[i];
    }
  rd.finish();
  return rd;
}

RootDatum RootDatum::direct_sum(const RootDatum& a, const RootDatum& b) {
  RootDatum rd;
  rd.name_ = a.name_ + "+" + b.name_;
  rd.rank_ = a.rank_ + b.rank_;
  rd.sym_ = a.sym_;
  rd.sym_.insert(rd.sym_.end(), b.sym_.begin(), b.sym_.end());
  rd.cartan_.assign(rd.rank_, std::vector<int>(rd.rank_, 0));
  for (int i = 0; i < a.rank_; ++i)
    for (int j = 0; j < a.rank_; ++j) rd.cartan_[i][j] = a.cartan_[i][j];
  for (int i = 0; i < b.rank_; ++i)
    for (int j = 0; j < b.rank_; ++j) rd.cartan_[a.rank_ + i][a.rank_ + j] = b.cartan_[i][j];
  rd.finish();
  return rd;
}

void RootDatum::finish() {
  // symmetrizability
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (sym_[i] * cartan_[i][j] != sym_[j] * cartan_[j][i])
        throw StructuralViolation("Cartan matrix is not symmetrizable by the given d_i");

  // close the simple roots under simple reflections
  std::set<std::vector<Rat>> seen;
  std::vector<WeightVec> queue;
  for (int i = 0; i < rank_; ++i) queue.push_back(simple_root(i));
  for (auto& r : queue) seen.insert(r.coords);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    WeightVec beta = queue[head];
    for (int i = 0; i < rank_; ++i) {
      Rat pair = coroot_pairing(beta, i);
      WeightVec img = beta - simple_root(i) * pair;
      if (seen.insert(img.coords).second) queue.push_back(img);
    }
  }
  roots_ = std::move(queue);
  std::sort(roots_.begin(), roots_.end(), [](const WeightVec& x, const WeightVec& y) {
    return WeightLess()(x, y);
  });

  // fundamental weights: columns of the inverse Cartan matrix
  std::vector<std::vector<Rat>> A(rank_, std::vector<Rat>(rank_));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) A[i][j] = Rat(cartan_[i][j]);
  auto Ainv = invert_rational(A);
  fundamental_.assign(rank_, WeightVec(rank_));
  for (int k = 0; k < rank_; ++k)
    for (int i = 0; i < rank_; ++i) fundamental_[k].coords[i] = Ainv[i][k];
  rho_ = WeightVec(rank_);
  for (int k = 0; k < rank_; ++k) rho_ = rho_ + fundamental_[k];
}

WeightVec RootDatum::simple_root(int i) const {
  WeightVec out(rank_);
  out.coords[i] = 1;
  return out;
}

std::vector<WeightVec> RootDatum::positive_roots() const {
  std::vector<WeightVec> out;
  for (const auto& r : roots_) {
    bool pos = false;
    for (const auto& c : r.coords) {
      if (c > 0) { pos = true; break; }
      if (c < 0) break;
    }
    if (pos) out.push_back(r);
  }
  return out;
}

Rat RootDatum::inner(const WeightVec& a, const WeightVec& b) const {
  if (a.rank() != rank_ || b.rank() != rank_) throw DomainError("rank mismatch in inner product");
  Rat out(0);
  for (int i = 0; i < rank_; ++i) {
    if (a.coords[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (b.coords[j] == 0 || cartan_[i][j] == 0) continue;
      out += a.coords[i] * b.coords[j] * Rat(sym_[i] * cartan_[i][j]);
    }
  }
  return out;
}

Rat RootDatum::coroot_pairing(const WeightVec& lambda, int i) const {
  Rat out(0);
  for (int j = 0; j < rank_; ++j)
    if (lambda.coords[j] != 0 && cartan_[i][j] != 0) out += lambda.coords[j] * Rat(cartan_[i][j]);
  return out;
}

bool RootDatum::is_root(const WeightVec& b) const {
  return std::binary_search(roots_.begin(), roots_.end(), b,
                            [](const WeightVec& x, const WeightVec& y) { return WeightLess()(x, y); });
}

bool RootDatum::is_dominant_integral(const WeightVec& lambda) const {
  for (int i = 0; i < rank_; ++i) {
    Rat p = coroot_pairing(lambda, i);
    if (!is_integer(p) || p < 0) return false;
  }
  return true;
}

WeightVec RootDatum::from_fundamental_coords(const std::vector<Int>& m) const {
  if (static_cast<int>(m.size()) != rank_) throw DomainError("fundamental coordinate rank mismatch");
  WeightVec out(rank_);
  for (int k = 0; k < rank_; ++k)
    if (m[k] != 0) out = out + fundamental_[k] * Rat(m[k]);
  return out;
}

std::vector<Rat> RootDatum::to_fundamental_coords(const WeightVec& lambda) const {
  std::vector<Rat> out(rank_);
  for (int i = 0; i < rank_; ++i) out[i] = coroot_pairing(lambda, i);
  return out;
}

Int RootDatum::weyl_dimension(const WeightVec& lambda) const {
  if (!is_dominant_integral(lambda)) throw DomainError("weyl_dimension needs a dominant integral weight");
  Rat dim(1);
  WeightVec shifted = lambda + rho_;
  for (const auto& beta : positive_roots()) dim *= inner(shifted, beta) / inner(rho_, beta);
  if (!is_integer(dim)) throw StructuralViolation("Weyl dimension is not an integer");
  return Int(dim.get_num());
}

std::vector<WeightVec> RootDatum::enumerate_dominant(const Int& dim_bound) const {
  std::vector<std::pair<Int, std::vector<Int>>> found;
  // depth-first over fundamental coordinates, incrementing coordinate indices
  // in nondecreasing order so each point is visited once; dimension grows
  // strictly in every coordinate, which prunes the walk
  auto dim_of = [&](const std::vector<Int>& c) { return weyl_dimension(from_fundamental_coords(c)); };
  std::vector<std::pair<std::vector<Int>, int>> stack;
  std::vector<Int> zero(rank_, 0);
  if (dim_of(zero) <= dim_bound) {
    found.push_back({dim_of(zero), zero});
    stack.push_back({zero, 0});
  }
  while (!stack.empty()) {
    auto [cur, next] = stack.back();
    stack.pop_back();
    for (int k = next; k < rank_; ++k) {
      auto up = cur;
      up[k] += 1;
      Int d = dim_of(up);
      if (d <= dim_bound) {
        found.push_back({d, up});
        stack.push_back({up, k});
      }
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<WeightVec> out;
  out.reserve(found.size());
  for (const auto& [d, c] : found) out.push_back(from_fundamental_coords(c));
  return out;
}

// ---------------------------------------------------------------------------
// RestrictedData
// ---------------------------------------------------------------------------

std::optional<std::vector<Rat>> RestrictedData::in_simple_span(const WeightVec& beta,
                                                               const RootDatum& rd) const {
  int k = static_cast<int>(simple.size());
  // solve the Gram system G c = (beta, simple_i)
  std::vector<std::vector<Rat>> g(k, std::vector<Rat>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) g[i][j] = rd.inner(simple[i], simple[j]);
    g[i][k] = rd.inner(beta, simple[i]);
  }
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    for (int r = c; r < k; ++r)
      if (g[r][c] != 0) { piv = r; break; }
    if (piv < 0) throw StructuralViolation("degenerate restricted Gram matrix");
    std::swap(g[c], g[piv]);
    for (int r = 0; r < k; ++r) {
      if (r == c || g[r][c] == 0) continue;
      Rat f = g[r][c] / g[c][c];
      for (int j = c; j <= k; ++j) g[r][j] -= f * g[c][j];
    }
  }
  std::vector<Rat> coords(k);
  WeightVec recon(rd.rank());
  for (int i = 0; i < k; ++i) {
    coords[i] = g[i][k] / g[i][i];
    recon = recon + simple[i] * coords[i];
  }
  if (!(recon == beta)) return std::nullopt;
  return coords;
}

bool RestrictedData::in_monoid_N(const WeightVec& beta, const RootDatum& rd) const {
  auto coords = in_simple_span(beta, rd);
  if (!coords) return false;
  for (std::size_t i = 0; i < coords->size(); ++i) {
    Rat c = (*coords)[i];
    if (!rep_in_S[i]) c /= 2;
    if (!is_integer(c) || c < 0) return false;
  }
  return true;
}

bool RestrictedData::in_lattice_N(const WeightVec& beta, const RootDatum& rd) const {
  auto coords = in_simple_span(beta, rd);
  if (!coords) return false;
  for (std::size_t i = 0; i < coords->size(); ++i) {
    Rat c = (*coords)[i];
    if (!rep_in_S[i]) c /= 2;
    if (!is_integer(c)) return false;
  }
  return true;
}

bool RestrictedData::in_p2sigma(const WeightVec& beta, const RootDatum& rd) const {
  if (!in_simple_span(beta, rd)) return false;
  for (const auto& sg : sigma) {
    Rat ratio = rd.inner(beta, sg) / rd.inner(sg, sg);
    if (!is_integer(ratio)) return false;
  }
  return true;
}

bool RestrictedData::restricted_dominant(const WeightVec& beta, const RootDatum& rd) const {
  for (const auto& s : simple)
    if (rd.inner(beta, s) < 0) return false;
  return true;
}

WeightVec RestrictedData::half_sum_positive(const RootDatum& rd) const {
  WeightVec sum(rd.rank());
  for (const auto& sg : sigma) {
    auto coords = in_simple_span(sg, rd);
    if (!coords) throw StructuralViolation("restricted root outside the simple span");
    bool pos = false;
    for (const auto& c : *coords) {
      if (c > 0) { pos = true; break; }
      if (c < 0) break;
    }
    if (pos) sum = sum + sg;
  }
  return sum * Rat(1, 2);
}

// ---------------------------------------------------------------------------
// InvolutionDatum
// ---------------------------------------------------------------------------

std::vector<int> InvolutionDatum::s_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (S[i]) out.push_back(i);
  return out;
}

std::vector<int> InvolutionDatum::d_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (D[i]) out.push_back(i);
  return out;
}

WeightVec InvolutionDatum::theta(const WeightVec& beta) const {
  if (beta.rank() != n()) throw DomainError("rank mismatch in theta");
  WeightVec out(n());
  for (int j = 0; j < n(); ++j) {
    if (beta.coords[j] == 0) continue;
    for (int i = 0; i < n(); ++i)
      if (theta_mat[i][j] != 0) out.coords[i] += theta_mat[i][j] * beta.coords[j];
  }
  return out;
}

WeightVec InvolutionDatum::tilde(const WeightVec& beta) const {
  return (beta - theta(beta)) * Rat(1, 2);
}

std::string InvolutionDatum::display_name() const {
  std::string out = tag;
  if (family_r > 0) out += "(r=" + std::to_string(family_r) + ")";
  out += " of " + rd.name();
  return out;
}

// ---------------------------------------------------------------------------
// weight-level operations
// ---------------------------------------------------------------------------

bool in_P_plus_theta(const InvolutionDatum& inv, const WeightVec& lambda) {
  const RootDatum& rd = inv.rd;
  if (!rd.is_dominant_integral(lambda)) throw DomainError("in_P_plus_theta needs a dominant integral weight");
  // orthogonal to the Theta-fixed subspace, spanned by pi_Theta and beta+Theta(beta)
  for (int j = 0; j < inv.n(); ++j) {
    if (inv.in_pi_theta(j)) {
      if (rd.inner(lambda, rd.simple_root(j)) != 0) return false;
    } else {
      WeightVec fixed = rd.simple_root(j) + inv.theta(rd.simple_root(j));
      if (rd.inner(lambda, fixed) != 0) return false;
    }
  }
  WeightVec lt = inv.tilde(lambda);
  for (const auto& sg : inv.rest.sigma) {
    Rat ratio = rd.inner(lt, sg) / rd.inner(sg, sg);
    if (!is_integer(ratio)) return false;
  }
  return true;
}

bool in_P_plus_theta_lattice_form(const InvolutionDatum& inv, const WeightVec& lambda) {
  if (!inv.rd.is_dominant_integral(lambda)) throw DomainError("needs a dominant integral weight");
  return inv.rest.in_p2sigma(lambda, inv.rd) && inv.rest.restricted_dominant(lambda, inv.rd);
}

bool leq_r(const InvolutionDatum& inv, const WeightVec& beta, const WeightVec& gamma) {
  WeightVec diff = inv.tilde(gamma) - inv.tilde(beta);
  auto coords = inv.rest.in_simple_span(diff, inv.rd);
  if (!coords) return false;
  for (const auto& c : *coords)
    if (!is_integer(c) || c < 0) return false;
  return true;
}

bool lt_r(const InvolutionDatum& inv, const WeightVec& beta, const WeightVec& gamma) {
  return leq_r(inv, beta, gamma) && !(inv.tilde(beta) == inv.tilde(gamma));
}

std::vector<WeightVec> enumerate_P_plus_theta(const InvolutionDatum& inv, const Int& dim_bound) {
  if (dim_bound < 1) throw DomainError("dim_bound must be at least 1");
  std::vector<WeightVec> out;
  for (const auto& lambda : inv.rd.enumerate_dominant(dim_bound))
    if (in_P_plus_theta(inv, lambda)) out.push_back(lambda);
  return out;
}

WeightVec weyl_reflect(const InvolutionDatum& inv, int k, const WeightVec& beta) {
  const WeightVec& a = inv.rest.simple.at(k);
  Rat factor = Rat(2) * inv.rd.inner(beta, a) / inv.rd.inner(a, a);
  return beta - a * factor;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

namespace {

bool is_even(const Rat& r) {
  Rat h = r / 2;
  return is_integer(h);
}

}  // namespace

void validate_involution(const InvolutionDatum& inv) {
  const RootDatum& rd = inv.rd;
  const int n = inv.n();
  auto fail = [&](const std::string& msg) {
    throw StructuralViolation(inv.display_name() + ": " + msg);
  };

  // p is an involution compatible with pi_theta
  for (int i = 0; i < n; ++i) {
    if (inv.p[inv.p[i]] != i) fail("p is not an involution");
    if (inv.in_pi_theta(i) != inv.in_pi_theta(inv.p[i])) fail("p does not preserve pi_theta");
  }

  // Theta fixes pi_theta pointwise and squares to the identity
  for (int j = 0; j < n; ++j) {
    WeightVec a = rd.simple_root(j);
    WeightVec ta = inv.theta(a);
    if (inv.in_pi_theta(j) && !(ta == a)) fail("Theta does not fix a pi_theta root");
    if (!(inv.theta(ta) == a)) fail("Theta^2 is not the identity");
    if (!rd.is_root(ta)) fail("Theta(alpha_" + std::to_string(j + 1) + ") is not a root");
    if (!inv.in_pi_theta(j)) {
      // Theta(alpha_i) + alpha_p(i) supported on pi_theta
      WeightVec rem = ta + rd.simple_root(inv.p[j]);
      for (int i = 0; i < n; ++i)
        if (rem.coords[i] != 0 && (!inv.in_pi_theta(i) || !is_integer(rem.coords[i])))
          fail("Theta(alpha_i) + alpha_p(i) leaves the span of pi_theta");
    }
  }
  for (const auto& beta : rd.roots())
    if (!rd.is_root(inv.theta(beta))) fail("Theta does not preserve the root set");

  // fixed roots are exactly the pi_theta subsystem
  for (const auto& beta : rd.roots()) {
    bool fixed = inv.theta(beta) == beta;
    bool in_span = true;
    for (int i = 0; i < n; ++i)
      if (beta.coords[i] != 0 && !inv.in_pi_theta(i)) in_span = false;
    if (fixed != in_span) fail("Theta-fixed roots differ from the pi_theta subsystem");
  }

  // S and D match their definitions recomputed from Theta
  std::vector<int> minus;  // nodes with Theta(alpha_i) = -alpha_i
  for (int i = 0; i < n; ++i)
    if (inv.theta(rd.simple_root(i)) == -rd.simple_root(i)) minus.push_back(i);
  for (int i = 0; i < n; ++i) {
    bool in_S = false;
    if (inv.in_pi_star(i) && inv.theta(rd.simple_root(i)) == -rd.simple_root(i)) {
      in_S = true;
      for (int j : minus) {
        Rat ratio = Rat(2) * rd.inner(rd.simple_root(i), rd.simple_root(j)) /
                    rd.inner(rd.simple_root(j), rd.simple_root(j));
        if (!is_even(ratio)) in_S = false;
      }
    }
    if (in_S != (inv.S[i] != 0)) fail("stored S disagrees with its recomputation at node " + std::to_string(i + 1));
    bool in_D = inv.in_pi_star(i) && inv.p[i] != i &&
                rd.inner(rd.simple_root(i), inv.theta(rd.simple_root(i))) != 0;
    if (in_D != (inv.D[i] != 0)) fail("stored D disagrees with its recomputation at node " + std::to_string(i + 1));
  }
  if (static_cast<int>(inv.s_nodes().size()) + static_cast<int>(inv.d_nodes().size()) > 1)
    fail("more than one exceptional parameter node");

  // each alpha_i in S has half a restricted weight: (alpha~_i, sigma)/(sigma,sigma) integral
  for (int i : inv.s_nodes()) {
    WeightVec at = inv.tilde(rd.simple_root(i));
    for (const auto& sg : inv.rest.sigma) {
      Rat ratio = rd.inner(at, sg) / rd.inner(sg, sg);
      if (!is_integer(ratio)) fail("alpha~_i/2 is not a restricted weight for an S node");
    }
  }

  // simple restricted reflections permute Sigma
  std::set<std::vector<Rat>> sigma_set;
  for (const auto& sg : inv.rest.sigma) sigma_set.insert(sg.coords);
  for (std::size_t k = 0; k < inv.rest.simple.size(); ++k)
    for (const auto& sg : inv.rest.sigma)
      if (!sigma_set.count(weyl_reflect(inv, static_cast<int>(k), sg).coords))
        fail("a simple restricted reflection does not permute Sigma");

  // every restricted root is a one-signed integer combination of the simple ones
  for (const auto& sg : inv.rest.sigma) {
    auto coords = inv.rest.in_simple_span(sg, rd);
    if (!coords) fail("restricted root outside the simple restricted span");
    bool nonneg = true, nonpos = true;
    for (const auto& c : *coords) {
      if (!is_integer(c)) fail("restricted root with non-integer simple coordinates");
      if (c > 0) nonpos = false;
      if (c < 0) nonneg = false;
    }
    if (!nonneg && !nonpos) fail("restricted root with mixed signs");
  }

  // T_Theta basis really is Theta-fixed
  for (const auto& row : inv.t_theta_basis) {
    WeightVec mu(n);
    for (int i = 0; i < n; ++i) mu.coords[i] = Rat(row[i]);
    if (!(inv.theta(mu) == mu)) fail("T_Theta basis vector is not Theta-fixed");
  }
}

}  // namespace qspair
