#include <algorithm>
#include <set>

#include "qspair/rootdata.hpp"

namespace qspair {

namespace {

// raw one-based table data for one family instance
struct RawRow {
  RootDatum rd;
  std::vector<int> pi_theta;                    // 1-based nodes
  std::vector<int> p;                           // 1-based images, p[i-1]
  std::vector<int> S, D;                        // 1-based nodes
  std::map<int, std::vector<AdFactor>> seq;     // 1-based node -> factors (1-based nodes)
};

std::vector<int> id_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  return p;
}

std::vector<int> flip_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = n - i;
  return p;
}

std::vector<AdFactor> nodes1(std::initializer_list<int> nodes) {
  std::vector<AdFactor> out;
  for (int v : nodes) out.push_back({v, 1});
  return out;
}

// ascending run a..b (empty when a > b), each with power 1
void push_run_up(std::vector<AdFactor>& seq, int a, int b) {
  for (int k = a; k <= b; ++k) seq.push_back({k, 1});
}
void push_run_down(std::vector<AdFactor>& seq, int a, int b) {
  for (int k = a; k >= b; --k) seq.push_back({k, 1});
}

RawRow raw_row(const std::string& tag, int n, int r) {
  RawRow row;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) throw DomainError(tag + ": " + msg);
  };
  if (tag == "AI") {
    need(n >= 1, "needs n >= 1");
    row.rd = RootDatum::simple('A', n);
    row.p = id_perm(n);
    for (int i = 1; i <= n; ++i) row.seq[i] = {};
  } else if (tag == "AII") {
    need(n >= 3 && n % 2 == 1, "needs odd n >= 3");
    row.rd = RootDatum::simple('A', n);
    row.p = id_perm(n);
    for (int i = 1; i <= n; i += 2) row.pi_theta.push_back(i);
    for (int i = 2; i <= n - 1; i += 2) row.seq[i] = nodes1({i - 1, i + 1});
  } else if (tag == "AIII.1" || tag == "AIV") {
    if (tag == "AIV") {
      need(n >= 2, "needs n >= 2");
      r = 1;
    } else {
      need(n >= 4 && r >= 2 && 2 * r <= n, "needs 2 <= r <= n/2");
    }
    row.rd = RootDatum::simple('A', n);
    row.p = flip_perm(n);
    for (int j = r + 1; j <= n - r; ++j) row.pi_theta.push_back(j);
    row.D = {r};
    for (int i = 1; i <= r - 1; ++i) row.seq[i] = {};
    std::vector<AdFactor> s;
    push_run_up(s, r + 1, n - r);
    row.seq[r] = s;
  } else if (tag == "AIII.2") {
    need(n >= 3 && n % 2 == 1, "needs odd n >= 3");
    int m = (n - 1) / 2;
    row.rd = RootDatum::simple('A', n);
    row.p = flip_perm(n);
    row.S = {m + 1};
    for (int i = 1; i <= m + 1; ++i) row.seq[i] = {};
  } else if (tag == "BI" || tag == "BII") {
    if (tag == "BII") {
      need(n >= 2, "needs n >= 2");
      r = 1;
    } else {
      need(n >= 2 && r >= 2 && r <= n, "needs 2 <= r <= n");
    }
    row.rd = RootDatum::simple('B', n);
    row.p = id_perm(n);
    for (int j = r + 1; j <= n; ++j) row.pi_theta.push_back(j);
    for (int i = 1; i <= r - 1; ++i) row.seq[i] = {};
    std::vector<AdFactor> s;
    push_run_up(s, r + 1, n - 1);
    if (r < n) s.push_back({n, 2});
    push_run_down(s, n - 1, r + 1);
    row.seq[r] = s;
  } else if (tag == "CI") {
    need(n >= 1, "needs n >= 1");
    row.rd = RootDatum::simple('C', n);
    row.p = id_perm(n);
    row.S = {n};
    for (int i = 1; i <= n; ++i) row.seq[i] = {};
  } else if (tag == "CII.1") {
    need(n >= 3 && r >= 2 && r % 2 == 0 && r <= n - 1, "needs even 2 <= r <= n-1");
    row.rd = RootDatum::simple('C', n);
    row.p = id_perm(n);
    for (int j = 1; j <= r - 1; j += 2) row.pi_theta.push_back(j);
    for (int j = r + 1; j <= n; ++j) row.pi_theta.push_back(j);
    for (int i = 2; i <= r - 2; i += 2) row.seq[i] = nodes1({i - 1, i + 1});
    std::vector<AdFactor> s;
    s.push_back({r - 1, 1});
    push_run_up(s, r + 1, n - 1);
    s.push_back({n, 1});
    push_run_down(s, n - 1, r + 1);
    row.seq[r] = s;
  } else if (tag == "CII.2") {
    need(n >= 2 && n % 2 == 0, "needs even n >= 2");
    row.rd = RootDatum::simple('C', n);
    row.p = id_perm(n);
    for (int j = 1; j <= n - 1; j += 2) row.pi_theta.push_back(j);
    for (int i = 2; i <= n - 2; i += 2) row.seq[i] = nodes1({i - 1, i + 1});
    row.seq[n] = {{n - 1, 2}};
  } else if (tag == "DI.1" || tag == "DII") {
    if (tag == "DII") {
      need(n >= 4, "needs n >= 4");
      r = 1;
    } else {
      need(n >= 4 && r >= 2 && r <= n - 2, "needs 2 <= r <= n-2");
    }
    row.rd = RootDatum::simple('D', n);
    row.p = id_perm(n);
    for (int j = r + 1; j <= n; ++j) row.pi_theta.push_back(j);
    for (int i = 1; i <= r - 1; ++i) row.seq[i] = {};
    std::vector<AdFactor> s;
    push_run_up(s, r + 1, n - 2);
    s.push_back({n - 1, 1});
    s.push_back({n, 1});
    push_run_down(s, n - 2, r + 1);
    row.seq[r] = s;
  } else if (tag == "DI.2") {
    need(n >= 4, "needs n >= 4");
    row.rd = RootDatum::simple('D', n);
    row.p = id_perm(n);
    row.p[n - 2] = n;
    row.p[n - 1] = n - 1;
    for (int i = 1; i <= n - 1; ++i) row.seq[i] = {};
  } else if (tag == "DI.3") {
    need(n >= 4, "needs n >= 4");
    row.rd = RootDatum::simple('D', n);
    row.p = id_perm(n);
    for (int i = 1; i <= n; ++i) row.seq[i] = {};
  } else if (tag == "DIII.1") {
    need(n >= 4 && n % 2 == 0, "needs even n >= 4");
    row.rd = RootDatum::simple('D', n);
    row.p = id_perm(n);
    for (int j = 1; j <= n - 1; j += 2) row.pi_theta.push_back(j);
    row.S = {n};
    for (int i = 2; i <= n - 2; i += 2) row.seq[i] = nodes1({i - 1, i + 1});
    row.seq[n] = {};
  } else if (tag == "DIII.2") {
    need(n >= 5 && n % 2 == 1, "needs odd n >= 5");
    row.rd = RootDatum::simple('D', n);
    row.p = id_perm(n);
    row.p[n - 2] = n;
    row.p[n - 1] = n - 1;
    for (int j = 1; j <= n - 2; j += 2) row.pi_theta.push_back(j);
    row.D = {n - 1};
    for (int i = 2; i <= n - 3; i += 2) row.seq[i] = nodes1({i - 1, i + 1});
    row.seq[n - 1] = {{n - 2, 1}};
  } else if (tag == "EI" || tag == "EV" || tag == "EVIII") {
    int want = tag == "EI" ? 6 : tag == "EV" ? 7 : 8;
    need(n == want, "fixed rank");
    row.rd = RootDatum::simple('E', n);
    row.p = id_perm(n);
    for (int i = 1; i <= n; ++i) row.seq[i] = {};
  } else if (tag == "EII") {
    need(n == 6, "fixed rank 6");
    row.rd = RootDatum::simple('E', 6);
    row.p = {6, 2, 5, 4, 3, 1};
    for (int i : {1, 2, 3, 4}) row.seq[i] = {};
  } else if (tag == "EIII") {
    need(n == 6, "fixed rank 6");
    row.rd = RootDatum::simple('E', 6);
    row.p = {6, 2, 5, 4, 3, 1};
    row.pi_theta = {3, 4, 5};
    row.D = {1};
    row.seq[1] = nodes1({3, 4, 5});
    row.seq[2] = nodes1({4, 3, 5, 4});
  } else if (tag == "EIV") {
    need(n == 6, "fixed rank 6");
    row.rd = RootDatum::simple('E', 6);
    row.p = id_perm(6);
    row.pi_theta = {2, 3, 4, 5};
    row.seq[1] = nodes1({3, 4, 5, 2, 4, 3});
    row.seq[6] = nodes1({5, 4, 3, 2, 4, 5});
  } else if (tag == "EVI") {
    need(n == 7, "fixed rank 7");
    row.rd = RootDatum::simple('E', 7);
    row.p = id_perm(7);
    row.pi_theta = {2, 5, 7};
    row.seq[1] = {};
    row.seq[3] = {};
    row.seq[4] = nodes1({2, 5});
    row.seq[6] = nodes1({7, 5});
  } else if (tag == "EVII") {
    need(n == 7, "fixed rank 7");
    row.rd = RootDatum::simple('E', 7);
    row.p = id_perm(7);
    row.pi_theta = {2, 3, 4, 5};
    row.S = {7};
    row.seq[1] = nodes1({3, 4, 2, 5, 4, 3});
    row.seq[6] = nodes1({5, 4, 2, 3, 4, 5});
    row.seq[7] = {};
  } else if (tag == "EIX") {
    need(n == 8, "fixed rank 8");
    row.rd = RootDatum::simple('E', 8);
    row.p = id_perm(8);
    row.pi_theta = {2, 3, 4, 5};
    row.seq[1] = nodes1({3, 4, 2, 5, 4, 3});
    row.seq[6] = nodes1({5, 4, 2, 3, 4, 5});
    row.seq[7] = {};
    row.seq[8] = {};
  } else if (tag == "FI") {
    need(n == 4, "fixed rank 4");
    row.rd = RootDatum::simple('F', 4);
    row.p = id_perm(4);
    for (int i = 1; i <= 4; ++i) row.seq[i] = {};
  } else if (tag == "FII") {
    need(n == 4, "fixed rank 4");
    row.rd = RootDatum::simple('F', 4);
    row.p = id_perm(4);
    row.pi_theta = {1, 2, 3};
    row.seq[4] = nodes1({3, 2, 1, 3, 2, 3});
  } else if (tag == "G") {
    need(n == 2, "fixed rank 2");
    row.rd = RootDatum::simple('G', 2);
    row.p = id_perm(2);
    row.seq[1] = {};
    row.seq[2] = {};
  } else if (tag.rfind("DOUBLE.", 0) == 0) {
    need(tag.size() == 8, "DOUBLE tag is DOUBLE.<type letter>");
    char type = tag[7];
    RootDatum factor = RootDatum::simple(type, n);
    row.rd = RootDatum::direct_sum(factor, factor);
    int m = n;
    row.p.resize(2 * m);
    for (int i = 1; i <= m; ++i) {
      row.p[i - 1] = i + m;
      row.p[i + m - 1] = i;
    }
    for (int i = 1; i <= 2 * m; ++i) row.seq[i] = {};
  } else {
    throw DomainError("unknown pair tag " + tag);
  }
  return row;
}

RestrictedData build_restricted(const InvolutionDatum& inv) {
  const RootDatum& rd = inv.rd;
  RestrictedData rest;

  std::set<std::vector<Rat>> seen;
  for (const auto& beta : rd.roots()) {
    WeightVec t = inv.tilde(beta);
    if (t.is_zero()) continue;
    if (seen.insert(t.coords).second) rest.sigma.push_back(t);
  }
  std::sort(rest.sigma.begin(), rest.sigma.end(),
            [](const WeightVec& a, const WeightVec& b) { return WeightLess()(a, b); });
  for (const auto& sg : rest.sigma)
    if (seen.count((sg * Rat(2)).coords)) rest.non_reduced = true;

  for (int i = 0; i < inv.n(); ++i) {
    if (!inv.in_pi_star(i)) continue;
    WeightVec t = inv.tilde(rd.simple_root(i));
    bool dup = false;
    for (const auto& s : rest.simple)
      if (s == t) dup = true;
    if (dup) continue;
    rest.simple.push_back(t);
    rest.pi_star.push_back(i);
    rest.rep_in_S.push_back(inv.S[i]);
  }

  for (std::size_t k = 0; k < rest.simple.size(); ++k) {
    rest.q2_basis.push_back(rest.simple[k] * Rat(2));
    rest.monoid_gens.push_back(rest.rep_in_S[k] ? rest.simple[k] : rest.simple[k] * Rat(2));
  }

  // weight lattice P(Sigma): c with integral Cartan pairings against all of
  // Sigma, solved as an integer congruence in the simple restricted basis
  int k = static_cast<int>(rest.simple.size());
  int m = static_cast<int>(rest.sigma.size());
  IMat forms(m, std::vector<Int>(k));
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < k; ++j) {
      Rat f = Rat(2) * rd.inner(rest.simple[j], rest.sigma[a]) / rd.inner(rest.sigma[a], rest.sigma[a]);
      if (!is_integer(f)) throw StructuralViolation("non-integral restricted Cartan pairing");
      forms[a][j] = Int(f.get_num());
    }
  IMat cart(k, std::vector<Int>(k));
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < k; ++j) {
      Rat f = Rat(2) * rd.inner(rest.simple[j], rest.simple[a]) / rd.inner(rest.simple[a], rest.simple[a]);
      cart[a][j] = Int(f.get_num());
    }
  Int d0 = abs(imat_determinant(cart));
  if (d0 == 0) throw StructuralViolation("degenerate restricted Cartan matrix");
  // lattice { y : forms.y = 0 mod d0 } / d0
  IMat aug(m, std::vector<Int>(k + m, 0));
  for (int a = 0; a < m; ++a) {
    for (int j = 0; j < k; ++j) aug[a][j] = forms[a][j];
    aug[a][k + a] = d0;
  }
  IMat ker = integer_kernel(aug);
  IMat proj;
  for (const auto& vec : ker) proj.push_back(std::vector<Int>(vec.begin(), vec.begin() + k));
  proj = hermite_row_basis(std::move(proj));
  for (const auto& y : proj) {
    WeightVec w(rd.rank());
    for (int j = 0; j < k; ++j) w = w + rest.simple[j] * (Rat(y[j]) / Rat(d0));
    rest.p_sigma_basis.push_back(w);
  }
  return rest;
}

}  // namespace

InvolutionDatum make_involution(const std::string& tag, int n, int r) {
  RawRow raw = raw_row(tag, n, r);
  InvolutionDatum inv;
  inv.tag = tag;
  inv.family_r = (tag == "AIII.1" || tag == "BI" || tag == "CII.1" || tag == "DI.1") ? r : 0;
  inv.rd = raw.rd;
  const int N = inv.rd.rank();

  inv.pi_theta.assign(N, 0);
  for (int j : raw.pi_theta) inv.pi_theta[j - 1] = 1;
  inv.p.resize(N);
  for (int i = 0; i < N; ++i) inv.p[i] = raw.p[i] - 1;
  inv.S_table.assign(N, 0);
  inv.D.assign(N, 0);
  for (int j : raw.S) inv.S_table[j - 1] = 1;
  for (int j : raw.D) inv.D[j - 1] = 1;

  // primary rows are given for pi_star; partners use the reversed sequence
  // with the alternating sign
  for (const auto& [node1, factors1] : raw.seq) {
    int i = node1 - 1;
    ThetaSeq seq;
    for (const auto& f : factors1) seq.factors.push_back({f.node - 1, f.power});
    seq.sign = 1;
    seq.seed = inv.p[i];
    inv.seqs[i] = seq;
    if (inv.p[i] != i) {
      ThetaSeq partner;
      partner.factors.assign(seq.factors.rbegin(), seq.factors.rend());
      int total = 0;
      for (const auto& f : seq.factors) total += f.power;
      partner.sign = (total % 2 == 0) ? 1 : -1;
      partner.seed = i;
      inv.seqs[inv.p[i]] = partner;
    }
  }

  // Theta matrix: fixed on pi_theta, read off the sequence weights elsewhere
  inv.theta_mat.assign(N, std::vector<Rat>(N, Rat(0)));
  for (int j = 0; j < N; ++j) {
    if (inv.in_pi_theta(j)) {
      inv.theta_mat[j][j] = 1;
      continue;
    }
    const ThetaSeq& seq = inv.seqs.at(j);
    inv.theta_mat[seq.seed][j] -= 1;
    for (const auto& f : seq.factors) inv.theta_mat[f.node][j] -= f.power;
  }

  // S from its definition: Theta negates alpha_i and every pairing
  // 2(alpha_i, alpha_j)/(alpha_j, alpha_j) against Theta-negated nodes is even
  inv.S.assign(N, 0);
  {
    std::vector<int> minus;
    for (int j = 0; j < N; ++j)
      if (inv.theta(inv.rd.simple_root(j)) == -inv.rd.simple_root(j)) minus.push_back(j);
    for (int i : minus) {
      if (!inv.in_pi_star(i)) continue;
      bool ok = true;
      for (int j : minus) {
        Rat ratio = Rat(2) * inv.rd.inner(inv.rd.simple_root(i), inv.rd.simple_root(j)) /
                    inv.rd.inner(inv.rd.simple_root(j), inv.rd.simple_root(j));
        if (!is_integer(ratio / 2)) ok = false;
      }
      if (ok) inv.S[i] = 1;
    }
  }

  // Theta-fixed sublattice of the root lattice
  IMat fixed(N, std::vector<Int>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Rat e = inv.theta_mat[i][j] - Rat(i == j ? 1 : 0);
      if (!is_integer(e)) throw StructuralViolation("Theta matrix is not integral");
      fixed[i][j] = Int(e.get_num());
    }
  inv.t_theta_basis = hermite_row_basis(integer_kernel(fixed));

  inv.rest = build_restricted(inv);
  return inv;
}

std::vector<std::string> known_tags() {
  return {"AI",    "AII",   "AIII.1", "AIII.2", "AIV",   "BI",    "BII",   "CI",
          "CII.1", "CII.2", "DI.1",   "DI.2",   "DI.3",  "DII",   "DIII.1", "DIII.2",
          "EI",    "EII",   "EIII",   "EIV",    "EV",    "EVI",   "EVII",  "EVIII",
          "EIX",   "FI",    "FII",    "G",      "DOUBLE.A", "DOUBLE.B", "DOUBLE.C",
          "DOUBLE.D", "DOUBLE.E", "DOUBLE.F", "DOUBLE.G"};
}

std::vector<InvolutionDatum> builtin_catalog() {
  std::vector<InvolutionDatum> out;
  auto add = [&](const std::string& tag, int n, int r = 0) { out.push_back(make_involution(tag, n, r)); };
  add("AI", 1);
  add("AI", 2);
  add("AI", 3);
  add("AII", 3);
  add("AII", 5);
  add("AIII.1", 4, 2);
  add("AIII.1", 5, 2);
  add("AIII.1", 6, 3);
  add("AIII.2", 3);
  add("AIII.2", 5);
  add("AIV", 2);
  add("AIV", 3);
  add("AIV", 5);
  add("BI", 2, 2);
  add("BI", 3, 2);
  add("BI", 3, 3);
  add("BI", 4, 2);
  add("BII", 2);
  add("BII", 3);
  add("CI", 1);
  add("CI", 2);
  add("CI", 3);
  add("CII.1", 3, 2);
  add("CII.1", 5, 2);
  add("CII.1", 5, 4);
  add("CII.2", 2);
  add("CII.2", 4);
  add("DI.1", 4, 2);
  add("DI.1", 5, 3);
  add("DI.2", 4);
  add("DI.2", 5);
  add("DI.3", 4);
  add("DII", 4);
  add("DII", 5);
  add("DIII.1", 4);
  add("DIII.1", 6);
  add("DIII.2", 5);
  add("EI", 6);
  add("EII", 6);
  add("EIII", 6);
  add("EIV", 6);
  add("EV", 7);
  add("EVI", 7);
  add("EVII", 7);
  add("EVIII", 8);
  add("EIX", 8);
  add("FI", 4);
  add("FII", 4);
  add("G", 2);
  add("DOUBLE.A", 1);
  add("DOUBLE.A", 2);
  add("DOUBLE.B", 2);
  add("DOUBLE.G", 2);
  return out;
}

}  // namespace qspair
