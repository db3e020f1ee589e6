#include "qspair/qsp.hpp"

#include <algorithm>

namespace qspair {

// ---------------------------------------------------------------------------
// PairSpec / PartnerParams
// ---------------------------------------------------------------------------

PairSpec PairSpec::symbolic(const InvolutionDatum& inv) {
  PairSpec spec;
  spec.inv = inv;
  const int n = inv.n();
  spec.s.assign(n, Scalar(0));
  spec.d.assign(n, Scalar(1));
  for (int i = 0; i < n; ++i) {
    if (inv.S[i]) spec.s[i] = Scalar::variable(var_s(i + 1));
    if (inv.D[i]) spec.d[i] = Scalar::variable(var_d(i + 1));
  }
  return spec;
}

PairSpec PairSpec::with_params(const InvolutionDatum& inv, const std::map<int, Scalar>& s_values,
                               const std::map<int, Scalar>& d_values) {
  PairSpec spec = symbolic(inv);
  for (const auto& [node, val] : s_values) {
    if (node < 0 || node >= inv.n() || !inv.S[node])
      throw DomainError("s parameter is only available on S nodes");
    spec.s[node] = val;
  }
  for (const auto& [node, val] : d_values) {
    if (node < 0 || node >= inv.n() || !inv.D[node])
      throw DomainError("d parameter is only available on D nodes");
    if (val.is_zero()) throw DomainError("d parameter must be invertible");
    spec.d[node] = val;
  }
  return spec;
}

PartnerParams PartnerParams::symbolic(const InvolutionDatum& inv) {
  PartnerParams p;
  const int n = inv.n();
  p.s_prime.assign(n, Scalar(0));
  p.c.assign(n, Scalar(1));
  for (int i = 0; i < n; ++i) {
    if (inv.S[i]) p.s_prime[i] = Scalar::variable(var_sprime(i + 1));
    if (inv.D[i]) p.c[i] = Scalar::variable(var_c(i + 1));
  }
  return p;
}

ScalarMat CoidealPresentation::stacked_shifted() const {
  ScalarMat out(dim * static_cast<int>(gens.size()), dim);
  int base = 0;
  for (const auto& g : gens) {
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        Scalar v = g.op.mat.at(r, c);
        if (r == c) v -= g.counit;
        if (!v.is_zero()) out.at(base + r, c) = std::move(v);
      }
    base += dim;
  }
  return out;
}

// ---------------------------------------------------------------------------
// generator operators
// ---------------------------------------------------------------------------

namespace {

// node scales for the chi_c twist: x_i -> xs[i] x_i, y_i -> ys[i] y_i;
// trivial on pi_theta, so only the seed scale enters the ad_r sequences
struct GenScale {
  std::vector<Scalar> xs, ys;
  static GenScale trivial(int n) {
    GenScale g;
    g.xs.assign(n, Scalar(1));
    g.ys.assign(n, Scalar(1));
    return g;
  }
};

Operator theta_tilde_scaled(const PairSpec& spec, int i, const Carrier& m, const GenScale& scale) {
  const InvolutionDatum& inv = spec.inv;
  if (inv.in_pi_theta(i)) throw DomainError("theta_tilde_y is defined off pi_theta");
  auto it = inv.seqs.find(i);
  if (it == inv.seqs.end()) throw DomainError("missing ad_r sequence data");
  const ThetaSeq& seq = it->second;
  for (const auto& f : seq.factors)
    if (!scale.xs[f.node].is_one())
      throw StructuralViolation("twist touches a pi_theta generator inside an ad_r sequence");
  Operator op(act_tau(m, -m.rd.simple_root(seq.seed)).mat * m.x[seq.seed],
              m.rd.simple_root(seq.seed));
  // rightmost displayed factor acts first
  for (auto f = seq.factors.rbegin(); f != seq.factors.rend(); ++f)
    op = ad_r_x(m, f->node, f->power, op);
  Scalar factor = scale.xs[seq.seed] * Scalar(seq.sign);
  if (!factor.is_one()) op.mat = op.mat.scaled(factor);
  return op;
}

Operator B_op_scaled(const PairSpec& spec, int i, const Carrier& m, const GenScale& scale,
                     const std::vector<Scalar>& s, const std::vector<Scalar>& d,
                     const Scalar& extra_twist = Scalar(1)) {
  const InvolutionDatum& inv = spec.inv;
  Operator ti = act_tau(m, m.rd.simple_root(i));
  if (inv.in_pi_theta(i)) return Operator(m.y[i] * ti.mat, std::nullopt);
  Operator tt = theta_tilde_scaled(spec, i, m, scale);
  ScalarMat out = (m.y[i] * ti.mat).scaled(scale.ys[i]) +
                  (tt.mat * ti.mat).scaled(d[i] * extra_twist);
  if (!s[i].is_zero()) out = out + ti.mat.scaled(s[i]);
  return Operator(std::move(out), std::nullopt);
}

}  // namespace

Operator theta_tilde_y(const PairSpec& spec, int i, const Carrier& m) {
  return theta_tilde_scaled(spec, i, m, GenScale::trivial(spec.inv.n()));
}

namespace {

Operator kappa_theta_tilde_scaled(const PairSpec& spec, int i, const Carrier& m,
                                  const GenScale& scale) {
  const InvolutionDatum& inv = spec.inv;
  if (inv.in_pi_theta(i)) throw DomainError("kappa_theta_tilde_y is defined off pi_theta");
  const ThetaSeq& seq = inv.seqs.at(i);
  Operator op(m.y[seq.seed], -m.rd.simple_root(seq.seed));
  int total = 0;
  for (const auto& f : seq.factors) total += f.power;
  for (auto f = seq.factors.rbegin(); f != seq.factors.rend(); ++f)
    op = ad_r_y(m, f->node, f->power, op);
  Scalar factor = scale.ys[seq.seed] * Scalar(seq.sign * (total % 2 == 0 ? 1 : -1));
  if (!factor.is_one()) op.mat = op.mat.scaled(factor);
  return op;
}

Operator C_op_scaled(const PairSpec& spec, int k, const Carrier& m, const GenScale& scale,
                     const std::vector<Scalar>& s, const std::vector<Scalar>& d) {
  const InvolutionDatum& inv = spec.inv;
  if (inv.in_pi_theta(k)) return Operator(m.x[k], m.rd.simple_root(k));
  Scalar qk2 = Scalar::v_power(4 * m.rd.d(k));
  Operator kappa = kappa_theta_tilde_scaled(spec, k, m, scale);
  Operator tk = act_tau(m, m.rd.simple_root(k));
  ScalarMat out = m.x[k].scaled(scale.xs[k]) + (kappa.mat * tk.mat).scaled(qk2 / d[inv.p[k]]);
  if (!s[k].is_zero())
    out = out + (tk.mat - ScalarMat::identity(m.dim())).scaled(qk2 * s[k]);
  return Operator(std::move(out), std::nullopt);
}

}  // namespace

Operator kappa_theta_tilde_y(const PairSpec& spec, int i, const Carrier& m) {
  return kappa_theta_tilde_scaled(spec, i, m, GenScale::trivial(spec.inv.n()));
}

Operator B_op(const PairSpec& spec, int i, const Carrier& m) {
  return B_op_scaled(spec, i, m, GenScale::trivial(spec.inv.n()), spec.s, spec.d);
}

Operator C_op(const PairSpec& spec, int k, const Carrier& m) {
  return C_op_scaled(spec, k, m, GenScale::trivial(spec.inv.n()), spec.s, spec.d);
}

// ---------------------------------------------------------------------------
// presentations
// ---------------------------------------------------------------------------

namespace {

CoidealPresentation presentation_scaled(const PairSpec& spec, const Carrier& m, const GenScale& scale,
                                        const std::vector<Scalar>& s, const std::vector<Scalar>& d) {
  const InvolutionDatum& inv = spec.inv;
  CoidealPresentation pres;
  pres.dim = m.dim();
  for (int j = 0; j < inv.n(); ++j) {
    if (!inv.in_pi_theta(j)) continue;
    pres.gens.push_back({"x_" + std::to_string(j + 1), Operator(m.x[j], m.rd.simple_root(j)), Scalar(0)});
    pres.gens.push_back({"y_" + std::to_string(j + 1), Operator(m.y[j], -m.rd.simple_root(j)), Scalar(0)});
    pres.gens.push_back({"t_" + std::to_string(j + 1), act_tau(m, m.rd.simple_root(j)), Scalar(1)});
  }
  for (const auto& row : inv.t_theta_basis) {
    WeightVec mu(inv.n());
    bool trivial = true;
    for (int i = 0; i < inv.n(); ++i) {
      mu.coords[i] = Rat(row[i]);
      trivial = trivial && row[i] == 0;
    }
    if (trivial) continue;
    pres.gens.push_back({"tau(" + mu.to_string() + ")", act_tau(m, mu), Scalar(1)});
  }
  for (int i = 0; i < inv.n(); ++i) {
    if (inv.in_pi_theta(i)) continue;
    pres.gens.push_back({"B_" + std::to_string(i + 1),
                         B_op_scaled(spec, i, m, scale, s, d), s[i]});
  }
  for (int k = 0; k < inv.n(); ++k) {
    pres.c_ops.push_back(C_op_scaled(spec, k, m, scale, s, d).mat);
    pres.theta_alpha.push_back(inv.theta(m.rd.simple_root(k)));
  }
  return pres;
}

}  // namespace

CoidealPresentation invariance_system(const PairSpec& spec, const Carrier& m) {
  return presentation_scaled(spec, m, GenScale::trivial(spec.inv.n()), spec.s, spec.d);
}

CoidealPresentation chi_c_presentation(const PairSpec& spec, const PartnerParams& partner,
                                       const Carrier& m) {
  const InvolutionDatum& inv = spec.inv;
  const int n = inv.n();
  for (int i = 0; i < n; ++i) {
    if (!inv.S[i] && !partner.s_prime[i].is_zero())
      throw DomainError("partner s' must vanish off S");
    if (!inv.D[i] && !partner.c[i].is_one()) throw DomainError("partner c must be one off D");
    if (partner.c[i].is_zero()) throw DomainError("partner c must be invertible");
  }
  GenScale scale = GenScale::trivial(n);
  for (int i = 0; i < n; ++i) {
    if (inv.in_pi_theta(i)) continue;
    WeightVec diff = inv.theta(m.rd.simple_root(i)) - m.rd.simple_root(i);
    Rat expo = m.rd.inner(m.rd.rho(), diff) / 2;
    Scalar gamma = Scalar::q_power(expo) * partner.c[i];
    scale.xs[i] = gamma.inverse();
    scale.ys[i] = gamma;
  }
  std::vector<Scalar> d2(n);
  for (int i = 0; i < n; ++i) d2[i] = partner.c[i] * partner.c[i] * spec.d[i];
  return presentation_scaled(spec, m, scale, partner.s_prime, d2);
}

// ---------------------------------------------------------------------------
// relations
// ---------------------------------------------------------------------------

std::string rel_name(RelKind r) {
  switch (r) {
    case RelKind::I: return "i";
    case RelKind::II: return "ii";
    case RelKind::III: return "iii";
    case RelKind::IV: return "iv";
    case RelKind::V: return "v";
    case RelKind::VI: return "vi";
  }
  return "?";
}

std::vector<RelationInstance> applicable_relations(const PairSpec& spec) {
  const InvolutionDatum& inv = spec.inv;
  const int n = inv.n();
  std::vector<RelationInstance> out;
  for (int i = 0; i < n; ++i) out.push_back({RelKind::I, i, -1});
  for (int j = 0; j < n; ++j) {
    if (!inv.in_pi_theta(j)) continue;
    for (int i = 0; i < n; ++i) out.push_back({RelKind::II, i, j});
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // The Serre-type relations with a pi_theta column index j and a twisted
      // row index i are not part of the presentation: that mixed interaction
      // is governed by relation (ii), and the printed correction term is a
      // documented mismatch there (see the unit test with the rank-3 AII
      // counterexample).
      bool mixed = !inv.in_pi_theta(i) && inv.in_pi_theta(j);
      switch (inv.rd.cartan(i, j)) {
        case 0: out.push_back({RelKind::III, i, j}); break;
        case -1:
          if (!mixed) out.push_back({RelKind::IV, i, j});
          break;
        case -2:
          if (!mixed) out.push_back({RelKind::V, i, j});
          break;
        case -3:
          if (!mixed) out.push_back({RelKind::VI, i, j});
          break;
        default: throw StructuralViolation("unexpected Cartan entry");
      }
    }
  return out;
}

namespace {

// [(ad_r Z_k) t_{p(k)}^{-2}] t_k t_{p(k)} as an operator
ScalarMat z_term(const PairSpec& spec, int k, const Carrier& m) {
  const InvolutionDatum& inv = spec.inv;
  const ThetaSeq& seq = inv.seqs.at(k);
  Operator op(act_tau(m, m.rd.simple_root(seq.seed) * Rat(-2)).mat, m.rd.simple_root(seq.seed) * Rat(-2));
  for (auto f = seq.factors.rbegin(); f != seq.factors.rend(); ++f)
    op = ad_r_x(m, f->node, f->power, op);
  ScalarMat out = op.mat * act_tau(m, m.rd.simple_root(k) + m.rd.simple_root(seq.seed)).mat;
  if (seq.sign < 0) out = out.scaled(Scalar(-1));
  return out;
}

Scalar qi_pow(const RootDatum& rd, int i, long e) { return Scalar::v_power(2 * rd.d(i) * e); }

}  // namespace

std::vector<RelationOutcome> verify_relation(const PairSpec& spec, const RelationInstance& instance,
                                             const std::vector<const Carrier*>& battery,
                                             std::optional<int> perturb_node) {
  const InvolutionDatum& inv = spec.inv;
  const RootDatum& rd = spec.rd();
  const int i = instance.i, j = instance.j;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) throw DomainError("relation " + rel_name(instance.rel) + ": " + msg);
  };
  if (battery.empty()) throw DomainError("empty module battery");

  switch (instance.rel) {
    case RelKind::I: break;
    case RelKind::II: need(j >= 0 && inv.in_pi_theta(j), "needs a pi_theta column node"); break;
    case RelKind::III: need(j >= 0 && rd.cartan(i, j) == 0, "needs a_ij = 0"); break;
    case RelKind::IV: need(j >= 0 && rd.cartan(i, j) == -1, "needs a_ij = -1"); break;
    case RelKind::V: need(j >= 0 && rd.cartan(i, j) == -2, "needs a_ij = -2"); break;
    case RelKind::VI: need(j >= 0 && rd.cartan(i, j) == -3, "needs a_ij = -3"); break;
  }

  std::vector<RelationOutcome> out;
  for (const Carrier* mp : battery) {
    const Carrier& m = *mp;
    auto B = [&](int k) {
      GenScale scale = GenScale::trivial(inv.n());
      Scalar extra(1);
      if (perturb_node && *perturb_node == k && !inv.in_pi_theta(k)) extra = Scalar::v_power(4);
      return B_op_scaled(spec, k, m, scale, spec.s, spec.d, extra).mat;
    };
    ScalarMat residual(m.dim(), m.dim());
    const bool i_free = !inv.in_pi_theta(i);
    const bool delta_ipi = i_free && inv.p[i] == i;

    switch (instance.rel) {
      case RelKind::I: {
        // tau(mu) B_i tau(-mu) = q^{-(mu, alpha_i)} B_i over the T_Theta basis
        ScalarMat Bi = B(i);
        for (const auto& row : inv.t_theta_basis) {
          WeightVec mu(inv.n());
          for (int t = 0; t < inv.n(); ++t) mu.coords[t] = Rat(row[t]);
          ScalarMat lhs = act_tau(m, mu).mat * Bi * act_tau(m, -mu).mat;
          ScalarMat rhs = Bi.scaled(Scalar::q_power(-rd.inner(mu, rd.simple_root(i))));
          residual = residual + (lhs - rhs);
        }
        break;
      }
      case RelKind::II: {
        ScalarMat Bi = B(i);
        ScalarMat txj = act_tau(m, -rd.simple_root(j)).mat * m.x[j];
        residual = txj * Bi - Bi * txj;
        if (i == j) {
          Scalar den = qi_pow(rd, j, 1) - qi_pow(rd, j, -1);
          ScalarMat tdiff = act_tau(m, rd.simple_root(j)).mat - act_tau(m, -rd.simple_root(j)).mat;
          residual = residual - tdiff.scaled(den.inverse());
        }
        break;
      }
      case RelKind::III: {
        ScalarMat Bi = B(i), Bj = B(j);
        residual = Bi * Bj - Bj * Bi;
        if (i_free && inv.p[i] == j) {
          Scalar inv_den = (qi_pow(rd, i, 1) - qi_pow(rd, i, -1)).inverse();
          ScalarMat corr =
              z_term(spec, i, m).scaled(spec.d[i]) + z_term(spec, inv.p[i], m).scaled(spec.d[inv.p[i]]);
          residual = residual + corr.scaled(inv_den);
        }
        break;
      }
      case RelKind::IV: {
        ScalarMat Bi = B(i), Bj = B(j);
        Scalar qi = qi_pow(rd, i, 1), qiinv = qi_pow(rd, i, -1);
        ScalarMat lhs = Bi * Bi * Bj - (Bi * Bj * Bi).scaled(qi + qiinv) + Bj * Bi * Bi;
        ScalarMat rhs(m.dim(), m.dim());
        if (delta_ipi) rhs = rhs + (z_term(spec, i, m) * Bj).scaled(qiinv);
        if (!inv.in_pi_theta(j) && inv.p[j] == i) {
          ScalarMat tji = act_tau(m, rd.simple_root(i) - rd.simple_root(j)).mat;
          ScalarMat tij = act_tau(m, rd.simple_root(j) - rd.simple_root(i)).mat;
          ScalarMat inner = tji.scaled(spec.d[i] * qiinv) + tij.scaled(spec.d[j] * qi * qi);
          rhs = rhs - (Bi * inner).scaled(qi + qiinv);
        }
        residual = lhs - rhs;
        break;
      }
      case RelKind::V: {
        ScalarMat Bi = B(i), Bj = B(j);
        Scalar qi = qi_pow(rd, i, 1), qi2 = qi_pow(rd, i, 2), qim2 = qi_pow(rd, i, -2);
        Scalar mid = qi2 + Scalar(1) + qim2;
        ScalarMat lhs = Bi * Bi * Bi * Bj - (Bi * Bi * Bj * Bi).scaled(mid) +
                        (Bi * Bj * Bi * Bi).scaled(mid) - Bj * Bi * Bi * Bi;
        ScalarMat rhs(m.dim(), m.dim());
        if (delta_ipi) {
          Scalar f = qi_pow(rd, i, -1) * (qi + qi_pow(rd, i, -1)) * (qi + qi_pow(rd, i, -1));
          rhs = (Bi * Bj - Bj * Bi).scaled(f);
        }
        residual = lhs - rhs;
        break;
      }
      case RelKind::VI: {
        ScalarMat Bi = B(i), Bj = B(j);
        auto qp = [&](long e) { return qi_pow(rd, i, e); };
        ScalarMat B2 = Bi * Bi, B3 = Bi * Bi * Bi, B4 = Bi * Bi * Bi * Bi;
        ScalarMat lhs = B4 * Bj + Bj * B4 -
                        (B3 * Bj * Bi + Bi * Bj * B3).scaled(qp(3) + qp(1) + qp(-1) + qp(-3)) +
                        (B2 * Bj * B2).scaled(qp(4) + qp(2) + Scalar(2) + qp(-2) + qp(-4));
        ScalarMat rhs = (B2 * Bj + Bj * B2)
                            .scaled(qp(-5) + 2 * qp(-3) + 4 * qp(-1) + 2 * qp(1) + qp(3)) -
                        (Bi * Bj * Bi)
                            .scaled(qp(4) + 4 * qp(2) + Scalar(5) + 5 * qp(-2) + 4 * qp(-4) + qp(-6)) -
                        Bj.scaled(qp(2) + Scalar(1) + qp(-2));
        residual = lhs - rhs;
        break;
      }
    }

    RelationOutcome oc;
    oc.instance = instance;
    oc.module_highest = m.highest ? *m.highest : WeightVec(rd.rank());
    int r, c;
    if (residual.first_nonzero(r, c)) {
      oc.zero = false;
      oc.row = r;
      oc.col = c;
      oc.value = residual.at(r, c).to_string();
    } else {
      oc.zero = true;
    }
    out.push_back(std::move(oc));
  }
  return out;
}

}  // namespace qspair
