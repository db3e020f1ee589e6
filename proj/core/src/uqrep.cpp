#include "qspair/uqrep.hpp"

#include <algorithm>

namespace qspair {

std::map<WeightVec, std::vector<int>, WeightLess> Carrier::weight_blocks() const {
  std::map<WeightVec, std::vector<int>, WeightLess> out;
  for (int b = 0; b < dim(); ++b) out[weights[b]].push_back(b);
  return out;
}

// ---------------------------------------------------------------------------
// build_module
//
// Basis vectors are lowering words y_{i_1} ... y_{i_k} v_lambda. The
// contravariant form on words is computed by commuting a raising generator
// through the word; a word set is independent in L(lambda) exactly when its
// Gram matrix is nonsingular, because the form descends nondegenerately to
// every weight space of the simple quotient.
// ---------------------------------------------------------------------------

namespace {

using Word = std::vector<int>;

struct FormContext {
  const RootDatum* rd;
  WeightVec lambda;
  std::map<std::pair<Word, Word>, Scalar> memo;

  // (q^k - q^-k)/(q_i - q_i^-1) for integer k
  Scalar bracket(long k, int i) const {
    if (k == 0) return Scalar(0);
    Scalar num = Scalar::v_power(2 * k) - Scalar::v_power(-2 * k);
    Scalar den = Scalar::v_power(2 * rd->d(i)) - Scalar::v_power(-2 * rd->d(i));
    return num / den;
  }

  // x_i applied to the word: drop each matching letter with the torus factor
  // evaluated on the tail weight
  std::vector<std::pair<Word, Scalar>> x_apply(int i, const Word& w) {
    std::vector<std::pair<Word, Scalar>> out;
    // tail weights: tail_p = lambda - sum_{l>p} alpha_{w_l}
    std::vector<WeightVec> tails(w.size());
    WeightVec acc = lambda;
    for (int p = static_cast<int>(w.size()) - 1; p >= 0; --p) {
      tails[p] = acc;
      acc = acc - rd->simple_root(w[p]);
    }
    for (std::size_t p = 0; p < w.size(); ++p) {
      if (w[p] != i) continue;
      Rat k = rd->inner(rd->simple_root(i), tails[p]);
      if (!is_integer(k)) throw StructuralViolation("non-integral torus exponent in form recursion");
      Scalar c = bracket(k.get_num().get_si(), i);
      if (c.is_zero()) continue;
      Word rest;
      rest.reserve(w.size() - 1);
      for (std::size_t l = 0; l < w.size(); ++l)
        if (l != p) rest.push_back(w[l]);
      out.emplace_back(std::move(rest), std::move(c));
    }
    // merge duplicate subwords so callers multiply each big form value once
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Word, Scalar>> merged;
    for (auto& [w2, c2] : out) {
      if (!merged.empty() && merged.back().first == w2)
        merged.back().second += c2;
      else
        merged.emplace_back(std::move(w2), std::move(c2));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.second.is_zero(); }),
                 merged.end());
    return merged;
  }

  const Scalar& form(const Word& a, const Word& b) {
    static const Scalar kZero{0}, kOne{1};
    if (a.empty()) return b.empty() ? kOne : kZero;
    if (a.size() != b.size()) return kZero;
    {
      Word sa = a, sb = b;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return kZero;
    }
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Word tail(a.begin() + 1, a.end());
    Scalar out;
    for (const auto& [w, c] : x_apply(a[0], b)) out += c * form(tail, w);
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }
};

}  // namespace

ModuleRep build_module(const RootDatum& rd, const WeightVec& lambda, const Int& dim_cap) {
  if (!rd.is_dominant_integral(lambda)) throw DomainError("build_module needs a dominant integral weight");
  Int weyl = rd.weyl_dimension(lambda);
  if (weyl > dim_cap)
    throw ResourceLimit("module dimension " + weyl.get_str() + " exceeds the cap " + dim_cap.get_str());

  const int n = rd.rank();
  FormContext ctx{&rd, lambda, {}};

  std::vector<Word> basis_words;                    // global basis, v_lambda first
  std::vector<WeightVec> basis_weights;
  std::map<WeightVec, std::vector<int>, WeightLess> block_of;  // weight -> basis indices
  std::map<Word, int> index_of_word;
  // Gram matrix and its per-block storage for coordinate solves
  std::map<WeightVec, ScalarMat, WeightLess> gram_of;

  basis_words.push_back({});
  basis_weights.push_back(lambda);
  block_of[lambda] = {0};
  index_of_word[{}] = 0;
  {
    ScalarMat g(1, 1);
    g.at(0, 0) = Scalar(1);
    gram_of[lambda] = g;
  }

  std::vector<WeightVec> frontier = {lambda};
  while (!frontier.empty()) {
    // candidates for the next level, grouped by weight
    std::map<WeightVec, std::vector<Word>, WeightLess> candidates;
    for (const auto& nu : frontier)
      for (int idx : block_of[nu])
        for (int i = 0; i < n; ++i) {
          Word w = basis_words[idx];
          w.insert(w.begin(), i);
          candidates[nu - rd.simple_root(i)].push_back(std::move(w));
        }

    std::vector<WeightVec> next;
    for (auto& [mu, words] : candidates) {
      // greedy independent subset via the Gram matrix
      std::vector<std::size_t> chosen_idx;
      std::vector<std::vector<Scalar>> g_rows;  // pairings of chosen words vs all candidates
      for (std::size_t wi = 0; wi < words.size(); ++wi) {
        std::vector<Scalar> pair_all(words.size());
        for (std::size_t c = 0; c < words.size(); ++c) pair_all[c] = ctx.form(words[wi], words[c]);
        bool indep;
        if (chosen_idx.empty()) {
          indep = std::any_of(pair_all.begin(), pair_all.end(), [](const Scalar& s) { return !s.is_zero(); });
        } else {
          // the word lies in the span of the chosen ones iff the solution of
          // the small Gram system reproduces its pairings against every
          // candidate (the candidates span the weight space)
          int k = static_cast<int>(chosen_idx.size());
          ScalarMat gm(k, k);
          std::vector<Scalar> rhs(k);
          for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) gm.at(r, c) = g_rows[r][chosen_idx[c]];
            rhs[r] = g_rows[r][wi];
          }
          std::vector<Scalar> z = solve_square(gm, rhs);
          indep = false;
          for (std::size_t c = 0; c < words.size() && !indep; ++c) {
            Scalar proj;
            for (int r = 0; r < k; ++r)
              if (!z[r].is_zero() && !g_rows[r][c].is_zero()) proj += z[r] * g_rows[r][c];
            if (!(proj == pair_all[c])) indep = true;
          }
        }
        if (indep) {
          chosen_idx.push_back(wi);
          g_rows.push_back(std::move(pair_all));
        }
      }
      if (chosen_idx.empty()) continue;
      std::vector<Word> chosen;
      for (std::size_t wi : chosen_idx) chosen.push_back(words[wi]);
      if (Int(static_cast<long>(basis_words.size() + chosen.size())) > weyl)
        throw StructuralViolation("module construction exceeded the Weyl dimension");
      std::vector<int> indices;
      for (const auto& w : chosen) {
        int idx = static_cast<int>(basis_words.size());
        indices.push_back(idx);
        index_of_word[w] = idx;
        basis_words.push_back(w);
        basis_weights.push_back(mu);
      }
      block_of[mu] = indices;
      ScalarMat g2(static_cast<int>(chosen.size()), static_cast<int>(chosen.size()));
      for (std::size_t r = 0; r < chosen.size(); ++r)
        for (std::size_t c = 0; c < chosen.size(); ++c)
          g2.at(static_cast<int>(r), static_cast<int>(c)) = ctx.form(chosen[r], chosen[c]);
      gram_of[mu] = g2;
      next.push_back(mu);
    }
    frontier = std::move(next);
  }

  if (Int(static_cast<long>(basis_words.size())) != weyl)
    throw StructuralViolation("constructed dimension disagrees with the Weyl dimension");

  ModuleRep m;
  m.rd = rd;
  m.weights = basis_weights;
  m.highest = lambda;
  const int dim = m.dim();
  m.x.assign(n, ScalarMat(dim, dim));
  m.y.assign(n, ScalarMat(dim, dim));

  // coordinates of a vector with known pairings against a block's basis
  auto solve_block = [&](const WeightVec& mu, const std::vector<Scalar>& pairings) {
    return solve_square(gram_of.at(mu), pairings);
  };

  for (int b = 0; b < dim; ++b) {
    const Word& w = basis_words[b];
    const WeightVec& nu = basis_weights[b];
    for (int i = 0; i < n; ++i) {
      // y_i b
      WeightVec mu = nu - rd.simple_root(i);
      auto blk = block_of.find(mu);
      if (blk != block_of.end()) {
        Word img = w;
        img.insert(img.begin(), i);
        // image words that were picked as basis vectors need no solve
        if (auto hit = index_of_word.find(img); hit != index_of_word.end()) {
          m.y[i].at(hit->second, b) = Scalar(1);
        } else {
          std::vector<Scalar> pair(blk->second.size());
          bool any = false;
          for (std::size_t r = 0; r < blk->second.size(); ++r) {
            pair[r] = ctx.form(basis_words[blk->second[r]], img);
            any = any || !pair[r].is_zero();
          }
          if (any) {
            auto coords = solve_block(mu, pair);
            for (std::size_t r = 0; r < coords.size(); ++r)
              if (!coords[r].is_zero()) m.y[i].at(blk->second[r], b) = coords[r];
          }
        }
      }
      // x_i b
      WeightVec up = nu + rd.simple_root(i);
      auto ublk = block_of.find(up);
      if (ublk != block_of.end()) {
        auto expansion = ctx.x_apply(i, w);
        std::vector<Scalar> pair(ublk->second.size());
        bool any = false;
        for (std::size_t r = 0; r < ublk->second.size(); ++r) {
          Scalar acc;
          for (const auto& [ww, c] : expansion) {
            Scalar f = ctx.form(basis_words[ublk->second[r]], ww);
            if (!f.is_zero()) acc += c * f;
          }
          pair[r] = acc;
          any = any || !pair[r].is_zero();
        }
        if (any) {
          auto coords = solve_block(up, pair);
          for (std::size_t r = 0; r < coords.size(); ++r)
            if (!coords[r].is_zero()) m.x[i].at(ublk->second[r], b) = coords[r];
        }
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

void validate_module(const ModuleRep& m) {
  const RootDatum& rd = m.rd;
  const int n = rd.rank();
  const int dim = m.dim();
  auto fail = [](const std::string& s) { throw StructuralViolation("module invariant failed: " + s); };

  if (!m.highest) fail("missing highest weight");
  if (rd.weyl_dimension(*m.highest) != dim) fail("dimension differs from the Weyl formula");
  if (!(m.weights[0] == *m.highest)) fail("v_lambda is not the first basis vector");

  // weight grading
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        if (!m.x[i].at(r, c).is_zero() && !(m.weights[r] == m.weights[c] + rd.simple_root(i)))
          fail("x breaks the weight grading");
        if (!m.y[i].at(r, c).is_zero() && !(m.weights[r] == m.weights[c] - rd.simple_root(i)))
          fail("y breaks the weight grading");
      }

  // top block one-dimensional and killed by every x_i
  int top_count = 0;
  for (int b = 0; b < dim; ++b)
    if (m.weights[b] == *m.highest) ++top_count;
  if (top_count != 1) fail("highest weight space is not a line");
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < dim; ++r)
      if (!m.x[i].at(r, 0).is_zero()) fail("x does not kill the highest weight vector");

  // joint kernel of the x_i is exactly the top line
  {
    ScalarMat stacked(dim * n, dim);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) stacked.at(i * dim + r, c) = m.x[i].at(r, c);
    if (kernel_basis(stacked).size() != 1) fail("joint raising kernel is not one-dimensional");
  }

  // [x_i, y_j] = delta_ij (t_i - t_i^{-1})/(q_i - q_i^{-1})
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ScalarMat comm = m.x[i] * m.y[j] - m.y[j] * m.x[i];
      if (i != j) {
        if (!comm.is_zero()) fail("mixed commutator is nonzero");
        continue;
      }
      Scalar den = Scalar::v_power(2 * rd.d(i)) - Scalar::v_power(-2 * rd.d(i));
      for (int b = 0; b < dim; ++b) {
        Rat k = rd.inner(rd.simple_root(i), m.weights[b]);
        Scalar expect = (Scalar::q_power(k) - Scalar::q_power(-k)) / den;
        comm.at(b, b) -= expect;
      }
      if (!comm.is_zero()) fail("Cartan commutator is wrong");
    }

  // quantum Serre relations in the x's and in the y's
  auto serre = [&](const std::vector<ScalarMat>& g, int i, int j) {
    int bound = 1 - rd.cartan(i, j);
    ScalarMat acc(dim, dim);
    std::vector<ScalarMat> powers = {ScalarMat::identity(dim)};
    for (int k = 1; k <= bound; ++k) powers.push_back(powers.back() * g[i]);
    for (int k = 0; k <= bound; ++k) {
      Scalar coeff = gauss_binomial(bound, k, rd.d(i));
      if (k % 2 == 1) coeff = -coeff;
      acc = acc + (powers[bound - k] * g[j] * powers[k]).scaled(coeff);
    }
    return acc.is_zero();
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!serre(m.x, i, j)) fail("Serre relation fails for x");
      if (!serre(m.y, i, j)) fail("Serre relation fails for y");
    }
}

// ---------------------------------------------------------------------------
// actions
// ---------------------------------------------------------------------------

Operator act_tau(const Carrier& m, const WeightVec& mu) {
  ScalarMat out(m.dim(), m.dim());
  for (int b = 0; b < m.dim(); ++b) out.at(b, b) = Scalar::q_power(m.rd.inner(m.weights[b], mu));
  return Operator(std::move(out), WeightVec(m.rd.rank()));
}

Operator ad_r_x(const Carrier& m, int i, int power, const Operator& a) {
  if (power < 1) throw DomainError("ad_r needs power >= 1");
  Operator ti_inv = act_tau(m, -m.rd.simple_root(i));
  ScalarMat tix = ti_inv.mat * m.x[i];
  ScalarMat out = a.mat;
  for (int k = 0; k < power; ++k) out = ti_inv.mat * out * m.x[i] - tix * out;
  out = out.scaled(gauss_factorial(power, m.rd.d(i)).inverse());
  std::optional<WeightVec> w;
  if (a.weight) w = *a.weight + m.rd.simple_root(i) * Rat(power);
  return Operator(std::move(out), std::move(w));
}

Operator ad_r_y(const Carrier& m, int i, int power, const Operator& a) {
  if (power < 1) throw DomainError("ad_r needs power >= 1");
  Operator ti = act_tau(m, m.rd.simple_root(i));
  Operator ti_inv = act_tau(m, -m.rd.simple_root(i));
  ScalarMat out = a.mat;
  for (int k = 0; k < power; ++k) out = out * m.y[i] - m.y[i] * ti.mat * out * ti_inv.mat;
  out = out.scaled(gauss_factorial(power, m.rd.d(i)).inverse());
  std::optional<WeightVec> w;
  if (a.weight) w = *a.weight - m.rd.simple_root(i) * Rat(power);
  return Operator(std::move(out), std::move(w));
}

Carrier tensor_module(const Carrier& a, const Carrier& b) {
  if (a.rd.name() != b.rd.name()) throw DomainError("tensor factors over different root data");
  Carrier out;
  out.rd = a.rd;
  const int da = a.dim(), db = b.dim(), n = a.rd.rank();
  out.weights.reserve(static_cast<std::size_t>(da) * db);
  for (int r = 0; r < da; ++r)
    for (int s = 0; s < db; ++s) out.weights.push_back(a.weights[r] + b.weights[s]);
  out.x.assign(n, ScalarMat(da * db, da * db));
  out.y.assign(n, ScalarMat(da * db, da * db));
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < da; ++r)
      for (int rr = 0; rr < da; ++rr) {
        const Scalar& xa = a.x[i].at(r, rr);
        const Scalar& ya = a.y[i].at(r, rr);
        if (!xa.is_zero())  // x (x) 1
          for (int s = 0; s < db; ++s) out.x[i].at(r * db + s, rr * db + s) += xa;
        if (!ya.is_zero())  // y (x) t^{-1}
          for (int s = 0; s < db; ++s) {
            Scalar t = Scalar::q_power(-b.rd.inner(b.weights[s], b.rd.simple_root(i)));
            out.y[i].at(r * db + s, rr * db + s) += ya * t;
          }
      }
    for (int s = 0; s < db; ++s)
      for (int ss = 0; ss < db; ++ss) {
        const Scalar& xb = b.x[i].at(s, ss);
        const Scalar& yb = b.y[i].at(s, ss);
        if (!xb.is_zero())  // t (x) x
          for (int r = 0; r < da; ++r) {
            Scalar t = Scalar::q_power(a.rd.inner(a.weights[r], a.rd.simple_root(i)));
            out.x[i].at(r * db + s, r * db + ss) += t * xb;
          }
        if (!yb.is_zero())  // 1 (x) y
          for (int r = 0; r < da; ++r) out.y[i].at(r * db + s, r * db + ss) += yb;
      }
  }
  return out;
}

std::vector<Scalar> dual_right_action(const std::vector<Scalar>& covec, const ScalarMat& generator) {
  if (static_cast<int>(covec.size()) != generator.rows()) throw DomainError("covector length mismatch");
  std::vector<Scalar> out(generator.cols());
  for (int r = 0; r < generator.rows(); ++r) {
    if (covec[r].is_zero()) continue;
    for (int c = 0; c < generator.cols(); ++c) {
      const Scalar& g = generator.at(r, c);
      if (!g.is_zero()) out[c] += covec[r] * g;
    }
  }
  return out;
}

}  // namespace qspair
