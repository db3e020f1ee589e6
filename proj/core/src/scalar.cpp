#include "qspair/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace qspair {

bool is_integer(const Rat& r) { return r.get_den() == 1; }

std::string var_name(VarId v) {
  auto kind = static_cast<SymKind>(v >> 16);
  int index = static_cast<int>(v & 0xffff);
  switch (kind) {
    case SymKind::V: return "v";
    case SymKind::S: return "s_" + std::to_string(index);
    case SymKind::D: return "d_" + std::to_string(index);
    case SymKind::C: return "c_" + std::to_string(index);
    case SymKind::SPrime: return "s'_" + std::to_string(index);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

std::uint32_t Monomial::exponent(VarId v) const {
  for (const auto& [var, exp] : factors)
    if (var == v) return exp;
  return 0;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  // lex with larger VarId more significant; factors are sorted descending
  std::size_t ia = 0, ib = 0;
  while (ia < a.factors.size() && ib < b.factors.size()) {
    const auto& [va, ea] = a.factors[ia];
    const auto& [vb, eb] = b.factors[ib];
    if (va != vb) return va > vb ? 1 : -1;  // extra variable with exp > 0 wins
    if (ea != eb) return ea > eb ? 1 : -1;
    ++ia, ++ib;
  }
  if (ia < a.factors.size()) return 1;
  if (ib < b.factors.size()) return -1;
  return 0;
}

bool Monomial::divides(const Monomial& b) const {
  for (const auto& [var, exp] : factors)
    if (b.exponent(var) < exp) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& b) const {
  Monomial out;
  out.factors.reserve(factors.size() + b.factors.size());
  std::size_t ia = 0, ib = 0;
  while (ia < factors.size() || ib < b.factors.size()) {
    if (ib == b.factors.size() || (ia < factors.size() && factors[ia].first > b.factors[ib].first)) {
      out.factors.push_back(factors[ia++]);
    } else if (ia == factors.size() || b.factors[ib].first > factors[ia].first) {
      out.factors.push_back(b.factors[ib++]);
    } else {
      out.factors.emplace_back(factors[ia].first, factors[ia].second + b.factors[ib].second);
      ++ia, ++ib;
    }
  }
  return out;
}

Monomial Monomial::operator/(const Monomial& b) const {
  Monomial out;
  std::size_t ib = 0;
  for (const auto& [var, exp] : factors) {
    std::uint32_t sub = 0;
    while (ib < b.factors.size() && b.factors[ib].first > var) ++ib;
    if (ib < b.factors.size() && b.factors[ib].first == var) sub = b.factors[ib].second;
    if (sub > exp) throw DomainError("monomial division is not exact");
    if (exp > sub) out.factors.emplace_back(var, exp - sub);
  }
  return out;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (const auto& [var, exp] : a.factors) {
    std::uint32_t e = std::min(exp, b.exponent(var));
    if (e > 0) out.factors.emplace_back(var, e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

Poly Poly::constant(Int c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(Monomial{}, std::move(c));
  return p;
}

Poly Poly::variable(VarId v, std::uint32_t exp) {
  Poly p;
  if (exp == 0) return constant(1);
  Monomial m;
  m.factors.emplace_back(v, exp);
  p.terms_.emplace_back(std::move(m), Int(1));
  return p;
}

Poly Poly::from_sorted_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

const Poly::Term& Poly::leading() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_.front();
}

Poly Poly::operator-() const {
  Poly out;
  out.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.terms_.emplace_back(m, -c);
  return out;
}

Poly Poly::operator+(const Poly& b) const {
  Poly out;
  out.terms_.reserve(terms_.size() + b.terms_.size());
  std::size_t ia = 0, ib = 0;
  while (ia < terms_.size() && ib < b.terms_.size()) {
    int cmp = Monomial::compare(terms_[ia].first, b.terms_[ib].first);
    if (cmp > 0) {
      out.terms_.push_back(terms_[ia++]);
    } else if (cmp < 0) {
      out.terms_.push_back(b.terms_[ib++]);
    } else {
      Int c = terms_[ia].second + b.terms_[ib].second;
      if (c != 0) out.terms_.emplace_back(terms_[ia].first, std::move(c));
      ++ia, ++ib;
    }
  }
  while (ia < terms_.size()) out.terms_.push_back(terms_[ia++]);
  while (ib < b.terms_.size()) out.terms_.push_back(b.terms_[ib++]);
  return out;
}

Poly Poly::operator-(const Poly& b) const { return *this + (-b); }

Poly Poly::mul_term(const Monomial& m, const Int& c) const {
  Poly out;
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [tm, tc] : terms_) out.terms_.emplace_back(tm * m, tc * c);
  return out;
}

namespace {

// Dense exponent-grid packing for few-variable polynomials. Indices order
// the grid compatibly with the term order (higher variables get the larger
// strides), so grid order equals lex order.
struct Packing {
  std::vector<VarId> vars;  // ascending id
  std::vector<std::size_t> bounds, strides;
  std::size_t size = 1;

  static std::optional<Packing> make(std::initializer_list<const Poly*> polys, std::size_t cap) {
    Packing p;
    for (const Poly* poly : polys)
      for (const auto& [m, c] : poly->terms())
        for (const auto& [var, exp] : m.factors)
          if (std::find(p.vars.begin(), p.vars.end(), var) == p.vars.end()) p.vars.push_back(var);
    std::sort(p.vars.begin(), p.vars.end());
    if (p.vars.size() > 6) return std::nullopt;
    p.bounds.assign(p.vars.size(), 1);
    for (const Poly* poly : polys)
      for (std::size_t k = 0; k < p.vars.size(); ++k)
        p.bounds[k] = std::max<std::size_t>(p.bounds[k], poly->degree(p.vars[k]) + 1);
    p.strides.assign(p.vars.size(), 1);
    for (std::size_t k = 0; k < p.vars.size(); ++k) {
      if (k > 0) p.strides[k] = p.strides[k - 1] * p.bounds[k - 1];
      if (p.bounds[k] > cap / p.strides[k]) return std::nullopt;
    }
    p.size = p.vars.empty() ? 1 : p.strides.back() * p.bounds.back();
    if (p.size > cap) return std::nullopt;
    return p;
  }

  // packing bounds large enough for a product of the two polynomials
  static std::optional<Packing> make_product(const Poly& a, const Poly& b, std::size_t cap) {
    auto p = make({&a, &b}, cap);
    if (!p) return std::nullopt;
    Packing q = *p;
    for (std::size_t k = 0; k < q.vars.size(); ++k) {
      std::size_t bound = a.degree(q.vars[k]) + b.degree(q.vars[k]) + 1;
      q.bounds[k] = bound;
    }
    q.strides.assign(q.vars.size(), 1);
    for (std::size_t k = 0; k < q.vars.size(); ++k) {
      if (k > 0) q.strides[k] = q.strides[k - 1] * q.bounds[k - 1];
      if (q.bounds[k] > cap / q.strides[k]) return std::nullopt;
    }
    q.size = q.vars.empty() ? 1 : q.strides.back() * q.bounds.back();
    if (q.size > cap) return std::nullopt;
    return q;
  }

  std::size_t index_of(const Monomial& m) const {
    std::size_t idx = 0;
    for (const auto& [var, exp] : m.factors) {
      std::size_t k = std::lower_bound(vars.begin(), vars.end(), var) - vars.begin();
      idx += strides[k] * exp;
    }
    return idx;
  }

  Monomial monomial_at(std::size_t idx) const {
    // emitted with descending variable ids, matching Monomial's layout
    Monomial m;
    for (std::size_t k = vars.size(); k-- > 0;) {
      std::size_t e = idx / strides[k];
      idx %= strides[k];
      if (e > 0) m.factors.emplace_back(vars[k], static_cast<std::uint32_t>(e));
    }
    return m;
  }

  // componentwise divisibility of grid indices
  bool divides_index(std::size_t lead, std::size_t idx) const {
    for (std::size_t k = vars.size(); k-- > 0;) {
      std::size_t el = lead / strides[k], ei = idx / strides[k];
      if (el > ei) return false;
      lead %= strides[k];
      idx %= strides[k];
    }
    return true;
  }
};

constexpr std::size_t kGridCap = std::size_t(1) << 21;

}  // namespace

#ifdef QSPAIR_MUL_TRACE
std::size_t g_mul_packed = 0, g_mul_map = 0, g_mul_small = 0;
struct MulTraceDump {
  ~MulTraceDump() {
    fprintf(stderr, "mul packed=%zu map=%zu small=%zu\n", g_mul_packed, g_mul_map, g_mul_small);
  }
} g_mul_dump;
#define QSPAIR_COUNT(x) ++x
#else
#define QSPAIR_COUNT(x)
#endif

Poly Poly::operator*(const Poly& b) const {
  if (is_zero() || b.is_zero()) return Poly();
  if (terms_.size() == 1) { QSPAIR_COUNT(g_mul_small); return b.mul_term(terms_[0].first, terms_[0].second); }
  if (b.terms_.size() == 1) { QSPAIR_COUNT(g_mul_small); return mul_term(b.terms_[0].first, b.terms_[0].second); }
  if (auto p = Packing::make_product(*this, b, kGridCap)) {
    QSPAIR_COUNT(g_mul_packed);
    const std::size_t pairs = terms_.size() * b.terms_.size();
    std::vector<std::size_t> ib(b.terms_.size());
    for (std::size_t t = 0; t < b.terms_.size(); ++t) ib[t] = p->index_of(b.terms_[t].first);
    if (p->size <= 1u << 14 || pairs * 2 >= p->size) {
      // dense convolution
      std::vector<Int> conv(p->size);
      for (const auto& [ma, ca] : terms_) {
        std::size_t base = p->index_of(ma);
        for (std::size_t t = 0; t < b.terms_.size(); ++t) {
          Int& slot = conv[base + ib[t]];
          mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), b.terms_[t].second.get_mpz_t());
        }
      }
      Poly out;
      for (std::size_t e = conv.size(); e-- > 0;) {
        if (conv[e] == 0) continue;
        out.terms_.emplace_back(p->monomial_at(e), std::move(conv[e]));
      }
      return out;
    }
    // sparse: sort packed product indices, then merge
    std::vector<std::pair<std::size_t, std::pair<const Int*, const Int*>>> prod;
    prod.reserve(pairs);
    for (const auto& [ma, ca] : terms_) {
      std::size_t base = p->index_of(ma);
      for (std::size_t t = 0; t < b.terms_.size(); ++t)
        prod.emplace_back(base + ib[t], std::make_pair(&ca, &b.terms_[t].second));
    }
    std::sort(prod.begin(), prod.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    Poly out;
    for (std::size_t k = 0; k < prod.size();) {
      Int acc;
      std::size_t idx = prod[k].first;
      while (k < prod.size() && prod[k].first == idx) {
        mpz_addmul(acc.get_mpz_t(), prod[k].second.first->get_mpz_t(),
                   prod[k].second.second->get_mpz_t());
        ++k;
      }
      if (acc != 0) out.terms_.emplace_back(p->monomial_at(idx), std::move(acc));
    }
    return out;
  }
  struct MonoLess {
    bool operator()(const Monomial& x, const Monomial& y) const {
      return Monomial::compare(x, y) > 0;  // descending
    }
  };
  QSPAIR_COUNT(g_mul_map);
  std::map<Monomial, Int, MonoLess> acc;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, fresh] = acc.try_emplace(ma * mb, ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  Poly out;
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.terms_.emplace_back(m, std::move(c));
  return out;
}

std::optional<Poly> Poly::try_divexact(const Poly& b) const {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return Poly();
  if (b.is_one()) return *this;
  if (b.terms_.size() == 1) {
    const auto& [bm, bc] = b.terms_[0];
    Poly out;
    out.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      if (!bm.divides(m)) return std::nullopt;
      Int q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), bc.get_mpz_t());
      if (r != 0) return std::nullopt;
      out.terms_.emplace_back(m / bm, std::move(q));
    }
    return out;
  }
  // dense in-place long division on the packed exponent grid of the dividend
  auto grid = Packing::make({this, &b}, kGridCap);
  if (grid && (grid->size <= 1u << 14 || terms_.size() * 8 >= grid->size)) {
    const auto& p = grid;
    std::size_t lead = p->index_of(b.leading().first);
    std::vector<Int> rem(p->size);
    for (const auto& [m, c] : terms_) rem[p->index_of(m)] = c;
    std::vector<std::pair<std::size_t, const Int*>> div;
    div.reserve(b.terms_.size());
    for (const auto& [m, c] : b.terms_) div.emplace_back(p->index_of(m), &c);
    const Int& dlead = b.leading().second;
    std::vector<std::pair<std::size_t, Int>> quo;
    for (std::size_t e = p->size; e-- > 0;) {
      if (rem[e] == 0) continue;
      if (e < lead || !p->divides_index(lead, e)) return std::nullopt;
      Int q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[e].get_mpz_t(), dlead.get_mpz_t());
      if (r != 0) return std::nullopt;
      std::size_t shift = e - lead;
      for (const auto& [j, c] : div)
        if (j != lead) mpz_submul(rem[shift + j].get_mpz_t(), q.get_mpz_t(), c->get_mpz_t());
      rem[e] = 0;
      quo.emplace_back(shift, std::move(q));
    }
    std::vector<Term> terms;
    terms.reserve(quo.size());
    for (auto& [idx, c] : quo) terms.emplace_back(p->monomial_at(idx), std::move(c));
    return from_sorted_terms(std::move(terms));
  }
  Poly rem = *this;
  std::vector<Term> quo;
  const auto& [lm, lc] = b.leading();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading();
    if (!lm.divides(rm)) return std::nullopt;
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rc.get_mpz_t(), lc.get_mpz_t());
    if (r != 0) return std::nullopt;
    Monomial qm = rm / lm;
    quo.emplace_back(qm, q);
    rem = rem - b.mul_term(qm, q);
  }
  // quotient terms come out in decreasing order already
  return from_sorted_terms(std::move(quo));
}

Poly Poly::divexact(const Poly& b) const {
  auto q = try_divexact(b);
  if (!q) throw DomainError("polynomial division is not exact");
  return std::move(*q);
}

Int Poly::content() const {
  Int g = 0;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::normalized_primitive() const {
  if (is_zero()) return Poly();
  Int g = content();
  if (leading().second < 0) g = -g;
  return divexact(constant(g));
}

std::uint32_t Poly::degree(VarId v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

void Poly::collect_vars(std::vector<VarId>& out) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [var, exp] : m.factors)
      if (std::find(out.begin(), out.end(), var) == out.end()) out.push_back(var);
}

bool Poly::depends_on(VarId v) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) > 0) return true;
  return false;
}

bool Poly::depends_on_parameters() const {
  for (const auto& [m, c] : terms_)
    for (const auto& [var, exp] : m.factors)
      if (var != var_v()) return true;
  return false;
}

// ---------------------------------------------------------------------------
// gcd: integer content handling plus a primitive subresultant PRS in the
// highest variable, with polynomial coefficients handled recursively.
// ---------------------------------------------------------------------------

namespace {

VarId top_var(const Poly& p) {
  VarId best = 0;
  for (const auto& [m, c] : p.terms())
    if (!m.factors.empty()) best = std::max(best, m.factors.front().first);
  return best;  // 0 means constant
}

// dense univariate view in x with Poly coefficients
std::vector<Poly> univariate_coeffs(const Poly& p, VarId x) {
  std::vector<Poly> coeffs(p.degree(x) + 1);
  std::vector<std::vector<Poly::Term>> buckets(coeffs.size());
  for (const auto& [m, c] : p.terms()) {
    std::uint32_t e = m.exponent(x);
    Monomial rest;
    for (const auto& f : m.factors)
      if (f.first != x) rest.factors.push_back(f);
    buckets[e].emplace_back(std::move(rest), c);
  }
  for (std::size_t e = 0; e < buckets.size(); ++e) {
    std::sort(buckets[e].begin(), buckets[e].end(), [](const auto& a, const auto& b) {
      return Monomial::compare(a.first, b.first) > 0;
    });
    coeffs[e] = Poly::from_sorted_terms(std::move(buckets[e]));
  }
  return coeffs;
}

Poly from_univariate(const std::vector<Poly>& coeffs, VarId x) {
  Poly out;
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e].is_zero()) continue;
    out = out + coeffs[e] * Poly::variable(x, static_cast<std::uint32_t>(e));
  }
  return out;
}

int udeg(const std::vector<Poly>& u) {
  for (int d = static_cast<int>(u.size()) - 1; d >= 0; --d)
    if (!u[d].is_zero()) return d;
  return -1;
}

std::vector<Poly> umul_scalar(const std::vector<Poly>& u, const Poly& c) {
  std::vector<Poly> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!u[i].is_zero()) out[i] = u[i] * c;
  return out;
}

std::vector<Poly> udiv_scalar(const std::vector<Poly>& u, const Poly& c) {
  std::vector<Poly> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!u[i].is_zero()) out[i] = u[i].divexact(c);
  return out;
}

// pseudo-remainder of a by b in one variable: lc(b)^(da-db+1) * a mod b
std::vector<Poly> uprem(std::vector<Poly> a, const std::vector<Poly>& b) {
  int da = udeg(a), db = udeg(b);
  const Poly& lb = b[db];
  int steps = da - db + 1;
  while (true) {
    da = udeg(a);
    if (da < db) break;
    // a = lb*a - lc(a) * x^(da-db) * b
    Poly la = a[da];
    std::vector<Poly> next(std::max<std::size_t>(a.size(), 1));
    for (int i = 0; i <= da; ++i)
      next[i] = a[i].is_zero() ? Poly() : a[i] * lb;
    for (int i = 0; i <= db; ++i) {
      if (b[i].is_zero()) continue;
      next[i + da - db] = next[i + da - db] - la * b[i];
    }
    a = std::move(next);
    --steps;
  }
  if (steps > 0) {
    // pad the multiplier so divisions later stay exact
    Poly f = Poly::constant(1);
    for (int i = 0; i < steps; ++i) f = f * lb;
    a = umul_scalar(a, f);
  }
  return a;
}

Poly gcd_primitive(const Poly& a, const Poly& b);

// gcd of the list of coefficients (integer-content-free result not required)
Poly coeff_gcd(const std::vector<Poly>& coeffs) {
  Poly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.normalized_primitive() : gcd_primitive(g, c.normalized_primitive());
    if (g.is_one()) break;
  }
  return g;
}

// both inputs nonzero with integer content 1 and positive leading coefficient
Poly gcd_primitive(const Poly& a, const Poly& b) {
  if (a == b) return a;
  if (a.is_one() || b.is_one()) return Poly::constant(1);
  if (a.is_monomial() || b.is_monomial()) {
    // the monomial part common to every term of both
    Monomial m = (a.is_monomial() ? a : b).leading().first;
    for (const auto& [tm, tc] : a.terms()) m = Monomial::gcd(m, tm);
    for (const auto& [tm, tc] : b.terms()) m = Monomial::gcd(m, tm);
    return Poly::from_sorted_terms({{m, Int(1)}});
  }
  VarId xa = top_var(a), xb = top_var(b);
  if (xa == 0 || xb == 0) return Poly::constant(1);  // coprime integers already
  VarId x = std::max(xa, xb);
  if (xa != xb) {
    // the smaller polynomial has no x at all: gcd divides it, so recurse on
    // the x-content of the larger one
    const Poly& with_x = (xa == x) ? a : b;
    const Poly& without = (xa == x) ? b : a;
    Poly cont = coeff_gcd(univariate_coeffs(with_x, x));
    if (cont.is_zero() || cont.is_one()) return Poly::constant(1);
    return gcd_primitive(cont.normalized_primitive(), without);
  }

  std::vector<Poly> ua = univariate_coeffs(a, x);
  std::vector<Poly> ub = univariate_coeffs(b, x);
  Poly conta = coeff_gcd(ua);
  Poly contb = coeff_gcd(ub);
  std::vector<Poly> f = udiv_scalar(ua, conta);
  std::vector<Poly> g = udiv_scalar(ub, contb);
  Poly cont = gcd_primitive(conta, contb);

  if (udeg(f) < udeg(g)) std::swap(f, g);
  Poly h = Poly::constant(1);
  Poly psi = Poly::constant(1);
  while (true) {
    int df = udeg(f), dg = udeg(g);
    int delta = df - dg;
    std::vector<Poly> r = uprem(f, g);
    if (udeg(r) < 0) break;
    if (udeg(r) == 0) {
      // gcd has degree zero in x
      g = {Poly::constant(1)};
      break;
    }
    f = std::move(g);
    // subresultant divisor: psi * h^delta
    Poly divisor = psi;
    for (int i = 0; i < delta; ++i) divisor = divisor * h;
    g = udiv_scalar(r, divisor);
    psi = f[udeg(f)];
    if (delta > 0) {
      Poly hnew = psi;
      for (int i = 1; i < delta; ++i) hnew = hnew * psi;
      for (int i = 1; i < delta; ++i) hnew = hnew.divexact(h);
      h = hnew;
    }
  }
  Poly gp = from_univariate(g, x);
  Poly prim = gp.normalized_primitive();
  // strip the spurious coefficient content sitting in the PRS output
  std::vector<Poly> uc = univariate_coeffs(prim, x);
  Poly cc = coeff_gcd(uc);
  if (!cc.is_one() && !cc.is_zero()) prim = prim.divexact(cc).normalized_primitive();
  return (cont * prim).normalized_primitive();
}

}  // namespace

namespace {

// common monomial divisor of all terms and the seed, allocation-free scan
Monomial terms_monomial_gcd(const Poly& p, const Monomial& seed) {
  if (seed.is_one()) return seed;
  std::vector<std::pair<VarId, std::uint32_t>> mins = seed.factors;
  for (const auto& [m, c] : p.terms()) {
    bool any = false;
    for (auto& [var, exp] : mins) {
      exp = std::min(exp, m.exponent(var));
      any = any || exp > 0;
    }
    if (!any) return Monomial{};
  }
  Monomial out;
  for (const auto& [var, exp] : mins)
    if (exp > 0) out.factors.emplace_back(var, exp);
  return out;
}

// integer gcd of coefficients against a seed, with early exit at one
Int terms_int_gcd(const Poly& p, Int seed) {
  for (const auto& [m, c] : p.terms()) {
    if (seed == 1) break;
    mpz_gcd(seed.get_mpz_t(), seed.get_mpz_t(), c.get_mpz_t());
  }
  return seed;
}

// heuristic gcd: evaluate one variable at a large integer, recurse, and lift
// the image back through balanced base-xi digits; a final division check
// makes the method sound, and failures fall back to the subresultant path
namespace {

Int max_coeff_abs(const Poly& p) {
  Int m = 0;
  for (const auto& [mono, c] : p.terms()) {
    Int a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

Poly eval_var(const Poly& p, VarId x, const Int& xi) {
  // cache powers of xi up to the degree
  std::vector<Int> pw = {Int(1)};
  std::vector<Poly::Term> acc;
  acc.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) {
    std::uint32_t e = m.exponent(x);
    while (pw.size() <= e) pw.push_back(pw.back() * xi);
    Monomial rest;
    for (const auto& f : m.factors)
      if (f.first != x) rest.factors.push_back(f);
    acc.emplace_back(std::move(rest), c * pw[e]);
  }
  std::sort(acc.begin(), acc.end(),
            [](const auto& u, const auto& v) { return Monomial::compare(u.first, v.first) > 0; });
  std::vector<Poly::Term> merged;
  for (auto& t : acc) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& t) { return t.second == 0; }),
               merged.end());
  return Poly::from_sorted_terms(std::move(merged));
}

// balanced remainder digit: coefficients mapped into (-xi/2, xi/2]
Poly balanced_digit(const Poly& p, const Int& xi) {
  std::vector<Poly::Term> out;
  Int half = xi / 2;
  for (const auto& [m, c] : p.terms()) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
    if (r > half) r -= xi;
    if (r != 0) out.emplace_back(m, std::move(r));
  }
  return Poly::from_sorted_terms(std::move(out));
}

std::optional<Poly> gcd_heuristic(const Poly& a, const Poly& b, int depth) {
  if (depth > 8) return std::nullopt;
  std::vector<VarId> vars;
  a.collect_vars(vars);
  b.collect_vars(vars);
  if (vars.empty()) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.leading().second.get_mpz_t(), b.leading().second.get_mpz_t());
    return Poly::constant(g);
  }
  VarId x = *std::max_element(vars.begin(), vars.end());
  Int xi = 2 * std::min(max_coeff_abs(a), max_coeff_abs(b)) + 29;
  for (int tries = 0; tries < 6; ++tries) {
    Poly ae = eval_var(a, x, xi);
    Poly be = eval_var(b, x, xi);
    if (!ae.is_zero() && !be.is_zero()) {
      auto gamma = gcd_heuristic(ae, be, depth + 1);
      if (gamma) {
        Poly g;
        Poly rem = *gamma;
        std::uint32_t e = 0;
        while (!rem.is_zero()) {
          Poly digit = balanced_digit(rem, xi);
          if (!digit.is_zero()) g = g + digit * Poly::variable(x, e);
          rem = (rem - digit).divexact(Poly::constant(xi));
          ++e;
        }
        if (!g.is_zero()) {
          g = g.normalized_primitive();
          if (a.try_divexact(g) && b.try_divexact(g)) return g;
        }
      }
    }
    xi = xi * xi + 1;
  }
  return std::nullopt;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) {
    if (b.is_zero()) return Poly();
    return b.leading().second < 0 ? -b : b;
  }
  if (b.is_zero()) return a.leading().second < 0 ? -a : a;
  // monomial arguments dominate (Laurent denominators); keep them O(1)-ish
  if (a.is_monomial() || b.is_monomial()) {
    const Poly& mono = a.is_monomial() ? a : b;
    const Poly& other = a.is_monomial() ? b : a;
    Monomial m = terms_monomial_gcd(other, mono.leading().first);
    Int c = terms_int_gcd(other, abs(mono.leading().second));
    return from_sorted_terms({{std::move(m), std::move(c)}});
  }
  Int ca = abs(a.content()), cb = abs(b.content());
  Int cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Poly pa = a.divexact(constant(a.leading().second < 0 ? -ca : ca));
  Poly pb = b.divexact(constant(b.leading().second < 0 ? -cb : cb));
  if (auto g = gcd_heuristic(pa, pb, 0)) return *g * constant(cg);
  Poly g = gcd_primitive(pa, pb);
  return g * constant(cg);
}

// ---------------------------------------------------------------------------
// substitution
// ---------------------------------------------------------------------------

void Poly::substitute(const std::map<VarId, Rat>& values, Poly& num_out, Int& den_out) const {
  // evaluate term by term over Q, clearing to a common integer denominator
  den_out = 1;
  std::vector<std::pair<Monomial, Rat>> evaluated;
  evaluated.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    Rat factor(c);
    for (const auto& [var, exp] : m.factors) {
      auto it = values.find(var);
      if (it == values.end()) {
        rest.factors.emplace_back(var, exp);
      } else {
        Rat p = 1;
        for (std::uint32_t k = 0; k < exp; ++k) p *= it->second;
        factor *= p;
      }
    }
    if (factor != 0) {
      evaluated.emplace_back(std::move(rest), factor);
      Int d = factor.get_den();
      mpz_lcm(den_out.get_mpz_t(), den_out.get_mpz_t(), d.get_mpz_t());
    }
  }
  std::sort(evaluated.begin(), evaluated.end(), [](const auto& a, const auto& b) {
    return Monomial::compare(a.first, b.first) > 0;
  });
  std::vector<Term> terms;
  for (std::size_t i = 0; i < evaluated.size();) {
    Rat sum = evaluated[i].second;
    std::size_t j = i + 1;
    while (j < evaluated.size() && evaluated[j].first == evaluated[i].first) sum += evaluated[j++].second;
    if (sum != 0) {
      Rat scaled = sum * Rat(den_out);
      terms.emplace_back(evaluated[i].first, Int(scaled.get_num()));
    }
    i = j;
  }
  num_out = from_sorted_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// printing: `num/den` with ^ powers, e.g. (v^2+1)/(v^2-1)
// ---------------------------------------------------------------------------

namespace {

std::string term_to_string(const Monomial& m, const Int& c, bool leading) {
  std::ostringstream os;
  Int a = c;
  if (a < 0) {
    os << "-";
    a = -a;
  } else if (!leading) {
    os << "+";
  }
  bool printed = false;
  if (a != 1 || m.is_one()) {
    os << a.get_str();
    printed = true;
  }
  for (const auto& [var, exp] : m.factors) {
    if (printed) os << "*";
    os << var_name(var);
    if (exp != 1) os << "^" << exp;
    printed = true;
  }
  return os.str();
}

}  // namespace

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool leading = true;
  for (const auto& [m, c] : terms_) {
    out += term_to_string(m, c, leading);
    leading = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

Scalar::Scalar(const Rat& c)
    : num_(Poly::constant(Int(c.get_num()))), den_(Poly::constant(Int(c.get_den()))) {}

namespace {

Monomial monomial_content(const Poly& p) { return terms_monomial_gcd(p, p.leading().first); }

}  // namespace

Scalar Scalar::from_fraction(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero("scalar with zero denominator");
  Scalar s;
  if (num.is_zero()) return s;
  if (!den.is_one()) {
    // split off the monomial content of each side; the cores then divide
    // exactly iff the fraction is Laurent-polynomial, which is the dominant
    // case in the module builder
    Monomial mn = monomial_content(num), md = monomial_content(den);
    Monomial shared = Monomial::gcd(mn, md);
    mn = mn / shared;
    md = md / shared;
    Poly core_num = num, core_den = den;
    if (!(mn * shared).is_one())
      core_num = num.divexact(Poly::from_sorted_terms({{mn * shared, Int(1)}}));
    if (!(md * shared).is_one())
      core_den = den.divexact(Poly::from_sorted_terms({{md * shared, Int(1)}}));
    if (core_den.terms().size() > 1) {
      if (auto q = core_num.try_divexact(core_den)) {
        s.num_ = q->mul_term(mn, Int(1));
        s.den_ = Poly::from_sorted_terms({{md, Int(1)}});
        return s;
      }
    }
    Poly pg = Poly::gcd(core_num, core_den);
    if (!pg.is_one()) {
      core_num = core_num.divexact(pg);
      core_den = core_den.divexact(pg);
    }
    num = core_num.mul_term(mn, Int(1));
    den = core_den.mul_term(md, Int(1));
    if (den.leading().second < 0) {
      num = -num;
      den = -den;
    }
  }
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  return s;
}

Scalar Scalar::variable(VarId v) {
  Scalar s;
  s.num_ = Poly::variable(v);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s;
  s.num_ = -num_;
  s.den_ = den_;
  return s;
}

Scalar Scalar::operator+(const Scalar& b) const {
  if (is_zero()) return b;
  if (b.is_zero()) return *this;
  if (den_ == b.den_) return from_fraction(num_ + b.num_, den_);
  Poly g = Poly::gcd(den_, b.den_);
  if (g.is_one()) {
    Poly n = num_ * b.den_ + b.num_ * den_;
    return from_fraction(std::move(n), den_ * b.den_);
  }
  Poly da = den_.divexact(g), db = b.den_.divexact(g);
  Poly t = num_ * db + b.num_ * da;
  if (t.is_zero()) return Scalar();
  Poly g2 = Poly::gcd(t, g);
  if (g2.is_one()) return from_fraction(std::move(t), den_ * db);
  return from_fraction(t.divexact(g2), da * b.den_.divexact(g2));
}

Scalar Scalar::operator-(const Scalar& b) const { return *this + (-b); }

Scalar Scalar::operator*(const Scalar& b) const {
  if (is_zero() || b.is_zero()) return Scalar();
  Poly g1 = Poly::gcd(num_, b.den_);
  Poly g2 = Poly::gcd(b.num_, den_);
  Poly n = num_.divexact(g1) * b.num_.divexact(g2);
  Poly d = den_.divexact(g2) * b.den_.divexact(g1);
  if (d.leading().second < 0) {
    n = -n;
    d = -d;
  }
  Scalar s;
  s.num_ = std::move(n);
  s.den_ = std::move(d);
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar s;
  if (num_.leading().second < 0) {
    s.num_ = -den_;
    s.den_ = -num_;
  } else {
    s.num_ = den_;
    s.den_ = num_;
  }
  return s;
}

Scalar Scalar::operator/(const Scalar& b) const {
  if (b.is_zero()) throw DivisionByZero();
  if (is_zero()) return Scalar();
  // monomial denominators reduce to a polynomial division, which hits the
  // exact-division fast path of from_fraction
  if (den_.terms().size() <= 1 && b.den_.terms().size() <= 1)
    return from_fraction(num_ * b.den_, den_ * b.num_);
  return *this * b.inverse();
}

Scalar Scalar::v_power(long k) {
  Scalar s;
  if (k >= 0) {
    s.num_ = Poly::variable(var_v(), static_cast<std::uint32_t>(k));
  } else {
    s.num_ = Poly::constant(1);
    s.den_ = Poly::variable(var_v(), static_cast<std::uint32_t>(-k));
  }
  return s;
}

Scalar Scalar::q_power(const Rat& k) {
  Rat doubled = k * 2;
  if (!is_integer(doubled))
    throw DomainError("q^(" + std::string(k.get_str()) + ") is not representable: exponent is not a half-integer");
  return v_power(doubled.get_num().get_si());
}

Scalar Scalar::substitute(const std::map<VarId, Rat>& values) const {
  Poly n, d;
  Int nden, dden;
  num_.substitute(values, n, nden);
  den_.substitute(values, d, dden);
  if (d.is_zero()) throw DivisionByZero("denominator vanishes under the given specialization");
  return from_fraction(n * Poly::constant(dden), d * Poly::constant(nden));
}

Rat Scalar::evaluate(const std::map<VarId, Rat>& values) const {
  Scalar s = substitute(values);
  if (!s.num_.is_constant() || !s.den_.is_constant())
    throw DomainError("evaluation left free symbols: " + s.to_string());
  Rat num = s.num_.is_zero() ? Rat(0) : Rat(s.num_.leading().second);
  Rat den(s.den_.leading().second);
  return num / den;
}

bool Scalar::denominator_unit_parameters_only() const {
  for (const auto& [m, c] : den_.terms())
    for (const auto& [var, exp] : m.factors) {
      auto kind = static_cast<SymKind>(var >> 16);
      if (kind != SymKind::V && kind != SymKind::D) return false;
    }
  return true;
}

std::string Scalar::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.terms().size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  bool wrap = den_.terms().size() > 1 ||
              (den_.leading().second != 1 && !den_.leading().first.is_one());
  std::string d = wrap ? "(" + den_.to_string() + ")" : den_.to_string();
  return n + "/" + d;
}

// ---------------------------------------------------------------------------
// Gauss (quantum) integers
// ---------------------------------------------------------------------------

Scalar gauss_integer(long m, long d_i) {
  if (m < 0) throw DomainError("gauss integer needs m >= 0");
  // (q_i^m - q_i^{-m}) / (q_i - q_i^{-1}) with q_i = v^{2 d_i}
  if (m == 0) return Scalar(0);
  Scalar num = Scalar::v_power(2 * d_i * m) - Scalar::v_power(-2 * d_i * m);
  Scalar den = Scalar::v_power(2 * d_i) - Scalar::v_power(-2 * d_i);
  return num / den;
}

Scalar gauss_factorial(long m, long d_i) {
  if (m < 0) throw DomainError("gauss factorial needs m >= 0");
  Scalar out(1);
  for (long k = 2; k <= m; ++k) out *= gauss_integer(k, d_i);
  return out;
}

Scalar gauss_binomial(long n, long k, long d_i) {
  if (k < 0 || k > n) return Scalar(0);
  return gauss_factorial(n, d_i) / (gauss_factorial(k, d_i) * gauss_factorial(n - k, d_i));
}

}  // namespace qspair
