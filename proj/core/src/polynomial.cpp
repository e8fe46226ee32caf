#include "polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>

#include "dgeom/errors.hpp"

namespace dgeom::detail {

int compare_monomials(const Monomial& a, const Monomial& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const auto c = a[i].first <=> b[j].first;
    if (c < 0) return 1;
    if (c > 0) return -1;
    if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const auto c = a[i].first <=> b[j].first;
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0;
  for (const auto& [atom, e] : b) {
    while (i < a.size() && a[i].first < atom) out.push_back(a[i++]);
    if (i == a.size() || a[i].first != atom || a[i].second < e) return std::nullopt;
    if (a[i].second > e) out.emplace_back(atom, a[i].second - e);
    ++i;
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  return out;
}

Poly Poly::constant(const mpq_class& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.emplace(Monomial{}, c);
  return p;
}

Poly Poly::atom(const Expr& a, int exponent) {
  Poly p;
  p.terms_.emplace(Monomial{{a, exponent}}, mpq_class(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

mpq_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second;
}

void Poly::add_term(const Monomial& m, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::vector<Expr> Poly::atoms() const {
  std::vector<Expr> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [a, e] : m) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Poly::has_atom(const Expr& a) const {
  for (const auto& [m, c] : terms_) {
    for (const auto& [x, e] : m) {
      if (x == a) return true;
    }
  }
  return false;
}

int Poly::degree_in(const Expr& a) const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& [x, e] : m) {
      if (x == a) d = std::max(d, e);
    }
  }
  return d;
}

std::map<int, Poly> Poly::coefficients_in(const Expr& a) const {
  std::map<int, Poly> out;
  for (const auto& [m, c] : terms_) {
    int e = 0;
    Monomial rest;
    rest.reserve(m.size());
    for (const auto& f : m) {
      if (f.first == a) e = f.second;
      else rest.push_back(f);
    }
    out[e].add_term(rest, c);
  }
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) r.add_term(multiply(m1, m2), c1 * c2);
  }
  return r;
}

Poly Poly::scaled(const mpq_class& c) const {
  if (sgn(c) == 0) return {};
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::pow(unsigned long n) const {
  Poly result = constant(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [m, c] : terms_) {
    if (compare_monomials(m, it->first) != 0 || c != it->second) return false;
    ++it;
  }
  return true;
}

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw EvalError("division by zero polynomial");
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  Poly q;
  Poly r = a;
  const Monomial& lmb = b.leading_monomial();
  const mpq_class lcb = b.leading_coefficient();
  while (!r.is_zero()) {
    auto t = divide(r.leading_monomial(), lmb);
    if (!t) return std::nullopt;
    const mpq_class c = r.leading_coefficient() / lcb;
    Poly step;
    step.add_term(*t, c);
    q.add_term(*t, c);
    r = r - step * b;
  }
  return q;
}

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_coefficient());
}

namespace {

// Rescales p to coprime integer coefficients; keeps PRS coefficients small.
Poly numeric_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  return p.scaled(mpq_class(den_lcm, num_gcd));
}

// gcd of a monomial with an arbitrary polynomial: the common factors of
// every term.
Poly monomial_gcd(const Monomial& m, const Poly& p) {
  Monomial common = m;
  for (const auto& [t, c] : p.terms()) {
    Monomial next;
    for (const auto& [atom, e] : common) {
      auto it = std::find_if(t.begin(), t.end(), [&](const auto& f) { return f.first == atom; });
      if (it != t.end()) next.emplace_back(atom, std::min(e, it->second));
    }
    common = std::move(next);
    if (common.empty()) break;
  }
  Poly out;
  out.add_term(common, 1);
  return out;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1 for the coprimality test.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  __extension__ using Wide = unsigned __int128;
  return static_cast<std::uint64_t>((static_cast<Wide>(a) * b) % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e > 0) {
    if (e & 1U) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

std::uint64_t reduce_mpz(const mpz_class& z) {
  static const mpz_class prime(std::to_string(kPrime));
  mpz_class r;
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t());
  return r.get_ui();
}

using Univariate = std::vector<std::uint64_t>;  // coefficient of v^k at index k, mod kPrime

// Image of p with every atom but v evaluated; nullopt when a coefficient
// denominator vanishes mod kPrime.
std::optional<Univariate> image_in(const Poly& p, const Expr& v, const std::map<Expr, std::uint64_t>& values) {
  Univariate out(static_cast<std::size_t>(p.degree_in(v)) + 1, 0);
  for (const auto& [m, c] : p.terms()) {
    const std::uint64_t den = reduce_mpz(c.get_den());
    if (den == 0) return std::nullopt;
    std::uint64_t term = mul_mod(reduce_mpz(c.get_num()), inv_mod(den));
    int k = 0;
    for (const auto& [atom, e] : m) {
      if (atom == v) k = e;
      else term = mul_mod(term, pow_mod(values.at(atom), static_cast<std::uint64_t>(e)));
    }
    auto& slot = out[static_cast<std::size_t>(k)];
    slot = (slot + term) % kPrime;
  }
  return out;
}

void trim(Univariate& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

std::size_t univariate_gcd_degree(Univariate a, Univariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv_lead = inv_mod(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      const std::uint64_t f = mul_mod(a.back(), inv_lead);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[i + shift] = (a[i + shift] + kPrime - mul_mod(f, b[i])) % kPrime;
      }
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Evaluates every other atom at random residues. When both leading
// coefficients survive, the image of the true gcd divides the image gcd, so
// a constant image proves the gcd has degree 0 in v.
bool coprime_in(const Poly& a, const Poly& b, const Expr& v) {
  std::mt19937_64 rng(a.size() * 7919 + b.size());
  std::uniform_int_distribution<std::uint64_t> pick(1, kPrime - 1);
  std::vector<Expr> others;
  for (const auto& atom : a.atoms()) {
    if (atom != v) others.push_back(atom);
  }
  for (const auto& atom : b.atoms()) {
    if (atom != v) others.push_back(atom);
  }
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::map<Expr, std::uint64_t> values;
    for (const auto& atom : others) values[atom] = pick(rng);
    auto ia = image_in(a, v, values);
    auto ib = image_in(b, v, values);
    if (!ia || !ib || ia->back() == 0 || ib->back() == 0) continue;
    return univariate_gcd_degree(std::move(*ia), std::move(*ib)) == 0;
  }
  return false;
}

Poly content_in(const Poly& p, const Expr& v) {
  Poly g;
  for (const auto& [e, coeff] : p.coefficients_in(v)) {
    g = gcd(g, coeff);
    if (g.is_constant()) return Poly::constant(1);
  }
  return g;
}

Poly primitive_part(const Poly& p, const Expr& v) {
  Poly c = content_in(p, v);
  if (c.is_constant()) return p;
  return *exact_divide(p, c);
}

Poly coefficient_of(const Poly& p, const Expr& v, int degree) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    int e = 0;
    Monomial rest;
    for (const auto& f : m) {
      if (f.first == v) e = f.second;
      else rest.push_back(f);
    }
    if (e == degree) out.add_term(rest, c);
  }
  return out;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, const Expr& v) {
  const int db = b.degree_in(v);
  const Poly lcb = coefficient_of(b, v, db);
  Poly r = a;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    const int dr = r.degree_in(v);
    const Poly lcr = coefficient_of(r, v, dr);
    Poly shifted = lcr;
    if (dr > db) shifted = shifted * Poly::atom(v, dr - db);
    r = numeric_primitive(lcb * r - shifted * b);
  }
  return r;
}

Poly primitive_prs(Poly a, Poly b, const Expr& v) {
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  while (true) {
    Poly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) return primitive_part(b, v);
    if (r.degree_in(v) == 0) return Poly::constant(1);
    a = std::move(b);
    b = numeric_primitive(primitive_part(r, v));
  }
}

}  // namespace

namespace {

// Largest monomial dividing every term of p.
Monomial monomial_content(const Poly& p) {
  Monomial common = p.terms().begin()->first;
  for (const auto& [t, c] : p.terms()) {
    Monomial next;
    for (const auto& [atom, e] : common) {
      auto it = std::find_if(t.begin(), t.end(), [&](const auto& f) { return f.first == atom; });
      if (it != t.end()) next.emplace_back(atom, std::min(e, it->second));
    }
    common = std::move(next);
    if (common.empty()) break;
  }
  return common;
}

Poly divide_monomial(const Poly& p, const Monomial& m) {
  Poly out;
  for (const auto& [t, c] : p.terms()) out.add_term(*divide(t, m), c);
  return out;
}

Monomial min_monomial(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (const auto& [atom, e] : a) {
    auto it = std::find_if(b.begin(), b.end(), [&](const auto& f) { return f.first == atom; });
    if (it != b.end()) out.emplace_back(atom, std::min(e, it->second));
  }
  return out;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);
  if (make_monic(a) == make_monic(b)) return make_monic(a);
  if (a.terms().size() == 1) return monomial_gcd(a.terms().begin()->first, b);
  if (b.terms().size() == 1) return monomial_gcd(b.terms().begin()->first, a);

  const Monomial ma = monomial_content(a);
  const Monomial mb = monomial_content(b);
  if (!ma.empty() || !mb.empty()) {
    Poly common;
    common.add_term(min_monomial(ma, mb), 1);
    const Poly rest = gcd(ma.empty() ? a : divide_monomial(a, ma), mb.empty() ? b : divide_monomial(b, mb));
    return common * rest;
  }

  // Main variable: a shared atom of least combined degree; an atom missing
  // from one side only contributes through the other side's content.
  const auto va = a.atoms();
  const auto vb = b.atoms();
  for (const auto& v : va) {
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_in(a, v), b);
  }
  for (const auto& v : vb) {
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, content_in(b, v));
  }
  Expr v = va.front();
  int best = a.degree_in(v) + b.degree_in(v);
  for (const auto& w : va) {
    const int d = a.degree_in(w) + b.degree_in(w);
    if (d < best) {
      best = d;
      v = w;
    }
  }

  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  const Poly pa = ca.is_constant() ? a : *exact_divide(a, ca);
  const Poly pb = cb.is_constant() ? b : *exact_divide(b, cb);
  const Poly c = gcd(ca, cb);
  if (coprime_in(pa, pb, v)) return c;
  return make_monic(c * primitive_prs(numeric_primitive(pa), numeric_primitive(pb), v));
}

Poly reduce_elementary(const Poly& p) {
  Poly current = p;
  bool changed = true;
  while (changed) {
    changed = false;
    Poly next;
    for (const auto& [m, c] : current.terms()) {
      auto hit = std::find_if(m.begin(), m.end(), [](const auto& f) {
        return f.second >= 2 && f.first.kind() == Kind::Elementary &&
               (f.first.elementary_fn() == ElemFn::Cos || f.first.elementary_fn() == ElemFn::Tanh);
      });
      if (hit == m.end()) {
        next.add_term(m, c);
        continue;
      }
      changed = true;
      const ElemFn partner = hit->first.elementary_fn() == ElemFn::Cos ? ElemFn::Sin : ElemFn::Sech;
      const Expr partner_atom = Expr::elementary(partner, hit->first.arg()).mark_normalized();
      const int k = hit->second;
      Monomial rest;
      for (const auto& f : m) {
        if (&f == &*hit) {
          if (k % 2 == 1) rest.emplace_back(f.first, 1);
        } else {
          rest.push_back(f);
        }
      }
      // (1 - partner^2)^(k/2)
      Poly one_minus = Poly::constant(1) - Poly::atom(partner_atom, 2);
      Poly expanded = one_minus.pow(static_cast<unsigned long>(k / 2));
      Poly head;
      head.add_term(rest, c);
      next = next + head * expanded;
    }
    current = std::move(next);
  }
  return current;
}

Expr monomial_expr(const Monomial& m) {
  std::vector<Expr> factors;
  factors.reserve(m.size());
  for (const auto& [a, e] : m) factors.push_back(e == 1 ? a : Expr::power(a, e).mark_normalized());
  return Expr::product(std::move(factors)).mark_normalized();
}

Expr to_expr(const Poly& p) {
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    std::vector<Expr> factors;
    factors.reserve(m.size() + 1);
    if (c != 1 || m.empty()) factors.push_back(Expr::rational(c));
    for (const auto& [a, e] : m) factors.push_back(e == 1 ? a : Expr::power(a, e).mark_normalized());
    terms.push_back(Expr::product(std::move(factors)).mark_normalized());
  }
  return Expr::sum(std::move(terms)).mark_normalized();
}

Expr to_expr(const RatFun& r) {
  Expr num = to_expr(r.num);
  if (r.den.is_constant() && r.den.constant_value() == 1) return num;
  Expr den = to_expr(r.den);
  return Expr::product({num, Expr::power(den, -1).mark_normalized()}).mark_normalized();
}

}  // namespace dgeom::detail
