#include "dgeom/expr.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "dgeom/errors.hpp"

namespace dgeom {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = std::hash<int>{}(mpz_sgn(z.get_mpz_t()));
  const auto* limbs = z.get_mpz_t()->_mp_d;
  const auto size = static_cast<std::size_t>(std::abs(z.get_mpz_t()->_mp_size));
  for (std::size_t i = 0; i < size; ++i) h = mix(h, std::hash<mp_limb_t>{}(limbs[i]));
  return h;
}

std::size_t compute_hash(const detail::Node& n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  switch (n.kind) {
    case Kind::Rational:
      h = mix(h, hash_mpz(n.value.get_num()));
      h = mix(h, hash_mpz(n.value.get_den()));
      break;
    case Kind::Symbol:
    case Kind::Function:
    case Kind::Derivative:
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    case Kind::Elementary:
      h = mix(h, static_cast<std::size_t>(n.fn));
      break;
    case Kind::Power:
      h = mix(h, std::hash<long>{}(n.exponent));
      break;
    default:
      break;
  }
  for (const auto& c : n.children) h = mix(h, c.hash());
  for (int s : n.slots) h = mix(h, std::hash<int>{}(s));
  return h;
}

std::strong_ordering compare_mpq(const mpq_class& a, const mpq_class& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare_children(std::span<const Expr> a, std::span<const Expr> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.size() <=> b.size();
}

detail::Node blank(Kind kind) {
  detail::Node node;
  node.kind = kind;
  return node;
}

}  // namespace

std::string_view elem_name(ElemFn fn) {
  switch (fn) {
    case ElemFn::Sin: return "sin";
    case ElemFn::Cos: return "cos";
    case ElemFn::Tan: return "tan";
    case ElemFn::Exp: return "exp";
    case ElemFn::Ln: return "ln";
    case ElemFn::Tanh: return "tanh";
    case ElemFn::Sech: return "sech";
  }
  return "?";
}

Expr Expr::make(detail::Node node) {
  node.hash = compute_hash(node);
  return Expr(std::make_shared<const detail::Node>(std::move(node)));
}

Expr::Expr() : Expr(0L) {}
Expr::Expr(int n) : Expr(static_cast<long>(n)) {}
Expr::Expr(long n) {
  detail::Node node = blank(Kind::Rational);
  node.value = n;
  node.normalized = true;
  *this = make(std::move(node));
}

Expr Expr::rational(const mpq_class& q) {
  detail::Node node = blank(Kind::Rational);
  node.value = q;
  node.value.canonicalize();
  node.normalized = true;
  return make(std::move(node));
}

Expr Expr::rational(long num, long den) {
  if (den == 0) throw EvalError("division by zero");
  mpq_class q(num, den);
  q.canonicalize();
  return rational(q);
}

Expr Expr::symbol(std::string name) {
  detail::Node node = blank(Kind::Symbol);
  node.name = std::move(name);
  node.normalized = true;
  return make(std::move(node));
}

Expr Expr::function(std::string name, std::vector<Expr> args) {
  detail::Node node = blank(Kind::Function);
  node.name = std::move(name);
  node.children = std::move(args);
  return make(std::move(node));
}

Expr Expr::derivative(std::string name, std::vector<Expr> args, std::vector<int> slots) {
  if (slots.empty()) return function(std::move(name), std::move(args));
  for (int s : slots) {
    if (s < 0 || static_cast<std::size_t>(s) >= args.size()) {
      throw DomainError("derivative slot out of range for " + name);
    }
  }
  std::sort(slots.begin(), slots.end());
  detail::Node node = blank(Kind::Derivative);
  node.name = std::move(name);
  node.children = std::move(args);
  node.slots = std::move(slots);
  return make(std::move(node));
}

Expr Expr::elementary(ElemFn fn, Expr arg) {
  detail::Node node = blank(Kind::Elementary);
  node.fn = fn;
  node.children.push_back(std::move(arg));
  return make(std::move(node));
}

Expr Expr::power(Expr base, long exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_rational()) {
    const mpq_class& q = base.value();
    if (sgn(q) == 0) {
      if (exponent < 0) throw EvalError("division by zero");
      return Expr(0);
    }
    mpz_class num, den;
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    mpq_class r = exponent < 0 ? mpq_class(den, num) : mpq_class(num, den);
    r.canonicalize();
    return rational(r);
  }
  if (base.kind() == Kind::Power) return power(base.base(), base.exponent() * exponent);
  detail::Node node = blank(Kind::Power);
  node.exponent = exponent;
  node.children.push_back(std::move(base));
  return make(std::move(node));
}

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  mpq_class constant = 0;
  for (auto& t : terms) {
    if (t.kind() == Kind::Sum) {
      for (const auto& c : t.children()) {
        if (c.is_rational()) constant += c.value();
        else flat.push_back(c);
      }
    } else if (t.is_rational()) {
      constant += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (sgn(constant) != 0) flat.push_back(rational(constant));
  if (flat.empty()) return Expr(0);
  if (flat.size() == 1) return flat.front();
  detail::Node node = blank(Kind::Sum);
  node.children = std::move(flat);
  return make(std::move(node));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  mpq_class constant = 1;
  for (auto& f : factors) {
    if (f.kind() == Kind::Product) {
      for (const auto& c : f.children()) {
        if (c.is_rational()) constant *= c.value();
        else flat.push_back(c);
      }
    } else if (f.is_rational()) {
      constant *= f.value();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (sgn(constant) == 0) return Expr(0);
  if (constant != 1) flat.insert(flat.begin(), rational(constant));
  if (flat.empty()) return Expr(1);
  if (flat.size() == 1) return flat.front();
  detail::Node node = blank(Kind::Product);
  node.children = std::move(flat);
  return make(std::move(node));
}

bool Expr::is_zero() const { return is_rational() && sgn(value()) == 0; }
bool Expr::is_one() const { return is_rational() && value() == 1; }
bool Expr::is_symbol(std::string_view n) const { return is_symbol() && name() == n; }

Expr Expr::mark_normalized() const {
  if (node_->normalized) return *this;
  detail::Node copy = *node_;
  copy.normalized = true;
  return Expr(std::make_shared<const detail::Node>(std::move(copy)));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Kind::Rational:
      return compare_mpq(a.value(), b.value());
    case Kind::Symbol:
      return a.name() <=> b.name();
    case Kind::Function:
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      return compare_children(a.children(), b.children());
    case Kind::Derivative: {
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      if (auto c = compare_children(a.children(), b.children()); c != 0) return c;
      return std::lexicographical_compare_three_way(a.slots().begin(), a.slots().end(),
                                                    b.slots().begin(), b.slots().end());
    }
    case Kind::Elementary:
      if (auto c = a.elementary_fn() <=> b.elementary_fn(); c != 0) return c;
      return a.arg() <=> b.arg();
    case Kind::Power:
      if (auto c = a.base() <=> b.base(); c != 0) return c;
      return a.exponent() <=> b.exponent();
    case Kind::Product:
    case Kind::Sum:
      return compare_children(a.children(), b.children());
  }
  return std::strong_ordering::equal;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw EvalError("division by zero");
  return Expr::product({a, Expr::power(b, -1)});
}
Expr operator-(const Expr& a) { return Expr::product({Expr(-1), a}); }
Expr pow(const Expr& base, long exponent) { return Expr::power(base, exponent); }

Expr apply(std::string name, std::initializer_list<Expr> args) {
  return Expr::function(std::move(name), std::vector<Expr>(args));
}

Expr apply(std::string name, std::span<const std::string> arg_names) {
  std::vector<Expr> args;
  args.reserve(arg_names.size());
  for (const auto& n : arg_names) args.push_back(Expr::symbol(n));
  return Expr::function(std::move(name), std::move(args));
}

bool depends_on(const Expr& e, std::string_view symbol) {
  if (e.is_symbol()) return e.name() == symbol;
  for (const auto& c : e.children()) {
    if (depends_on(c, symbol)) return true;
  }
  return false;
}

bool contains_functions(const Expr& e) {
  if (e.kind() == Kind::Function || e.kind() == Kind::Derivative) return true;
  for (const auto& c : e.children()) {
    if (contains_functions(c)) return true;
  }
  return false;
}

bool contains_elementary(const Expr& e) {
  if (e.kind() == Kind::Elementary) return true;
  for (const auto& c : e.children()) {
    if (contains_elementary(c)) return true;
  }
  return false;
}

namespace {
void gather_symbols(const Expr& e, std::set<std::string>& out) {
  if (e.is_symbol()) out.insert(e.name());
  for (const auto& c : e.children()) gather_symbols(c, out);
}
}  // namespace

std::vector<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  gather_symbols(e, out);
  return {out.begin(), out.end()};
}

}  // namespace dgeom
