#include <algorithm>

#include "dgeom/parse.hpp"

namespace dgeom {

namespace {

std::string print_rational(const mpq_class& q) { return q.get_str(); }

bool is_atomic(const Expr& e) {
  switch (e.kind()) {
    case Kind::Symbol:
    case Kind::Function:
    case Kind::Derivative:
    case Kind::Elementary:
      return true;
    case Kind::Rational:
      return sgn(e.value()) >= 0 && e.value().get_den() == 1;
    default:
      return false;
  }
}

std::string print_factor(const Expr& e);

std::string print_power(const Expr& base, long exponent) {
  std::string b = is_atomic(base) ? print(base) : "(" + print(base) + ")";
  if (exponent == 1) return b;
  return b + "^" + std::to_string(exponent);
}

std::string print_factor(const Expr& e) {
  if (e.kind() == Kind::Power && e.exponent() > 0) return print_power(e.base(), e.exponent());
  if (e.kind() == Kind::Sum || e.kind() == Kind::Product || e.kind() == Kind::Power) return "(" + print(e) + ")";
  if (e.is_rational() && !is_atomic(e)) return "(" + print(e) + ")";
  return print(e);
}

std::string slot_name(const Expr& e, int slot) {
  const Expr& arg = e.children()[static_cast<std::size_t>(slot)];
  if (arg.is_symbol()) {
    const auto count = std::count(e.children().begin(), e.children().end(), arg);
    if (count == 1) return arg.name();
  }
  return "#" + std::to_string(slot + 1);
}

std::string print_application(const Expr& e) {
  std::string out = e.name() + "(";
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    if (i) out += ",";
    out += print(e.children()[i]);
  }
  return out + ")";
}

std::string print_product(const Expr& e) {
  mpq_class coeff = 1;
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (const auto& f : e.children()) {
    if (f.is_rational()) {
      coeff *= f.value();
    } else if (f.kind() == Kind::Power && f.exponent() < 0) {
      den.push_back(print_power(f.base(), -f.exponent()));
    } else {
      num.push_back(print_factor(f));
    }
  }
  std::string out;
  if (coeff == -1 && !num.empty()) {
    out = "-";
  } else if (coeff != 1 || num.empty()) {
    out = print_rational(coeff);
    if (!num.empty()) out += "*";
  }
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (i) out += "*";
    out += num[i];
  }
  if (den.size() == 1) {
    out += "/" + den.front();
  } else if (den.size() > 1) {
    out += "/(";
    for (std::size_t i = 0; i < den.size(); ++i) {
      if (i) out += "*";
      out += den[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Kind::Rational:
      return print_rational(e.value());
    case Kind::Symbol:
      return e.name();
    case Kind::Function:
      return print_application(e);
    case Kind::Derivative: {
      std::string out = "diff(" + print_application(e);
      for (int s : e.slots()) out += ", " + slot_name(e, s);
      return out + ")";
    }
    case Kind::Elementary:
      return std::string(elem_name(e.elementary_fn())) + "(" + print(e.arg()) + ")";
    case Kind::Power:
      if (e.exponent() < 0) return "1/" + print_power(e.base(), -e.exponent());
      return print_power(e.base(), e.exponent());
    case Kind::Product:
      return print_product(e);
    case Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        std::string t = print(e.children()[i]);
        if (i == 0) {
          out = t;
        } else if (!t.empty() && t.front() == '-') {
          out += " - " + t.substr(1);
        } else {
          out += " + " + t;
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace dgeom
