#include "dgeom/parse.hpp"

#include <array>
#include <cctype>
#include <optional>

#include "dgeom/algebra.hpp"
#include "dgeom/errors.hpp"

namespace dgeom {

ParseError::ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected)
    : Error(message + " at offset " + std::to_string(offset)), offset_(offset), expected_(std::move(expected)) {}

namespace {

constexpr std::array<std::string_view, 22> kUnsupportedFunctions = {
    "sqrt", "log", "log10", "log2", "sinh", "cosh", "coth", "csch", "asin", "acos", "atan",
    "atan2", "sec", "csc", "cot", "abs", "sign", "erf", "gamma", "pow", "min", "max"};

std::optional<ElemFn> elementary_by_name(std::string_view name) {
  if (name == "sin") return ElemFn::Sin;
  if (name == "cos") return ElemFn::Cos;
  if (name == "tan") return ElemFn::Tan;
  if (name == "exp") return ElemFn::Exp;
  if (name == "ln") return ElemFn::Ln;
  if (name == "tanh") return ElemFn::Tanh;
  if (name == "sech") return ElemFn::Sech;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character", {"operator", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    throw ParseError(what, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'", {std::string(1, c)});
  }

  Expr expr() {
    Expr lhs = term();
    while (true) {
      if (accept('+')) lhs = lhs + term();
      else if (accept('-')) lhs = lhs - term();
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (peek('/')) {
        const std::size_t at = pos_;
        ++pos_;
        Expr rhs = unary();
        if (normalize(rhs).is_zero()) throw ParseError("division by zero", at);
        lhs = lhs / rhs;
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!peek('^')) return base;
    ++pos_;
    const std::size_t at = pos_;
    Expr exponent = normalize(unary());
    if (!exponent.is_rational() || exponent.value().get_den() != 1 || !exponent.value().get_num().fits_slong_p()) {
      throw ParseError("exponent must be an integer", at, {"integer"});
    }
    const long n = exponent.value().get_num().get_si();
    if (n < 0 && normalize(base).is_zero()) throw ParseError("division by zero", at);
    return pow(base, n);
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr integer_literal() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Expr::rational(mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start)))));
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", {"number", "identifier", "("});
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return integer_literal();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t name_at = pos_;
      std::string name = identifier();
      if (!peek('(')) return Expr::symbol(std::move(name));
      if (name == "diff") return derivative_call();
      for (auto bad : kUnsupportedFunctions) {
        if (name == bad) throw ParseError("unknown elementary function '" + name + "'", name_at);
      }
      ++pos_;  // '('
      std::vector<Expr> args;
      if (!peek(')')) {
        args.push_back(expr());
        while (accept(',')) args.push_back(expr());
      }
      expect(')');
      if (auto fn = elementary_by_name(name)) {
        if (args.size() != 1) throw ParseError(name + " takes exactly one argument", name_at);
        return Expr::elementary(*fn, std::move(args.front()));
      }
      if (args.empty()) throw ParseError("function application needs arguments", name_at);
      return Expr::function(std::move(name), std::move(args));
    }
    fail(std::string("unexpected character '") + c + "'", {"number", "identifier", "("});
  }

  // diff(e, v1, ..., vk): symbol slots differentiate via the chain rule;
  // '#k' slots (1-based) name an argument position of an applied function.
  Expr derivative_call() {
    ++pos_;  // '('
    Expr target = expr();
    if (!peek(',')) fail("diff needs at least one variable", {","});
    while (accept(',')) {
      skip_ws();
      if (accept('#')) {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          fail("expected slot number", {"integer"});
        }
        const long slot = integer_literal().value().get_num().get_si() - 1;
        if (target.kind() != Kind::Function && target.kind() != Kind::Derivative) {
          throw ParseError("'#' slots require a function application", at);
        }
        if (slot < 0 || static_cast<std::size_t>(slot) >= target.children().size()) {
          throw ParseError("slot out of range", at);
        }
        std::vector<int> slots(target.slots().begin(), target.slots().end());
        slots.push_back(static_cast<int>(slot));
        target = Expr::derivative(target.name(), {target.children().begin(), target.children().end()},
                                  std::move(slots));
      } else {
        std::string var = identifier();
        if (var.empty()) fail("expected variable name", {"identifier", "#"});
        target = diff(target, var);
      }
    }
    expect(')');
    return target;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace dgeom
