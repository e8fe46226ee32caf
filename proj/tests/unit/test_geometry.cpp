#include <gtest/gtest.h>

#include "dgeom/algebra.hpp"
#include "dgeom/errors.hpp"
#include "dgeom/geometry.hpp"
#include "dgeom/parse.hpp"
#include "random_expr.hpp"

using namespace dgeom;

namespace {

Expr P(std::string_view s) { return parse(s); }

const Chart kJet({"x", "y", "u", "p", "q", "r", "t"});
const Chart kXUP({"x", "u", "p"});

KForm d(const Chart& c, std::string_view name) { return KForm::differential(c, name); }
VectorField D(const Chart& c, std::string_view name) { return VectorField::coordinate(c, name); }

VectorField field(const Chart& c, std::initializer_list<const char*> coefficients) {
  std::vector<Expr> out;
  for (const char* e : coefficients) out.push_back(P(e));
  return {c, out};
}

// du - p dx on (x, u, p).
KForm contact() { return d(kXUP, "u") - d(kXUP, "x").scaled(sym("p")); }

}  // namespace

TEST(Geometry, Pairing) {
  EXPECT_EQ(pair(contact(), field(kXUP, {"1", "p", "0"})), Expr(0));
  EXPECT_EQ(pair(d(kXUP, "x"), D(kXUP, "x")), Expr(1));
  EXPECT_EQ(pair(d(kXUP, "x"), D(kXUP, "u")), Expr(0));
}

TEST(Geometry, ChartMismatchIsRejected) {
  const Chart other({"x", "u", "q"});
  EXPECT_THROW(pair(contact(), D(other, "x")), ChartMismatch);
  EXPECT_THROW(bracket(D(kXUP, "x"), D(other, "x")), ChartMismatch);
  EXPECT_THROW(wedge(contact(), d(other, "q")), ChartMismatch);
}

TEST(Geometry, Bracket) {
  EXPECT_EQ(bracket(field(kXUP, {"1", "p", "0"}), D(kXUP, "p")), field(kXUP, {"0", "-1", "0"}));
  const Chart xy({"x", "y"});
  EXPECT_TRUE(bracket(D(xy, "x"), D(xy, "y")).is_zero());
}

TEST(Geometry, FGordonTotalDerivativesBracket) {
  const char* F = "F(x,y,u,p,q)";
  const VectorField x1(kJet, {Expr(1), Expr(0), sym("p"), sym("r"), P(F), Expr(0), Expr(0)});
  const VectorField x2(kJet, {Expr(0), Expr(1), sym("q"), P(F), sym("t"), Expr(0), Expr(0)});
  const std::string f = F;
  auto partial = [&](const char* v) { return "diff(" + f + "," + v + ")"; };
  const Expr dp = P(partial("x") + " + p*" + partial("u") + " + r*" + partial("p") + " + " + f + "*" + partial("q"));
  const Expr dq = P("-(" + partial("y") + " + q*" + partial("u") + " + " + f + "*" + partial("p") + " + t*" +
                    partial("q") + ")");
  const VectorField expected(kJet, {Expr(0), Expr(0), Expr(0), dp, dq, Expr(0), Expr(0)});
  EXPECT_EQ(bracket(x1, x2), expected);
}

TEST(Geometry, ExteriorDerivative) {
  EXPECT_EQ(exterior_derivative(contact()), wedge(d(kXUP, "x"), d(kXUP, "p")));
  EXPECT_EQ(print(exterior_derivative(contact())), "dx/\\dp");
  EXPECT_TRUE(exterior_derivative(d(kXUP, "x")).is_zero());
  EXPECT_TRUE(exterior_derivative(d(kXUP, "x").scaled(P("f(x)"))).is_zero());
  const KForm top = wedge(wedge(d(kXUP, "x"), d(kXUP, "u")), d(kXUP, "p"));
  EXPECT_THROW(exterior_derivative(top), DomainError);
}

TEST(Geometry, InteriorProduct) {
  const KForm dxdp = wedge(d(kXUP, "x"), d(kXUP, "p"));
  EXPECT_EQ(interior_product(D(kXUP, "x"), dxdp), d(kXUP, "p"));
  EXPECT_EQ(interior_product(D(kXUP, "p"), dxdp), d(kXUP, "x").scaled(Expr(-1)));
  EXPECT_TRUE(interior_product(D(kXUP, "u"), dxdp).is_zero());
  const KForm c = interior_product(field(kXUP, {"1", "p", "0"}), contact());
  EXPECT_EQ(c.degree(), 0);
  EXPECT_TRUE(c.is_zero());
  EXPECT_THROW(interior_product(D(kXUP, "x"), KForm::function(kXUP, sym("x"))), DomainError);
}

TEST(Geometry, LieDerivative) {
  EXPECT_EQ(lie_derivative(field(kXUP, {"1", "p", "0"}), contact()), d(kXUP, "p"));
  EXPECT_TRUE(lie_derivative(D(kXUP, "x"), contact()).is_zero());
  EXPECT_EQ(lie_derivative(D(kXUP, "x"), KForm::function(kXUP, P("x^2*u"))), KForm::function(kXUP, P("2*x*u")));
}

TEST(Geometry, Wedge) {
  const Chart xy({"x", "y"});
  EXPECT_TRUE(wedge(d(xy, "x"), d(xy, "x")).is_zero());
  EXPECT_EQ(wedge(d(xy, "x"), d(xy, "y")), wedge(d(xy, "y"), d(xy, "x")).scaled(Expr(-1)));
  EXPECT_EQ(wedge(contact(), d(kXUP, "x")), wedge(d(kXUP, "u"), d(kXUP, "x")));
  EXPECT_EQ(print(wedge(d(kXUP, "u"), d(kXUP, "x"))), "-dx/\\du");
  const KForm overflow = wedge(wedge(d(xy, "x"), d(xy, "y")), d(xy, "x"));
  EXPECT_TRUE(overflow.is_zero());
  EXPECT_EQ(overflow.degree(), 3);
}

TEST(Geometry, Pullback) {
  EXPECT_EQ(pullback(SmoothMap::identity(kXUP), contact()), contact());
  const SmoothMap shift(kXUP, kXUP, {P("x + c"), sym("u"), sym("p")});
  EXPECT_EQ(pullback(shift, contact()), contact());
  const Chart line({"x"});
  const SmoothMap square(line, line, {P("x^2")});
  EXPECT_EQ(pullback(square, d(line, "x")), d(line, "x").scaled(P("2*x")));
}

TEST(Geometry, Printing) {
  EXPECT_EQ(print(contact()), "-p*dx + du");
  EXPECT_EQ(print(field(kXUP, {"1", "p", "0"})), "Dx + p*Du");
  EXPECT_EQ(print(VectorField::zero(kXUP)), "0");
}

// --- properties -----------------------------------------------------------

namespace {

using test_support::RandomExpr;

Chart random_chart(RandomExpr& gen, int min_dim, int max_dim) {
  static const std::vector<std::string> names{"x", "y", "z", "u", "v"};
  const int n = gen.uniform(min_dim, max_dim);
  return Chart(std::vector<std::string>(names.begin(), names.begin() + n));
}

VectorField random_field(RandomExpr& gen, const Chart& c, int degree = 2) {
  std::vector<Expr> coefficients;
  for (std::size_t i = 0; i < c.dim(); ++i) coefficients.push_back(gen.polynomial(c.coordinates(), degree, 3));
  return {c, coefficients};
}

KForm random_one_form(RandomExpr& gen, const Chart& c) {
  std::vector<Expr> coefficients;
  for (std::size_t i = 0; i < c.dim(); ++i) coefficients.push_back(gen.polynomial(c.coordinates(), 3, 3));
  return KForm::one_form(c, coefficients);
}

}  // namespace

TEST(GeometryProperties, DSquaredVanishes) {
  RandomExpr gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Chart c = random_chart(gen, 2, 5);
    const KForm omega = random_one_form(gen, c);
    const KForm domega = exterior_derivative(omega);
    if (domega.degree() < static_cast<int>(c.dim())) EXPECT_TRUE(exterior_derivative(domega).is_zero());
  }
}

TEST(GeometryProperties, JacobiIdentity) {
  RandomExpr gen(32);
  for (int trial = 0; trial < 30; ++trial) {
    const Chart c = random_chart(gen, 1, 4);
    const VectorField x = random_field(gen, c), y = random_field(gen, c), z = random_field(gen, c);
    const VectorField sum = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y);
    EXPECT_TRUE(sum.is_zero());
  }
}

TEST(GeometryProperties, LieDerivativeCommutesWithD) {
  RandomExpr gen(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Chart c = random_chart(gen, 3, 5);
    const VectorField x = random_field(gen, c);
    const KForm omega = random_one_form(gen, c);
    EXPECT_EQ(lie_derivative(x, exterior_derivative(omega)), exterior_derivative(lie_derivative(x, omega)));
  }
}

TEST(GeometryProperties, LeibnizForPairing) {
  RandomExpr gen(34);
  for (int trial = 0; trial < 30; ++trial) {
    const Chart c = random_chart(gen, 2, 4);
    const VectorField x = random_field(gen, c), y = random_field(gen, c);
    const KForm omega = random_one_form(gen, c);
    const Expr lhs = pair(lie_derivative(x, omega), y) + pair(omega, bracket(x, y));
    EXPECT_EQ(normalize(lhs - x.apply(pair(omega, y))), Expr(0));
  }
}

TEST(GeometryProperties, AnnihilatorLieDerivativeIsMinusBracketPairing) {
  // With omega(Y) = 0, (L_X omega)(Y) = -omega([X, Y]).
  RandomExpr gen(35);
  for (int trial = 0; trial < 30; ++trial) {
    const Chart c = random_chart(gen, 2, 4);
    const KForm omega = random_one_form(gen, c);
    const auto w = omega.covector();
    std::vector<Expr> ycoeff(c.dim(), Expr(0));
    ycoeff[0] = w[1];
    ycoeff[1] = normalize(-w[0]);
    const VectorField y(c, ycoeff);
    ASSERT_EQ(pair(omega, y), Expr(0));
    const VectorField x = random_field(gen, c);
    EXPECT_EQ(normalize(pair(lie_derivative(x, omega), y) + pair(omega, bracket(x, y))), Expr(0));
  }
}

TEST(GeometryProperties, WedgeAnticommutesOnOneForms) {
  RandomExpr gen(36);
  for (int trial = 0; trial < 30; ++trial) {
    const Chart c = random_chart(gen, 2, 5);
    const KForm a = random_one_form(gen, c), b = random_one_form(gen, c);
    EXPECT_TRUE((wedge(a, b) + wedge(b, a)).is_zero());
  }
}

TEST(GeometryProperties, PullbackCommutesWithDAndComposes) {
  RandomExpr gen(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Chart c = random_chart(gen, 2, 3);
    std::vector<Expr> fc, gc;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      fc.push_back(gen.polynomial(c.coordinates(), 2, 2));
      gc.push_back(gen.polynomial(c.coordinates(), 2, 2));
    }
    const SmoothMap f(c, c, fc), g(c, c, gc);
    const KForm omega = random_one_form(gen, c);
    EXPECT_EQ(pullback(f, exterior_derivative(omega)), exterior_derivative(pullback(f, omega)));
    EXPECT_EQ(pullback(compose(f, g), omega), pullback(g, pullback(f, omega)));
  }
}
