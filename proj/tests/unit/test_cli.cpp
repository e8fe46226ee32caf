#include <gtest/gtest.h>

#include <string>

#include "commands.hpp"
#include "dgeom/parse.hpp"
#include "model_file.hpp"

using namespace dgeom;
using namespace dgeom::cli;

namespace {

Expr P(std::string_view s) { return normalize(parse(s)); }

const char* kCartan = R"(# h'' = -h
[coordinates]
x, p0, p1

[vectorfields]
C = 1, p1, -p0

[distribution]
generators = C

[candidates]
C
scaling = 0, p0, p1
)";

const char* kJet = R"([coordinates]
x, y, u, p, q, r, t

[parameters]
a
b = 2

[definitions]
F = a*u + b*u^3

[vectorfields]
X1 = 1, 0, p, r, F, 0, 0
X2 = 0, 1, q, F, t, 0, 0

[distribution]
generators = X1, X2, Dr, Dt

[candidates]
T = point(-1, 0, 0)

[ansatz point]
x = ?X(x, y, u)
u = u

[fixtures]
wave = tanh(x + y)
wave.grid = 0, 1, -1/2, 1/2, 21, 31
)";

// Line and column of the error raised for `text`.
std::pair<std::size_t, std::size_t> error_at(const std::string& text) {
  try {
    parse_model(text, "m.model");
  } catch (const ModelError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return {0, 0};
}

}  // namespace

TEST(SplitList, RespectsNesting) {
  const auto items = split_list(" a, f(x, y) , diff(g(x,y), #2),b ");
  ASSERT_EQ(items.size(), 4u);
  EXPECT_EQ(items[0].first, "a");
  EXPECT_EQ(items[0].second, 1u);
  EXPECT_EQ(items[1].first, "f(x, y)");
  EXPECT_EQ(items[1].second, 4u);
  EXPECT_EQ(items[2].first, "diff(g(x,y), #2)");
  EXPECT_EQ(items[3].first, "b");
  EXPECT_TRUE(split_list("  ").empty());
}

TEST(ModelFile, ParsesCartanModel) {
  const Model m = parse_model(kCartan, "dir/cartan.model");
  EXPECT_EQ(m.name, "cartan");
  EXPECT_EQ(m.chart.coordinates(), (std::vector<std::string>{"x", "p0", "p1"}));
  EXPECT_EQ(print(m.field("C")), "Dx + p1*Dp0 - p0*Dp1");
  EXPECT_EQ(m.field("Dp1"), VectorField::coordinate(m.chart, "p1"));
  EXPECT_EQ(m.generator_names, (std::vector<std::string>{"C"}));
  ASSERT_EQ(m.candidates.size(), 2u);
  EXPECT_EQ(m.candidates[0].first, "C");
  EXPECT_FALSE(m.coforms_given);
  EXPECT_THROW(m.field("nope"), Error);
  EXPECT_THROW(m.ansatz("nope"), Error);
}

TEST(ModelFile, ParametersDefinitionsAndPoints) {
  const Model m = parse_model(kJet, "jet.model");
  EXPECT_EQ(m.parameters, (std::vector<std::string>{"a"}));
  EXPECT_EQ(m.parameter_values.at("b"), 2.0);
  EXPECT_EQ(*m.definition("F"), P("a*u + 2*u^3"));
  EXPECT_EQ(m.field("X1").component("q"), P("a*u + 2*u^3"));
  EXPECT_EQ(m.field("T"), VectorField(jet_chart(), {0, 0, sym("p"), sym("r"), P("a*u + 2*u^3"), 0, 0}));
  const SymmetryAnsatz& z = m.ansatz("point");
  EXPECT_EQ(print(z.realize()), "X(x,y,u)*Dx + u*Du");
  const Fixture& f = m.fixture("wave");
  EXPECT_EQ(f.h, P("tanh(x + y)"));
  EXPECT_EQ(f.grid.x_min, 0.0);
  EXPECT_EQ(f.grid.y_min, -0.5);
  EXPECT_EQ(f.grid.nx, 21u);
  EXPECT_EQ(f.grid.ny, 31u);

  const Model set = parse_model(kJet, "jet.model", {{"a", Expr(-2)}, {"b", Expr::rational(1, 2)}});
  EXPECT_TRUE(set.parameters.empty());
  EXPECT_EQ(*set.definition("F"), P("-2*u + u^3/2"));
  EXPECT_THROW(parse_model(kJet, "jet.model", {{"c", Expr(1)}}), Error);
  EXPECT_THROW(parse_model(kJet, "jet.model", {{"a", sym("x")}}), Error);
}

TEST(ModelFile, ErrorsCarryPositions) {
  const std::string head = "[coordinates]\nx, u, p\n[vectorfields]\n";
  // Column of the offending coefficient.
  EXPECT_EQ(error_at(head + "X = 1, p, w\n"), (std::pair<std::size_t, std::size_t>{4, 11}));
  // Parse errors point into the expression.
  EXPECT_EQ(error_at(head + "X = 1, p, (u +\n").first, 4u);
  EXPECT_GT(error_at(head + "X = 1, p, (u +\n").second, 11u);
  EXPECT_EQ(error_at(head + "X = 1, p\n"), (std::pair<std::size_t, std::size_t>{4, 5}));
  EXPECT_EQ(error_at(head + "Dx = 1, 0, 0\n"), (std::pair<std::size_t, std::size_t>{4, 1}));
  EXPECT_EQ(error_at("x = 1\n[coordinates]\nx\n").first, 1u);
  EXPECT_EQ(error_at("[coordinates]\nx\n[bogus]\n").first, 3u);
  EXPECT_EQ(error_at("[coordinates]\nx, x\n").first, 2u);
  EXPECT_EQ(error_at("[coordinates]\nx\n[functions]\nf(x)\n[vectorfields]\nX = f(x, x)\n").first, 6u);
  EXPECT_EQ(error_at("[coordinates]\nx, u\n[distribution]\ngenerators = Y\n"),
            (std::pair<std::size_t, std::size_t>{4, 14}));
  EXPECT_EQ(error_at("[coordinates]\nx, u\n[candidates]\nT = point(1, 0, 0)\n").first, 4u);
  EXPECT_EQ(error_at("[coordinates]\nx, u\n[ansatz z]\nx = ?A(w)\n").first, 4u);
  EXPECT_EQ(error_at("[coordinates]\nx, u\n[ansatz]\n").first, 3u);
  EXPECT_EQ(error_at("[coordinates]\nx, u\n[fixtures]\nh = u\n").first, 4u);
  // Dependent generators.
  EXPECT_EQ(error_at("[coordinates]\nx, u\n[vectorfields]\nA = 1, u\nB = 2, 2*u\n[distribution]\ngenerators = A, B\n")
                .first,
            7u);
  try {
    parse_model(head + "X = 1, p\n", "dir/m.model");
  } catch (const ModelError& e) {
    EXPECT_EQ(std::string(e.what()), "dir/m.model:4:5: expected 3 coefficients, got 2");
  }
}

TEST(ModelFile, CoformPresentation) {
  const Model m = parse_model("[coordinates]\nx, u, p\n[forms]\nw1 = -p, 1, 0\n[distribution]\ncoforms = w1\n", "m");
  EXPECT_EQ(m.distribution.rank(), 2u);
  EXPECT_EQ(m.generator_names, (std::vector<std::string>{"K1", "K2"}));
  EXPECT_TRUE(m.coforms_given);
}

TEST(Commands, CheckReportsWitnessAndExitCodes) {
  const Model m = parse_model(kJet, "jet.model");
  Report r = run_check(m, Options{});
  EXPECT_NE(r.text.find("involutive: false; witness: [X1, Dr] = -Dp\n"), std::string::npos) << r.text;
  EXPECT_EQ(r.exit_code, kSuccess);
  EXPECT_EQ(r.results[0]["rank"], 4);
  EXPECT_EQ(r.results[0]["witness"]["second"], "Dr");
  Options strict;
  strict.require_involutive = true;
  EXPECT_EQ(run_check(m, strict).exit_code, kCheckFailed);
  const Model c = parse_model(kCartan, "cartan.model");
  EXPECT_EQ(run_check(c, strict).exit_code, kSuccess);
  EXPECT_NE(run_check(c, strict).text.find("involutive: true\n"), std::string::npos);
}

TEST(Commands, SymmetryClasses) {
  const Model c = parse_model(kCartan, "cartan.model");
  const Report r = run_symmetry(c, {}, Options{});
  EXPECT_EQ(r.text.substr(0, r.text.find('\n')), "C: characteristic; coefficients: 1");
  EXPECT_NE(r.text.find("scaling: shuffling; representative: p0*Dp0 + p1*Dp1\n"), std::string::npos);
  const Model m = parse_model(kJet, "jet.model");
  const Report j = run_symmetry(m, {"Dr", "T"}, Options{});
  EXPECT_NE(j.text.find("Dr: not a symmetry; witness: [Dr, X1] = Dp\n"), std::string::npos) << j.text;
  EXPECT_NE(j.text.find("  lift: -Dx\n"), std::string::npos) << j.text;
  EXPECT_EQ(j.results[1]["lift"], "-Dx");
}

TEST(Commands, DeterminingVerifyExitCodes) {
  const Model m = parse_model(std::string(kJet) + "[ansatz shift]\nx = 1\n", "jet.model");
  const Report empty = run_determining(m, std::string("shift"), std::string("Dx"), Options{});
  EXPECT_NE(empty.text.find("system empty\n"), std::string::npos);
  EXPECT_NE(empty.text.find("verify Dx: all 0 residuals: zero\n"), std::string::npos);
  EXPECT_EQ(empty.exit_code, kSuccess);
  EXPECT_THROW(run_determining(m, std::nullopt, std::nullopt, Options{}), Error);
  const Report point = run_determining(m, std::string("point"), std::string("Du"), Options{});
  EXPECT_EQ(point.exit_code, kCheckFailed);
}

TEST(Commands, FlowIsDeterministic) {
  const Model m = parse_model(kJet, "jet.model");
  const Report a = run_flow(m, "T", std::nullopt, std::string("1/2"), Options{});
  const Report b = run_flow(m, "T", std::nullopt, std::string("1/2"), Options{});
  EXPECT_EQ(a.text, b.text);
  EXPECT_EQ(a.json().dump(), b.json().dump());
  EXPECT_EQ(a.text.substr(0, a.text.find('\n')), "flow of T, parameter s: exact, degree 7");
  EXPECT_THROW(run_flow(m, "T", std::nullopt, std::string("y"), Options{}), Error);
}

TEST(Commands, TransportNeedsNumericParameters) {
  const Model symbolic = parse_model(kJet, "jet.model");
  EXPECT_THROW(run_transport(symbolic, "wave", "T", {0.1}, Options{}), Error);
  const Model m = parse_model(kJet, "jet.model", {{"a", Expr(-2)}});
  const Report r = run_transport(m, "wave", "T", {0.1, 0.05}, Options{});
  EXPECT_EQ(r.results[0]["rows"].size(), 2u);
  EXPECT_TRUE(r.results[0]["rows"][0]["empirical_order"].is_null());
  EXPECT_THROW(run_transport(m, "wave", "Dx", {0.1}, Options{}), DomainError);
}
