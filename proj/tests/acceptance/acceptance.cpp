// Acceptance run: one PASS/FAIL line per criterion, details indented below.
//
//   dgeom_acceptance --dgeom <cli> --source-dir <repo> [--only N] [--known-failure N]...
//
// Exit status is 0 when the failing criteria are exactly the known failures.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dgeom/fgordon.hpp"
#include "dgeom/parse.hpp"
#include "flow_oracle.hpp"
#include "random_distribution.hpp"

using namespace dgeom;
using test_support::RandomExpr;

namespace {

// Pinned tolerances and sizes.
constexpr double kTimeBudgetSeconds = 10.0;
constexpr int kRandomInstances = 100;
constexpr double kFixtureResidual = 1e-10;
constexpr double kMinTransportOrder = 2.0 - 0.1;
constexpr double kLinearTransportResidual = 1e-6;
constexpr double kLinearizedResidual = 1e-5;
constexpr double kRk4Tolerance = 1e-6;
constexpr std::size_t kRk4Steps = 10000;
constexpr int kFlowDegree = 7;
const std::vector<double> kTransportSteps{0.1, 0.05, 0.025};
const GridSpec kGrid{-1, 1, -1, 1, 101, 101};

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
  void info(const std::string& what) { details.push_back("      " + what); }
};

Expr P(std::string_view s) { return normalize(parse(s)); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool all_zero(const std::vector<ZeroStatus>& st) {
  return std::all_of(st.begin(), st.end(), [](const ZeroStatus& s) { return s.zero(); });
}

std::size_t count_nonzero(const std::vector<ZeroStatus>& st) {
  return static_cast<std::size_t>(std::count_if(st.begin(), st.end(), [](const ZeroStatus& s) { return !s.zero(); }));
}

// sum_j c_j basis_j - target, exactly.
bool reproduces(const std::vector<ExprVector>& basis, const Membership& m, const ExprVector& target) {
  if (!m.in_span) return false;
  for (std::size_t i = 0; i < target.size(); ++i) {
    std::vector<Expr> terms{-target[i]};
    for (std::size_t j = 0; j < basis.size(); ++j) terms.push_back(m.coefficients[j] * basis[j][i]);
    if (!normalize(Expr::sum(std::move(terms))).is_zero()) return false;
  }
  return true;
}

std::vector<ExprVector> covectors(const std::vector<KForm>& forms) {
  std::vector<ExprVector> out;
  for (const auto& f : forms) out.push_back(f.covector());
  return out;
}

// The printed jet ansatz with every component free in all coordinates.
SymmetryAnsatz full_ansatz() {
  const std::vector<std::string> all{"x", "y", "u", "p", "q", "r", "t"};
  const char* names[] = {"Xi", "Eta", "Phi", "Pi", "Kappa", "Rho", "Tau"};
  SymmetryAnsatz z(jet_chart());
  for (std::size_t i = 0; i < all.size(); ++i) z.undetermined(all[i], names[i], all);
  return z;
}

// --- 1 ---------------------------------------------------------------------
Outcome annihilator_duality() {
  Outcome o;
  const FGordonModel m = fgordon_model(P("F(x,y,u,p,q)"));
  const std::vector<KForm> ann = annihilator(m.distribution);
  o.check(ann.size() == 3, "annihilator of <X1, X2, Dr, Dt> has 3 forms");
  const auto a = covectors(ann), w = covectors(m.coforms);
  for (std::size_t i = 0; i < w.size(); ++i) {
    o.check(reproduces(a, solve_membership(a, w[i]), w[i]),
            "w" + std::to_string(i + 1) + " = " + print(m.coforms[i]) + " in span(annihilator), residual 0");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    o.check(reproduces(w, solve_membership(w, a[i]), a[i]), print(ann[i]) + " in span(w1, w2, w3), residual 0");
  }
  return o;
}

// --- 2 ---------------------------------------------------------------------
Outcome frobenius() {
  Outcome o;
  RandomExpr gen(2);
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::string> vars{"x"};
    for (int i = 0; i < k; ++i) vars.push_back("p" + std::to_string(i));
    Expr f = normalize(gen.polynomial(vars, 3, 4));
    while (free_symbols(f).empty()) f = normalize(gen.polynomial(vars, 3, 4));
    const CartanModel c = cartan_model(k, f);
    o.check(is_involutive(c.distribution).involutive, "Cartan k=" + std::to_string(k) + ", f = " + print(f) + ": involutive");
  }
  const FGordonModel m = fgordon_model(P("F(x,y,u,p,q)"));
  const InvolutivityResult r = is_involutive(m.distribution);
  o.check(!r.involutive, "F-Gordon with symbolic F: not involutive");
  if (r.witness) {
    const char* names[] = {"X1", "X2", "Dr", "Dt"};
    const bool outside = !contains_vf(m.distribution, r.witness->bracket).in_span;
    o.check(outside, std::string("witness [") + names[r.witness->first] + ", " + names[r.witness->second] +
                         "] = " + print(r.witness->bracket) + " lies outside D");
  }
  return o;
}

// --- 3 ---------------------------------------------------------------------
Outcome lie_derivative_identity() {
  Outcome o;
  RandomExpr gen(3);
  int zero = 0;
  for (int trial = 0; trial < kRandomInstances; ++trial) {
    const auto r = test_support::random_distribution(gen);
    const Distribution d(r.chart, r.generators);
    // omega in Ann D and Y in D as random combinations, X arbitrary.
    KForm omega(r.chart, 1);
    for (const auto& w : d.coforms()) omega = omega + w.scaled(gen.polynomial(r.chart.coordinates(), 1, 2));
    VectorField y = VectorField::zero(r.chart);
    for (const auto& g : d.generators()) y = y + g.scaled(gen.polynomial(r.chart.coordinates(), 1, 2));
    const VectorField x = test_support::random_field(gen, r.chart);
    if (normalize(pair(lie_derivative(x, omega), y) + pair(omega, bracket(x, y))).is_zero()) ++zero;
  }
  o.check(zero == kRandomInstances, std::to_string(zero) + " of " + std::to_string(kRandomInstances) +
                                        " instances normalize to 0 (dim <= 5, degree <= 2)");
  return o;
}

// --- 4 ---------------------------------------------------------------------
Outcome symmetry_criteria_agree() {
  Outcome o;
  RandomExpr gen(4);
  int agree = 0, symmetries = 0;
  for (int trial = 0; trial < kRandomInstances; ++trial) {
    const auto r = test_support::random_distribution(gen);
    const Distribution d(r.chart, r.generators);
    VectorField x = test_support::random_field(gen, r.chart);
    if (trial % 3 == 0) x = VectorField::coordinate(r.chart, r.chart[r.free_coordinate]);
    if (trial % 3 == 1) x = r.generators.front();
    const bool brackets = is_symmetry_brackets(d, x).symmetry;
    const bool forms = is_symmetry_forms(d, x).symmetry;
    agree += brackets == forms ? 1 : 0;
    symmetries += brackets ? 1 : 0;
  }
  o.check(agree == kRandomInstances,
          std::to_string(agree) + " of " + std::to_string(kRandomInstances) + " verdicts identical");
  o.info(std::to_string(symmetries) + " symmetries, " + std::to_string(kRandomInstances - symmetries) + " non-symmetries");
  return o;
}

// --- 5 ---------------------------------------------------------------------
bool contains_up_to_sign(const DeterminingSystem& sys, const Expr& target) {
  const Expr t = normalize(target), neg = normalize(-target);
  return std::any_of(sys.equations.begin(), sys.equations.end(),
                     [&](const DeterminingEquation& e) { return e.expr == t || e.expr == neg; });
}

Outcome determining_system() {
  Outcome o;
  const FGordonModel m = fgordon_model(P("F(x,y,u,p,q)"));
  const std::vector<std::string> point{"x", "y", "u"}, all{"x", "y", "u", "p", "q", "r", "t"};
  SymmetryAnsatz z(jet_chart());
  z.undetermined("x", "X", point).undetermined("y", "Y", point).undetermined("u", "U", point);
  z.undetermined("p", "P", all).undetermined("q", "Q", all).undetermined("r", "R", all).undetermined("t", "T", all);
  const DeterminingSystem sys = determining_equations(m.distribution, z);
  o.check(sys.raw_count == 12, "raw system has " + std::to_string(sys.raw_count) + " pairings");
  for (const char* fn : {"P", "Q"}) {
    for (const char* v : {"r", "t"}) {
      const std::string e = std::string("diff(") + fn + "(x,y,u,p,q,r,t), " + v + ")";
      o.check(contains_up_to_sign(sys, P(e)), std::string(fn) + "_" + v + " is an equation of the system");
    }
  }

  const CartanModel c = cartan_model(2, P("f(x,p0,p1)"));
  const std::vector<std::string> args{"x", "p0", "p1"};
  SymmetryAnsatz cz(c.chart);
  cz.undetermined("x", "a", args).undetermined("p0", "b", args).undetermined("p1", "c", args);
  const DeterminingSystem csys = determining_equations(c.distribution, cz);
  const Expr a = P("a(x,p0,p1)"), b = P("b(x,p0,p1)"), cc = P("c(x,p0,p1)"), f = P("f(x,p0,p1)");
  const VectorField& X = c.field;
  const VectorField Y = cz.realize();
  const Expr first = cc - (X.apply(b) - sym("p1") * X.apply(a));
  const Expr second = X.apply(cc) - (f * X.apply(a) + Y.apply(f));
  o.check(csys.equations.size() == 2, "Cartan k=2 system has " + std::to_string(csys.equations.size()) + " equations");
  o.check(contains_up_to_sign(csys, first) && contains_up_to_sign(csys, second),
          "each equation is c - (Xb - p1 Xa) or Xc - (f Xa + Yf) up to sign");
  Bindings bind;
  bind.bind("c", args, normalize(X.apply(b) - sym("p1") * X.apply(a)));
  bool rest_matches = true;
  for (const auto& e : csys.equations) {
    const Expr s = substitute(e.expr, bind);
    const Expr target = substitute(second, bind);
    rest_matches = rest_matches && (s.is_zero() || normalize(s - target).is_zero() || normalize(s + target).is_zero());
  }
  o.check(rest_matches, "with c = Xb - p1 Xa every residual is 0 or the second relation exactly");
  return o;
}

// --- 6 ---------------------------------------------------------------------
// Passes for a vertical field when it, or a symmetry in its class modulo D,
// satisfies the raw system.
struct GeneratorCheck {
  bool pass = false;
  std::string text;
};

GeneratorCheck check_generator(const Distribution& d, const DeterminingSystem& sys, const SymmetryAnsatz& z,
                               const VectorField& w) {
  GeneratorCheck g;
  const auto raw = verify_candidate(sys, bindings_for(z, w));
  g.text = "raw " + std::to_string(count_nonzero(raw)) + "/" + std::to_string(raw.size()) + " nonzero";
  if (all_zero(raw)) {
    g.pass = true;
    return g;
  }
  const Lift l = lift_to_symmetry(d, w);
  if (!l.liftable) {
    g.text += "; no symmetry in its class modulo D";
    return g;
  }
  const auto lifted = verify_candidate(sys, bindings_for(z, l.symmetry));
  g.pass = all_zero(lifted);
  g.text += "; lift " + print(l.symmetry) + ": " + std::to_string(count_nonzero(lifted)) + "/" +
            std::to_string(lifted.size()) + " nonzero";
  return g;
}

Outcome klein_gordon_generators() {
  Outcome o;
  const SymmetryAnsatz z = full_ansatz();
  const KleinGordonInstance kg = klein_gordon(sym("a"), sym("b"));
  const Distribution& d = kg.model.distribution;
  const DeterminingSystem sys = determining_equations(d, z);
  o.info("raw system for F = a*u + b*u^3: " + std::to_string(sys.equations.size()) + " equations");

  const GeneratorCheck x2 = check_generator(d, sys, z, kg.x2);
  const GeneratorCheck x3 = check_generator(d, sys, z, kg.x3);
  o.check(x2.pass, "X2 as printed (q*Du + u^2(a+bu)*Dp + t*Dq): " + x2.text);
  o.check(x3.pass, "X3 as printed (p*Du + r*Dp + u^2(a+bu)*Dq): " + x3.text);

  // Diagnostics: where the printed coefficient does work, and the variant with F.
  const KleinGordonInstance cubic = klein_gordon(Expr(0), sym("b"));
  const DeterminingSystem csys = determining_equations(cubic.model.distribution, z);
  o.info("with a = 0, where u^2(a+bu) = F: X2 " +
         std::string(check_generator(cubic.model.distribution, csys, z, cubic.x2).pass ? "passes" : "fails") +
         ", X3 " + (check_generator(cubic.model.distribution, csys, z, cubic.x3).pass ? "passes" : "fails"));
  const Expr F = kg.model.F;
  const Expr x = sym("x"), y = sym("y"), p = sym("p"), q = sym("q"), r = sym("r"), t = sym("t");
  const VectorField x3f(jet_chart(), {0, 0, p, r, F, 0, 0});
  const VectorField x2f(jet_chart(), {0, 0, q, F, t, 0, 0});
  o.info("with F = a*u + b*u^3 in place of u^2(a+bu): X2 " + check_generator(d, sys, z, x2f).text);
  o.info("with F = a*u + b*u^3 in place of u^2(a+bu): X3 " + check_generator(d, sys, z, x3f).text);

  // X1: flip the signs of the bare p and q terms, with either coefficient.
  const Expr g = P("u^2*(a + b*u)");
  bool any = false;
  for (const auto& [coef, label] : {std::pair{g, "u^2(a+bu)"}, std::pair{F, "F"}}) {
    for (int sp : {-1, 1}) {
      for (int sq : {1, -1}) {
        const VectorField v(jet_chart(), {0, 0, p * x - q * y, Expr(sp) * p - y * coef + r * x,
                                          Expr(sq) * q + x * coef - t * y, 0, 0});
        const GeneratorCheck c = check_generator(d, sys, z, v);
        const bool printed = sp == -1 && sq == 1 && label == std::string("u^2(a+bu)");
        o.info(std::string("X1 variant ") + (sp > 0 ? "+p" : "-p") + " in Dp, " + (sq > 0 ? "+q" : "-q") +
               " in Dq, coefficient " + label + (printed ? " (as printed)" : "") + ": " +
               (c.pass ? "PASSES; " : "fails; ") + c.text);
        any = any || c.pass;
      }
    }
  }
  o.check(any, "X1: at least one sign variant satisfies the system");
  return o;
}

// --- 7 ---------------------------------------------------------------------
Outcome flow_reproduction() {
  Outcome o;
  const KleinGordonInstance kg = klein_gordon(sym("a"), sym("b"));
  const FlowMap flow = lie_series_flow(kg.x3);
  o.check(flow.exact && flow.degree == kFlowDegree,
          std::string(flow.exact ? "exact" : "truncated") + ", degree " + std::to_string(flow.degree));
  const std::size_t qi = jet_chart().index("q");
  const auto& q = flow.series[qi];
  o.check(q.size() > 1 && q[1] == P("u^2*(a + b*u)"), "s^1 coefficient of q: " + (q.size() > 1 ? print(q[1]) : "-"));
  o.check(q.size() > 7 && q[7] == P("b*r^3/56"), "s^7 coefficient of q: " + (q.size() > 7 ? print(q[7]) : "-"));
  const auto oracle = test_support::picard_series(kg.x3, kFlowDegree + 2);
  bool match = true;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < flow.series.size(); ++i) {
    for (std::size_t k = 0; k < oracle[i].size(); ++k) {
      const Expr mine = k < flow.series[i].size() ? flow.series[i][k] : Expr(0);
      match = match && mine == oracle[i][k];
      ++compared;
    }
  }
  o.check(match, "Lie series equals Picard iteration on all " + std::to_string(compared) + " coefficients");
  return o;
}

// --- 8 ---------------------------------------------------------------------
Outcome group_law() {
  Outcome o;
  const KleinGordonInstance kg = klein_gordon(sym("a"), sym("b"));
  const FlowMap flow = lie_series_flow(kg.x3);
  const Expr s = sym("s");
  const SmoothMap back_and_forth = compose(flow_as_map(flow, -s), flow_as_map(flow, s));
  o.check(back_and_forth == SmoothMap::identity(jet_chart()), "Fl_{-s} o Fl_s = id after normalization");
  return o;
}

// --- 9 ---------------------------------------------------------------------
Outcome numeric_transport() {
  Outcome o;
  const Expr tanh_F = P("-2*u + 2*u^3");
  const Expr h = P("tanh(x + y)");
  const Expr hx = diff(h, "x"), hy = diff(h, "y");
  Bindings on_h;
  on_h.bind("u", h).bind("p", hx).bind("q", hy);
  const GridFunction exact = sample(normalize(diff(hx, "y") - substitute(tanh_F, on_h)), kGrid);
  double worst = 0;
  for (std::size_t i = 0; i < kGrid.nx; ++i) {
    for (std::size_t j = 0; j < kGrid.ny; ++j) worst = std::max(worst, std::abs(exact(i, j)));
  }
  o.check(worst < kFixtureResidual, "tanh(x+y) solves u_xy = -2u + 2u^3: residual " + sci(worst) + " < " +
                                        sci(kFixtureResidual) + " with symbolic partials");

  const KleinGordonInstance kg = klein_gordon(-2, 2);
  const auto rows = transport_solution(tanh_F, lie_series_flow(kg.x3), SolutionGrid::from_expression(h, kGrid),
                                       kTransportSteps);
  for (const auto& r : rows) {
    if (!r.empirical_order) {
      o.info("s = " + std::to_string(r.s).substr(0, 5) + ": residual " + sci(r.max_residual));
      continue;
    }
    o.check(*r.empirical_order >= kMinTransportOrder, "s = " + std::to_string(r.s).substr(0, 5) + ": residual " +
                                                          sci(r.max_residual) + ", order " +
                                                          std::to_string(*r.empirical_order).substr(0, 5) +
                                                          " >= 1.9");
  }

  const KleinGordonInstance lin = klein_gordon(1, 0);
  const auto lrows = transport_solution(sym("u"), lie_series_flow(lin.x3),
                                        SolutionGrid::from_expression(P("exp(x + y)"), kGrid), kTransportSteps);
  for (const auto& r : lrows) {
    o.check(r.max_residual < kLinearTransportResidual, "linear case exp(x+y), s = " + std::to_string(r.s).substr(0, 5) +
                                                           ": residual " + sci(r.max_residual) + " < 1e-6");
  }
  return o;
}

// --- 10 --------------------------------------------------------------------
Outcome linearized_symmetry() {
  Outcome o;
  const double r = linearized_residual(P("-2*u + 2*u^3"), SolutionGrid::from_expression(P("tanh(x + y)"), kGrid),
                                       sym("p"));
  o.check(r <= kLinearizedResidual, "phi = p on tanh(x+y): max residual " + sci(r) + " <= 1e-5");
  return o;
}

// --- 11 --------------------------------------------------------------------
Outcome cartan_ode() {
  Outcome o;
  const CartanModel m = cartan_model(2, P("-p0"));
  const auto end = integrate_flow_numeric(m.field, {0, 1, 0}, std::numbers::pi / 2, kRk4Steps);
  const std::array<double, 3> target{std::numbers::pi / 2, 0, -1};
  double err = 0;
  for (std::size_t i = 0; i < 3; ++i) err = std::max(err, std::abs(end[i] - target[i]));
  o.check(err < kRk4Tolerance, "RK4, 10^4 steps from (0, 1, 0): max error " + sci(err) + " against (pi/2, 0, -1)");
  return o;
}

// --- 12 --------------------------------------------------------------------
std::string run_capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome cli_determinism(const std::string& dgeom, const std::string& source_dir) {
  Outcome o;
  std::ifstream cases(source_dir + "/tests/golden/cases.txt");
  if (!cases) {
    o.check(false, "cannot read tests/golden/cases.txt");
    return o;
  }
  const std::regex line_re(R"(^([A-Za-z0-9_]+) \| ([0-9]+) \| (.*)$)");
  std::string line;
  int total = 0, identical = 0, golden = 0;
  while (std::getline(cases, line)) {
    std::smatch m;
    if (!std::regex_match(line, m, line_re)) continue;
    ++total;
    const std::string cmd = "cd '" + source_dir + "' && '" + dgeom + "' " + m[3].str() + " 2>&1";
    int s1 = 0, s2 = 0;
    const std::string a = run_capture(cmd, s1);
    const std::string b = run_capture(cmd, s2);
    if (a == b && s1 == s2) {
      ++identical;
    } else {
      o.check(false, m[1].str() + ": two runs differ");
    }
    std::ifstream g(source_dir + "/tests/golden/expected/" + m[1].str() + ".txt", std::ios::binary);
    std::stringstream stored;
    stored << g.rdbuf();
    golden += stored.str() == a ? 1 : 0;
  }
  o.check(total > 0 && identical == total,
          std::to_string(identical) + " of " + std::to_string(total) + " golden cases byte-identical across two runs");
  o.info(std::to_string(golden) + " of " + std::to_string(total) + " also equal the stored golden file");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string dgeom, source_dir;
  std::vector<int> only, known;
  app.add_option("--dgeom", dgeom, "Path of the dgeom CLI")->required();
  app.add_option("--source-dir", source_dir, "Repository root")->required();
  app.add_option("--only", only, "Run these criteria only");
  app.add_option("--known-failure", known, "Criteria expected to fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"annihilator duality on the F-Gordon model", annihilator_duality},
      {"Frobenius verdicts (Cartan involutive, F-Gordon not)", frobenius},
      {"(L_X w)(Y) + w([X,Y]) = 0 on random instances", lie_derivative_identity},
      {"form and bracket symmetry criteria agree", symmetry_criteria_agree},
      {"determining systems (P_r, P_t, Q_r, Q_t; Cartan k=2)", determining_system},
      {"Klein-Gordon generators satisfy the determining system", klein_gordon_generators},
      {"Lie series flow of X3 against the Picard oracle", flow_reproduction},
      {"flow group law", group_law},
      {"numeric transport of tanh and exp fixtures", numeric_transport},
      {"linearized symmetry residual", linearized_symmetry},
      {"Cartan ODE correspondence by RK4", cartan_ode},
      {"CLI golden reports are deterministic", [&] { return cli_determinism(dgeom, source_dir); }},
  };

  const std::set<int> selected(only.begin(), only.end());
  const std::set<int> expected(known.begin(), known.end());
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", secs);
    if (secs >= kTimeBudgetSeconds) o.check(false, std::string("took ") + time + ", budget 10 s");
    if (!o.pass) failed.insert(id);
    std::printf("criterion %2d  %s  %s  [%s]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first, time);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
  }

  std::set<int> expected_run;
  for (int k : expected) {
    if (selected.empty() || selected.count(k)) expected_run.insert(k);
  }
  std::printf("failed:");
  for (int k : failed) std::printf(" %d", k);
  std::printf("%s\n", failed.empty() ? " none" : "");
  if (failed != expected_run) {
    std::printf("failures differ from the known failures\n");
    return 1;
  }
  return 0;
}
