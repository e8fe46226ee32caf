#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dgeom/parse.hpp"

namespace dgeom::cli {

using json = nlohmann::ordered_json;

void Report::note(const GenericityLedger& ledger) {
  // Conditions are kept up to sign.
  for (const auto& c : ledger.conditions()) {
    const std::string s = print(c) + " != 0";
    const std::string neg = print(normalize(-c)) + " != 0";
    if (std::find(genericity.begin(), genericity.end(), s) == genericity.end() &&
        std::find(genericity.begin(), genericity.end(), neg) == genericity.end()) {
      genericity.push_back(s);
    }
  }
}

json Report::json() const {
  nlohmann::ordered_json out;
  out["command"] = command;
  out["model"] = model;
  out["results"] = results;
  out["genericity"] = genericity;
  return out;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

json expr_list(const std::vector<Expr>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(print(e));
  return out;
}

Report start(const std::string& command, const Model& m) {
  Report r;
  r.command = command;
  r.model = m.name;
  return r;
}

void finish_genericity(Report& r) {
  if (r.genericity.empty()) return;
  r.text += "genericity: " + join(r.genericity, "; ") + "\n";
}

const std::string& generator_name(const Model& m, std::size_t i) { return m.generator_names.at(i); }

// Membership of `target` in the span of 1-form coefficient vectors.
bool form_in_span(const std::vector<KForm>& basis, const KForm& target, Report& r) {
  std::vector<ExprVector> cols;
  for (const auto& b : basis) cols.push_back(b.covector());
  const Membership mem = solve_membership(cols, target.covector());
  r.note(mem.ledger);
  return mem.in_span;
}

}  // namespace

Report run_check(const Model& m, const Options& opt) {
  Report r = start("check", m);
  const Distribution& d = m.require_distribution();
  r.note(d.ledger());
  const std::vector<KForm> ann = annihilator(d);

  // Round trip: the kernel of the annihilator is D again.
  const std::vector<VectorField> kernel = coform_kernel(m.chart, ann);
  bool round_trip = kernel.size() == d.rank();
  for (const auto& k : kernel) {
    const Membership mem = contains_vf(d, k);
    r.note(mem.ledger);
    round_trip = round_trip && mem.in_span;
  }
  std::optional<bool> coforms_match;
  if (m.coforms_given && !ann.empty()) {
    // Given coforms and the computed annihilator span the same space.
    bool same = true;
    for (const auto& f : d.coforms()) same = same && form_in_span(ann, f, r);
    for (const auto& f : ann) same = same && form_in_span(d.coforms(), f, r);
    coforms_match = same;
  }
  const InvolutivityResult inv = is_involutive(d);
  r.note(inv.ledger);

  std::ostringstream out;
  out << "model: " << m.name << "\n";
  out << "coordinates: " << join(m.chart.coordinates(), ", ") << "\n";
  if (!m.parameters.empty()) out << "parameters: " << join(m.parameters, ", ") << "\n";
  out << "rank: " << d.rank() << "\n";
  out << "annihilator: " << ann.size() << (ann.size() == 1 ? " form" : " forms") << "\n";
  for (const auto& f : ann) out << "  " << f << "\n";
  out << "annihilator round trip: " << (round_trip ? "ok" : "failed") << "\n";
  if (coforms_match) out << "declared coforms: " << (*coforms_match ? "same span" : "different span") << "\n";
  out << "involutive: " << (inv.involutive ? "true" : "false");
  json witness = nullptr;
  if (inv.witness) {
    const std::string a = generator_name(m, inv.witness->first), b = generator_name(m, inv.witness->second);
    out << "; witness: [" << a << ", " << b << "] = " << inv.witness->bracket;
    witness = json{{"first", a}, {"second", b}, {"bracket", print(inv.witness->bracket)}};
  }
  out << "\n";
  r.text = out.str();

  json ann_json = json::array();
  for (const auto& f : ann) ann_json.push_back(print(f));
  r.results.push_back(json{{"rank", d.rank()},
                           {"annihilator", ann_json},
                           {"round_trip", round_trip},
                           {"coforms_match", coforms_match ? json(*coforms_match) : json(nullptr)},
                           {"involutive", inv.involutive},
                           {"witness", witness}});
  finish_genericity(r);
  if (!round_trip || (coforms_match && !*coforms_match)) r.exit_code = kCheckFailed;
  if (opt.require_involutive && !inv.involutive) r.exit_code = kCheckFailed;
  return r;
}

Report run_symmetry(const Model& m, const std::vector<std::string>& names, const Options&) {
  Report r = start("symmetry", m);
  const Distribution& d = m.require_distribution();
  std::vector<std::string> todo = names;
  if (todo.empty()) {
    for (const auto& [n, f] : m.candidates) todo.push_back(n);
    if (todo.empty()) throw Error("model " + m.name + " declares no candidates; name a vector field");
  }
  std::ostringstream out;
  for (const auto& name : todo) {
    const VectorField& x = m.field(name);
    const SymmetryClass c = classify(d, x);
    r.note(c.ledger);
    json item{{"candidate", name},      {"class", to_string(c.kind)}, {"coefficients", nullptr},
              {"representative", nullptr}, {"witness", nullptr},          {"lift", nullptr}};
    out << name << ": " << to_string(c.kind);
    switch (c.kind) {
      case SymmetryClass::Kind::Characteristic:
        out << "; coefficients: " << join([&] {
          std::vector<std::string> s;
          for (const auto& e : c.coefficients) s.push_back(print(e));
          return s;
        }(), ", ");
        item["coefficients"] = expr_list(c.coefficients);
        break;
      case SymmetryClass::Kind::ShufflingOnly:
        out << "; representative: " << c.representative;
        item["representative"] = print(c.representative);
        break;
      case SymmetryClass::Kind::NotASymmetry: {
        const std::string g = generator_name(m, c.witness->second);
        out << "; witness: [" << name << ", " << g << "] = " << c.witness->bracket;
        item["witness"] = json{{"generator", g}, {"bracket", print(c.witness->bracket)}};
        // A field outside D can still represent a symmetry class.
        const Membership inside = contains_vf(d, x);
        r.note(inside.ledger);
        if (!inside.in_span) {
          const Lift l = lift_to_symmetry(d, x);
          r.note(l.ledger);
          out << "\n  lift: ";
          if (l.liftable) {
            out << l.symmetry;
            item["lift"] = print(l.symmetry);
          } else {
            out << "none";
            item["lift"] = nullptr;
          }
        }
        break;
      }
    }
    out << "\n";
    r.results.push_back(std::move(item));
  }
  r.text = out.str();
  finish_genericity(r);
  return r;
}

namespace {

struct Verification {
  std::size_t nonzero = 0;
  std::size_t unresolved = 0;
  json residuals = json::array();
  std::string text;
};

std::string tag(const DeterminingEquation& e) {
  return "(" + std::to_string(e.form + 1) + "," + std::to_string(e.generator + 1) + "," + print(e.monomial) + ")";
}

Verification verify(const DeterminingSystem& sys, const Bindings& b) {
  Verification v;
  const std::vector<ZeroStatus> st = verify_candidate(sys, b);
  for (std::size_t k = 0; k < st.size(); ++k) {
    if (st[k].zero()) continue;
    const Expr residual = substitute(sys.equations[k].expr, b);
    const std::string status = st[k].nonzero() ? "nonzero" : "unresolved";
    (st[k].nonzero() ? v.nonzero : v.unresolved)++;
    v.text += "  " + tag(sys.equations[k]) + ": " + status + ": " + print(residual) + "\n";
    v.residuals.push_back(json{{"tag", tag(sys.equations[k])}, {"status", status}, {"residual", print(residual)}});
  }
  return v;
}

std::string summary(const Verification& v, std::size_t total) {
  if (v.nonzero == 0 && v.unresolved == 0) return "all " + std::to_string(total) + " residuals: zero";
  std::string s = std::to_string(v.nonzero) + " of " + std::to_string(total) + " residuals nonzero";
  if (v.unresolved) s += ", " + std::to_string(v.unresolved) + " unresolved";
  return s;
}

}  // namespace

Report run_determining(const Model& m, const std::optional<std::string>& ansatz_name,
                       const std::optional<std::string>& verify_name, const Options&) {
  Report r = start("determining", m);
  const Distribution& d = m.require_distribution();
  std::string name;
  if (ansatz_name) {
    name = *ansatz_name;
  } else if (m.ansatzes.size() == 1) {
    name = m.ansatzes.front().first;
  } else {
    throw Error(m.ansatzes.empty() ? "model " + m.name + " declares no ansatz" : "several ansatzes; pick one with --ansatz");
  }
  const SymmetryAnsatz& z = m.ansatz(name);
  const DeterminingSystem sys = determining_equations(d, z);
  r.note(sys.ledger);

  std::ostringstream out;
  out << "ansatz " << name << ": " << z.realize() << "\n";
  out << "pairings: " << sys.raw_count << "; equations: " << sys.equations.size() << "\n";
  if (!sys.collection_variables.empty()) out << "collected in: " << join(sys.collection_variables, ", ") << "\n";
  out << (sys.empty() ? "system empty\n" : sys.listing());

  json eqs = json::array();
  for (const auto& e : sys.equations) {
    eqs.push_back(json{{"form", e.form + 1}, {"generator", e.generator + 1}, {"monomial", print(e.monomial)},
                       {"expr", print(e.expr)}});
  }
  json item{{"ansatz", name},
            {"field", print(z.realize())},
            {"pairings", sys.raw_count},
            {"collected_in", sys.collection_variables},
            {"equations", eqs}};

  if (verify_name) {
    const VectorField& x = m.field(*verify_name);
    json vj{{"candidate", *verify_name}};
    bool pass = false;
    try {
      const Verification v = verify(sys, bindings_for(z, x));
      pass = v.nonzero == 0 && v.unresolved == 0;
      out << "verify " << *verify_name << ": " << summary(v, sys.equations.size()) << "\n" << v.text;
      vj["passed"] = pass;
      vj["residuals"] = v.residuals;
    } catch (const DomainError& e) {
      out << "verify " << *verify_name << ": outside the ansatz (" << e.what() << ")\n";
      vj["passed"] = nullptr;
      vj["residuals"] = nullptr;
    }
    vj["lift"] = nullptr;
    bool lift_pass = false;
    if (!pass) {
      const Membership inside = contains_vf(d, x);
      r.note(inside.ledger);
      const Lift l = inside.in_span ? Lift{} : lift_to_symmetry(d, x);
      r.note(l.ledger);
      if (!l.liftable) {
        out << "lift of " << *verify_name << ": none\n";
      } else {
        out << "lift of " << *verify_name << ": " << l.symmetry << "\n";
        json lj{{"field", print(l.symmetry)}};
        try {
          const Verification lv = verify(sys, bindings_for(z, l.symmetry));
          lift_pass = lv.nonzero == 0 && lv.unresolved == 0;
          out << "verify lift: " << summary(lv, sys.equations.size()) << "\n" << lv.text;
          lj["passed"] = lift_pass;
          lj["residuals"] = lv.residuals;
        } catch (const DomainError& e) {
          out << "verify lift: outside the ansatz (" << e.what() << ")\n";
          lj["passed"] = nullptr;
        }
        vj["lift"] = lj;
      }
    }
    item["verify"] = vj;
    if (!pass && !lift_pass) r.exit_code = kCheckFailed;
  }
  r.results.push_back(std::move(item));
  r.text = out.str();
  finish_genericity(r);
  return r;
}

Report run_flow(const Model& m, const std::string& field, std::optional<int> order,
                const std::optional<std::string>& at, const Options& opt) {
  Report r = start("flow", m);
  const VectorField& x = m.field(field);
  const int max_order = order.value_or(opt.max_order);
  const FlowMap flow = lie_series_flow(x, max_order);

  std::ostringstream out;
  out << "flow of " << field << ", parameter " << flow.parameter << ": "
      << (flow.exact ? "exact, degree " : "truncated at ") << flow.degree << "\n";
  json series = json::object();
  json components = json::object();
  for (std::size_t i = 0; i < m.chart.dim(); ++i) {
    out << m.chart[i] << ": " << flow.components[i] << "\n";
    series[m.chart[i]] = expr_list(flow.series[i]);
    components[m.chart[i]] = print(flow.components[i]);
  }
  json item{{"field", field},     {"parameter", flow.parameter}, {"exact", flow.exact},
            {"degree", flow.degree}, {"series", series},           {"components", components}};
  if (at) {
    Expr s;
    try {
      s = normalize(parse(*at));
    } catch (const ParseError& e) {
      throw Error("--at: " + std::string(e.what()));
    }
    if (!free_symbols(s).empty()) throw Error("--at expects a number");
    const SmoothMap map = flow_as_map(flow, s);
    out << "at " << flow.parameter << " = " << s << ":\n";
    json values = json::object();
    for (std::size_t i = 0; i < m.chart.dim(); ++i) {
      out << "  " << m.chart[i] << ": " << map.components()[i] << "\n";
      values[m.chart[i]] = print(map.components()[i]);
    }
    item["at"] = json{{"value", print(s)}, {"components", values}};
  }
  r.results.push_back(std::move(item));
  r.text = out.str();
  return r;
}

namespace {

void require_numeric(const Expr& e, const std::string& what) {
  for (const auto& s : free_symbols(e)) {
    if (!jet_chart().contains(s) && s != "s") {
      throw Error(what + " depends on '" + s + "'; give it a value with --set " + s + "=...");
    }
  }
}

}  // namespace

Report run_transport(const Model& m, const std::string& fixture_name, const std::string& field,
                     const std::vector<double>& s_values, const Options& opt) {
  Report r = start("transport", m);
  if (!(m.chart == jet_chart())) throw Error("transport needs the coordinates x, y, u, p, q, r, t");
  const Expr* F = m.definition("F");
  if (!F) throw Error("transport needs a definition of F");
  require_numeric(*F, "F");
  const Fixture& fx = m.fixture(fixture_name);
  require_numeric(fx.h, "fixture " + fixture_name);
  const FlowMap flow = lie_series_flow(m.field(field), opt.max_order);
  for (const auto& c : flow.components) require_numeric(c, "flow of " + field);

  // Residual of the fixture itself, from exact partials.
  const Expr hx = diff(fx.h, "x"), hy = diff(fx.h, "y");
  Bindings on_h;
  on_h.bind("u", fx.h).bind("p", hx).bind("q", hy);
  const GridFunction exact = sample(normalize(diff(hx, "y") - substitute(*F, on_h)), fx.grid);
  double fixture_residual = 0;
  for (std::size_t i = 0; i < fx.grid.nx; ++i) {
    for (std::size_t j = 0; j < fx.grid.ny; ++j) fixture_residual = std::max(fixture_residual, std::abs(exact(i, j)));
  }

  const SolutionGrid grid = SolutionGrid::from_expression(fx.h, fx.grid);
  const std::vector<TransportRow> rows = transport_solution(*F, flow, grid, s_values);

  std::ostringstream out;
  const GridSpec& g = fx.grid;
  out << "transport of " << fixture_name << " = " << fx.h << " along " << field << "\n";
  out << "grid: " << g.nx << "x" << g.ny << " over [" << g.x_min << ", " << g.x_max << "]x[" << g.y_min << ", "
      << g.y_max << "], stencil order " << kDefaultStencilOrder << "\n";
  out << "fixture residual (exact partials): " << sci(fixture_residual) << "\n";
  out << "s           residual    order\n";
  json table = json::array();
  bool below = true;
  for (const auto& row : rows) {
    std::string s = fixed(row.s, 6);
    s.resize(std::max<std::size_t>(s.size(), 12), ' ');
    std::string res = sci(row.max_residual);
    res.resize(12, ' ');
    out << s << res << (row.empirical_order ? fixed(*row.empirical_order, 3) : "-") << "\n";
    table.push_back(json{{"s", row.s},
                         {"max_residual", row.max_residual},
                         {"empirical_order", row.empirical_order ? json(*row.empirical_order) : json(nullptr)}});
    below = below && row.max_residual <= opt.tolerance;
  }
  out << "all residuals <= " << sci(opt.tolerance) << ": " << (below ? "yes" : "no") << "\n";
  r.results.push_back(json{{"fixture", fixture_name},
                           {"field", field},
                           {"fixture_residual", fixture_residual},
                           {"tolerance", opt.tolerance},
                           {"below_tolerance", below},
                           {"rows", table}});
  r.text = out.str();
  return r;
}

}  // namespace dgeom::cli
