#include "model_file.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dgeom/parse.hpp"

namespace dgeom::cli {

ModelError::ModelError(std::string path, std::size_t line, std::size_t column, const std::string& message)
    : Error(path + ":" + std::to_string(line) + (column ? ":" + std::to_string(column) : std::string()) + ": " +
            message),
      line_(line),
      column_(column) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t leading_space(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  return b == std::string::npos ? s.size() : b;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Entry {
  std::size_t line = 0;
  std::string key;  // empty for bare lines
  std::size_t key_col = 0;
  std::string value;
  std::size_t value_col = 0;  // 1-based column of value[0]
};

struct Section {
  std::string name;
  std::string label;  // ansatz name
  std::size_t line = 0;
  std::vector<Entry> entries;
};

const std::set<std::string> kSections{"coordinates", "parameters", "functions", "definitions", "vectorfields",
                                      "forms",       "distribution", "candidates", "ansatz", "fixtures"};

// Strip the " at offset N" suffix the expression parser appends.
std::string parse_message(const ParseError& e) {
  std::string m = e.what();
  const auto at = m.rfind(" at offset ");
  return at == std::string::npos ? m : m.substr(0, at);
}

class Builder {
 public:
  Builder(std::string path, const ParameterOverrides& overrides) : path_(std::move(path)), overrides_(overrides) {}

  Model build(const std::string& text);

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) const {
    throw ModelError(path_, line, col, msg);
  }

  std::vector<Section> split_sections(const std::string& text);
  const Section* section(const std::string& name) const;
  std::vector<const Section*> sections(const std::string& name) const;

  Expr expression(const std::string& text, std::size_t line, std::size_t col);
  void check_names(const Expr& e, std::size_t line, std::size_t col) const;
  std::vector<Expr> coefficient_list(const Entry& e);
  void claim_name(const std::string& name, std::size_t line, std::size_t col);

  void read_coordinates();
  void read_parameters();
  void read_functions();
  void read_definitions();
  void read_vectorfields();
  void read_forms();
  void read_distribution();
  void read_candidates();
  void read_ansatzes();
  void read_fixtures();

  std::string path_;
  const ParameterOverrides& overrides_;
  std::vector<Section> sections_;
  Model m_;
  std::set<std::string> declared_parameters_;
  Bindings substitutions_;
  std::set<std::string> used_names_;
};

std::vector<Section> Builder::split_sections(const std::string& text) {
  std::vector<Section> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t indent = leading_space(raw);
    if (t[0] == '[') {
      if (t.back() != ']') fail(line, indent + 1, "unterminated section header");
      const std::string inner = trim(t.substr(1, t.size() - 2));
      Section s;
      s.line = line;
      const auto space = inner.find_first_of(" \t");
      s.name = inner.substr(0, space);
      if (space != std::string::npos) s.label = trim(inner.substr(space));
      if (!kSections.count(s.name)) fail(line, indent + 2, "unknown section '" + s.name + "'");
      if (s.name == "ansatz" ? !is_identifier(s.label) : !s.label.empty()) {
        fail(line, indent + 2, s.name == "ansatz" ? "ansatz sections need a name: [ansatz NAME]"
                                                  : "unexpected text after section name");
      }
      for (const auto& prev : out) {
        if (prev.name == s.name && prev.label == s.label) fail(line, indent + 1, "duplicate section [" + inner + "]");
      }
      out.push_back(std::move(s));
      continue;
    }
    if (out.empty()) fail(line, indent + 1, "entry outside of any section");
    Entry e;
    e.line = line;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      e.value = t;
      e.value_col = indent + 1;
    } else {
      e.key = trim(raw.substr(0, eq));
      e.key_col = indent + 1;
      const std::string rest = raw.substr(eq + 1);
      e.value = trim(rest);
      e.value_col = eq + 2 + leading_space(rest);
      if (e.value.empty()) fail(line, eq + 1, "missing value after '='");
    }
    out.back().entries.push_back(std::move(e));
  }
  return out;
}

const Section* Builder::section(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<const Section*> Builder::sections(const std::string& name) const {
  std::vector<const Section*> out;
  for (const auto& s : sections_) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

void Builder::check_names(const Expr& e, std::size_t line, std::size_t col) const {
  switch (e.kind()) {
    case Kind::Symbol:
      if (!m_.chart.contains(e.name()) && !declared_parameters_.count(e.name()) &&
          !substitutions_.symbols.count(e.name())) {
        fail(line, col, "undeclared symbol '" + e.name() + "'");
      }
      return;
    case Kind::Function:
    case Kind::Derivative: {
      const auto it = m_.functions.find(e.name());
      if (it == m_.functions.end()) fail(line, col, "undeclared function '" + e.name() + "'");
      if (it->second != e.children().size()) {
        fail(line, col,
             "function '" + e.name() + "' takes " + std::to_string(it->second) + " arguments, got " +
                 std::to_string(e.children().size()));
      }
      break;
    }
    default:
      break;
  }
  for (const auto& c : e.children()) check_names(c, line, col);
}

Expr Builder::expression(const std::string& text, std::size_t line, std::size_t col) {
  Expr e;
  try {
    e = parse(text);
  } catch (const ParseError& err) {
    fail(line, col + err.offset(), parse_message(err));
  }
  check_names(e, line, col);
  return substitute(e, substitutions_);
}

std::vector<Expr> Builder::coefficient_list(const Entry& e) {
  const auto items = split_list(e.value);
  if (items.size() != m_.chart.dim()) {
    fail(e.line, e.value_col,
         "expected " + std::to_string(m_.chart.dim()) + " coefficients, got " + std::to_string(items.size()));
  }
  std::vector<Expr> out;
  for (const auto& [text, offset] : items) out.push_back(expression(text, e.line, e.value_col + offset));
  return out;
}

void Builder::claim_name(const std::string& name, std::size_t line, std::size_t col) {
  if (!is_identifier(name)) fail(line, col, "invalid name '" + name + "'");
  if (!used_names_.insert(name).second) fail(line, col, "name '" + name + "' is already defined");
}

void Builder::read_coordinates() {
  const Section* s = section("coordinates");
  if (!s) fail(1, 0, "missing [coordinates] section");
  std::vector<std::string> coords;
  for (const auto& e : s->entries) {
    if (!e.key.empty()) fail(e.line, e.key_col, "coordinates are a plain list of names");
    for (const auto& [name, offset] : split_list(e.value)) {
      if (!is_identifier(name)) fail(e.line, e.value_col + offset, "invalid coordinate name '" + name + "'");
      if (std::find(coords.begin(), coords.end(), name) != coords.end()) {
        fail(e.line, e.value_col + offset, "duplicate coordinate '" + name + "'");
      }
      coords.push_back(name);
    }
  }
  if (coords.empty()) fail(s->line, 0, "no coordinates declared");
  m_.chart = Chart(coords);
  for (const auto& c : coords) used_names_.insert("D" + c);
}

void Builder::read_parameters() {
  std::map<std::string, Expr> values;
  if (const Section* s = section("parameters")) {
    for (const auto& e : s->entries) {
      const std::string name = e.key.empty() ? e.value : e.key;
      const std::size_t col = e.key.empty() ? e.value_col : e.key_col;
      if (e.key.empty() && name.find(',') != std::string::npos) {
        for (const auto& [item, offset] : split_list(name)) {
          if (!is_identifier(item)) fail(e.line, col + offset, "invalid parameter name '" + item + "'");
          if (m_.chart.contains(item) || !declared_parameters_.insert(item).second) {
            fail(e.line, col + offset, "parameter '" + item + "' clashes with an earlier name");
          }
          m_.parameters.push_back(item);
        }
        continue;
      }
      if (!is_identifier(name)) fail(e.line, col, "invalid parameter name '" + name + "'");
      if (m_.chart.contains(name) || !declared_parameters_.insert(name).second) {
        fail(e.line, col, "parameter '" + name + "' clashes with an earlier name");
      }
      m_.parameters.push_back(name);
      if (!e.key.empty()) {
        Expr v;
        try {
          v = normalize(parse(e.value));
        } catch (const ParseError& err) {
          fail(e.line, e.value_col + err.offset(), parse_message(err));
        }
        if (!v.is_rational()) fail(e.line, e.value_col, "parameter values must be rational numbers");
        values[name] = v;
      }
    }
  }
  for (const auto& [name, value] : overrides_) {
    if (!declared_parameters_.count(name)) throw Error("--set: '" + name + "' is not a parameter of " + path_);
    const Expr v = normalize(value);
    if (!v.is_rational()) throw Error("--set: value of '" + name + "' must be a rational number");
    values[name] = v;
  }
  std::vector<std::string> symbolic;
  for (const auto& p : m_.parameters) {
    const auto it = values.find(p);
    if (it == values.end()) {
      symbolic.push_back(p);
      continue;
    }
    substitutions_.bind(p, it->second);
    m_.parameter_values[p] = it->second.value().get_d();
  }
  m_.parameters = symbolic;
}

void Builder::read_functions() {
  const Section* s = section("functions");
  if (!s) return;
  for (const auto& e : s->entries) {
    if (!e.key.empty()) fail(e.line, e.key_col, "functions are declared as name(arg, ...)");
    for (const auto& [decl, offset] : split_list(e.value)) {
      const auto open = decl.find('(');
      const std::string name = trim(decl.substr(0, open));
      if (open == std::string::npos || decl.back() != ')' || !is_identifier(name)) {
        fail(e.line, e.value_col + offset, "expected a declaration name(arg, ...)");
      }
      const auto args = split_list(decl.substr(open + 1, decl.size() - open - 2));
      if (args.empty()) fail(e.line, e.value_col + offset, "function '" + name + "' needs arguments");
      if (m_.functions.count(name)) fail(e.line, e.value_col + offset, "function '" + name + "' declared twice");
      m_.functions[name] = args.size();
    }
  }
}

void Builder::read_definitions() {
  const Section* s = section("definitions");
  if (!s) return;
  for (const auto& e : s->entries) {
    if (e.key.empty()) fail(e.line, e.value_col, "definitions read name = expression");
    if (!is_identifier(e.key)) fail(e.line, e.key_col, "invalid name '" + e.key + "'");
    if (m_.chart.contains(e.key) || declared_parameters_.count(e.key) || substitutions_.symbols.count(e.key)) {
      fail(e.line, e.key_col, "definition '" + e.key + "' clashes with an earlier name");
    }
    const Expr v = expression(e.value, e.line, e.value_col);
    m_.definitions.emplace_back(e.key, v);
    substitutions_.bind(e.key, v);
  }
}

void Builder::read_vectorfields() {
  for (const auto& c : m_.chart.coordinates()) {
    m_.vectorfields.emplace_back("D" + c, VectorField::coordinate(m_.chart, c));
  }
  const Section* s = section("vectorfields");
  if (!s) return;
  for (const auto& e : s->entries) {
    if (e.key.empty()) fail(e.line, e.value_col, "vector fields read name = c1, c2, ...");
    claim_name(e.key, e.line, e.key_col);
    m_.vectorfields.emplace_back(e.key, VectorField(m_.chart, coefficient_list(e)));
  }
}

void Builder::read_forms() {
  const Section* s = section("forms");
  if (!s) return;
  for (const auto& e : s->entries) {
    if (e.key.empty()) fail(e.line, e.value_col, "forms read name = c1, c2, ...");
    claim_name(e.key, e.line, e.key_col);
    m_.forms.emplace_back(e.key, KForm::one_form(m_.chart, coefficient_list(e)));
  }
}

template <class T>
const T* lookup(const Named<T>& items, const std::string& name) {
  for (const auto& [n, v] : items) {
    if (n == name) return &v;
  }
  return nullptr;
}

void Builder::read_distribution() {
  const Section* s = section("distribution");
  if (!s) return;
  std::vector<VectorField> gens;
  std::vector<KForm> forms;
  std::optional<std::size_t> gens_line, forms_line;
  for (const auto& e : s->entries) {
    if (e.key == "generators") {
      if (gens_line) fail(e.line, e.key_col, "generators listed twice");
      gens_line = e.line;
      for (const auto& [name, offset] : split_list(e.value)) {
        const VectorField* f = lookup(m_.vectorfields, name);
        if (!f) fail(e.line, e.value_col + offset, "unknown vector field '" + name + "'");
        gens.push_back(*f);
        m_.generator_names.push_back(name);
      }
    } else if (e.key == "coforms") {
      if (forms_line) fail(e.line, e.key_col, "coforms listed twice");
      forms_line = e.line;
      for (const auto& [name, offset] : split_list(e.value)) {
        const KForm* f = lookup(m_.forms, name);
        if (!f) fail(e.line, e.value_col + offset, "unknown form '" + name + "'");
        forms.push_back(*f);
      }
    } else {
      fail(e.line, e.key_col ? e.key_col : e.value_col, "expected 'generators = ...' or 'coforms = ...'");
    }
  }
  const std::size_t line = forms_line && !gens_line ? *forms_line : gens_line.value_or(s->line);
  try {
    if (gens_line && forms_line) {
      m_.distribution = Distribution::with_coforms(m_.chart, gens, forms);
    } else if (gens_line) {
      m_.distribution = Distribution(m_.chart, gens);
    } else if (forms_line) {
      m_.distribution = Distribution::from_coforms(m_.chart, forms);
      for (std::size_t i = 0; i < m_.distribution.rank(); ++i) m_.generator_names.push_back("K" + std::to_string(i + 1));
    } else {
      fail(s->line, 0, "empty [distribution] section");
    }
  } catch (const ModelError&) {
    throw;
  } catch (const Error& err) {
    fail(line, 0, err.what());
  }
  m_.has_distribution = true;
  m_.coforms_given = forms_line.has_value();
}

void Builder::read_candidates() {
  const Section* s = section("candidates");
  if (!s) return;
  for (const auto& e : s->entries) {
    if (e.key.empty()) {
      // A bare name lists an existing vector field.
      const VectorField* f = is_identifier(e.value) ? lookup(m_.vectorfields, e.value) : nullptr;
      if (!f) fail(e.line, e.value_col, "candidates read name = field | point(X, Y, U) | c1, c2, ... or a field name");
      if (lookup(m_.candidates, e.value)) fail(e.line, e.value_col, "candidate '" + e.value + "' listed twice");
      m_.candidates.emplace_back(e.value, *f);
      continue;
    }
    claim_name(e.key, e.line, e.key_col);
    if (e.value.rfind("point(", 0) == 0 && e.value.back() == ')') {
      if (!(m_.chart == jet_chart())) fail(e.line, e.value_col, "point(...) candidates need the coordinates x, y, u, p, q, r, t");
      const Expr* F = m_.definition("F");
      if (!F) fail(e.line, e.value_col, "point(...) candidates need a definition of F");
      const std::string inner = e.value.substr(6, e.value.size() - 7);
      const auto items = split_list(inner);
      if (items.size() != 3) fail(e.line, e.value_col, "point(...) takes X, Y, U");
      std::vector<Expr> xyu;
      for (const auto& [text, offset] : items) {
        const Expr v = expression(text, e.line, e.value_col + 6 + offset);
        for (const char* c : {"p", "q", "r", "t"}) {
          if (depends_on(v, c)) fail(e.line, e.value_col + 6 + offset, "point components depend on x, y, u only");
        }
        xyu.push_back(v);
      }
      try {
        m_.candidates.emplace_back(e.key, shuffle_representative(*F, xyu[0], xyu[1], xyu[2]).field);
      } catch (const Error& err) {
        fail(e.line, e.value_col, err.what());
      }
    } else if (is_identifier(e.value)) {
      const VectorField* f = lookup(m_.vectorfields, e.value);
      if (!f) fail(e.line, e.value_col, "unknown vector field '" + e.value + "'");
      m_.candidates.emplace_back(e.key, *f);
    } else {
      m_.candidates.emplace_back(e.key, VectorField(m_.chart, coefficient_list(e)));
    }
  }
}

void Builder::read_ansatzes() {
  for (const Section* s : sections("ansatz")) {
    SymmetryAnsatz z(m_.chart);
    std::set<std::string> seen;
    for (const auto& e : s->entries) {
      if (e.key.empty()) fail(e.line, e.value_col, "ansatz entries read coordinate = expression | ?Name(args)");
      if (!m_.chart.contains(e.key)) fail(e.line, e.key_col, "'" + e.key + "' is not a coordinate");
      if (!seen.insert(e.key).second) fail(e.line, e.key_col, "component '" + e.key + "' given twice");
      if (e.value[0] != '?') {
        z.set(e.key, expression(e.value, e.line, e.value_col));
        continue;
      }
      const std::string decl = e.value.substr(1);
      const auto open = decl.find('(');
      const std::string fn = trim(decl.substr(0, open));
      if (open == std::string::npos || decl.back() != ')' || !is_identifier(fn)) {
        fail(e.line, e.value_col, "expected ?Name(coordinate, ...)");
      }
      if (m_.functions.count(fn)) fail(e.line, e.value_col + 1, "'" + fn + "' is a declared function");
      std::vector<std::string> args;
      for (const auto& [a, offset] : split_list(decl.substr(open + 1, decl.size() - open - 2))) args.push_back(a);
      try {
        z.undetermined(e.key, fn, args);
      } catch (const DomainError& err) {
        fail(e.line, e.value_col, err.what());
      }
    }
    if (lookup(m_.ansatzes, s->label)) fail(s->line, 0, "duplicate ansatz '" + s->label + "'");
    m_.ansatzes.emplace_back(s->label, std::move(z));
  }
}

void Builder::read_fixtures() {
  const Section* s = section("fixtures");
  if (!s) return;
  std::vector<const Entry*> grids;
  for (const auto& e : s->entries) {
    if (e.key.empty()) fail(e.line, e.value_col, "fixtures read name = expression or name.grid = ...");
    if (e.key.size() > 5 && e.key.ends_with(".grid")) {
      grids.push_back(&e);
      continue;
    }
    claim_name(e.key, e.line, e.key_col);
    const Expr h = expression(e.value, e.line, e.value_col);
    for (const auto& c : m_.chart.coordinates()) {
      if (c != "x" && c != "y" && depends_on(h, c)) fail(e.line, e.value_col, "fixtures are functions of x and y");
    }
    m_.fixtures.emplace_back(e.key, Fixture{h, GridSpec{}});
  }
  for (const Entry* e : grids) {
    const std::string name = e->key.substr(0, e->key.size() - 5);
    auto it = std::find_if(m_.fixtures.begin(), m_.fixtures.end(), [&](const auto& f) { return f.first == name; });
    if (it == m_.fixtures.end()) fail(e->line, e->key_col, "grid for unknown fixture '" + name + "'");
    const auto items = split_list(e->value);
    if (items.size() != 6) fail(e->line, e->value_col, "grid reads x_min, x_max, y_min, y_max, nx, ny");
    std::vector<mpq_class> v;
    for (const auto& [text, offset] : items) {
      Expr q;
      try {
        q = normalize(parse(text));
      } catch (const ParseError& err) {
        fail(e->line, e->value_col + offset + err.offset(), parse_message(err));
      }
      if (!q.is_rational()) fail(e->line, e->value_col + offset, "grid entries must be numbers");
      v.push_back(q.value());
    }
    for (int k : {4, 5}) {
      if (v[k].get_den() != 1 || v[k] < 7) fail(e->line, e->value_col, "grid sizes must be integers >= 7");
    }
    if (v[0] >= v[1] || v[2] >= v[3]) fail(e->line, e->value_col, "empty grid range");
    it->second.grid = GridSpec{v[0].get_d(), v[1].get_d(), v[2].get_d(), v[3].get_d(),
                               static_cast<std::size_t>(v[4].get_num().get_ui()),
                               static_cast<std::size_t>(v[5].get_num().get_ui())};
  }
}

Model Builder::build(const std::string& text) {
  sections_ = split_sections(text);
  m_.name = std::filesystem::path(path_).stem().string();
  read_coordinates();
  read_parameters();
  read_functions();
  read_definitions();
  read_vectorfields();
  read_forms();
  read_distribution();
  read_candidates();
  read_ansatzes();
  read_fixtures();
  return std::move(m_);
}

}  // namespace

std::vector<std::pair<std::string, std::size_t>> split_list(const std::string& text) {
  std::vector<std::pair<std::string, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  auto push = [&](std::size_t end) {
    const std::string piece = text.substr(start, end - start);
    const std::string t = trim(piece);
    if (!t.empty()) out.emplace_back(t, start + leading_space(piece));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      push(i);
      start = i + 1;
    }
  }
  push(text.size());
  return out;
}

const VectorField& Model::field(const std::string& name) const {
  if (const VectorField* f = lookup(candidates, name)) return *f;
  if (const VectorField* f = lookup(vectorfields, name)) return *f;
  throw Error("unknown candidate or vector field '" + name + "'");
}

const SymmetryAnsatz& Model::ansatz(const std::string& name) const {
  if (const SymmetryAnsatz* z = lookup(ansatzes, name)) return *z;
  throw Error("unknown ansatz '" + name + "'");
}

const Fixture& Model::fixture(const std::string& name) const {
  if (const Fixture* f = lookup(fixtures, name)) return *f;
  throw Error("unknown fixture '" + name + "'");
}

const Expr* Model::definition(const std::string& name) const { return lookup(definitions, name); }

const Distribution& Model::require_distribution() const {
  if (!has_distribution) throw Error("model " + name + " has no [distribution] section");
  return distribution;
}

Model parse_model(const std::string& text, const std::string& path, const ParameterOverrides& overrides) {
  return Builder(path, overrides).build(text);
}

Model load_model(const std::string& path, const ParameterOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), path, overrides);
}

}  // namespace dgeom::cli
