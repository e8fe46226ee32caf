#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgeom/distribution.hpp"
#include "dgeom/errors.hpp"
#include "dgeom/evaluate.hpp"
#include "dgeom/fgordon.hpp"
#include "dgeom/symmetry.hpp"

namespace dgeom::cli {

/// Model file problem with a 1-based position (column 0 when the whole
/// line is at fault).
class ModelError : public Error {
 public:
  ModelError(std::string path, std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Fixture {
  Expr h;
  GridSpec grid;
};

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

/// A parsed model. Parameters with values are substituted everywhere;
/// definitions are expanded in place.
struct Model {
  std::string name;  // file stem
  Chart chart;
  std::vector<std::string> parameters;         // still symbolic
  NumericPoint parameter_values;               // the ones that were given values
  std::map<std::string, std::size_t> functions;  // name -> arity
  Named<Expr> definitions;
  Named<VectorField> vectorfields;  // includes the coordinate fields D<coord>
  Named<KForm> forms;
  Distribution distribution;
  std::vector<std::string> generator_names;
  bool has_distribution = false;
  bool coforms_given = false;
  Named<VectorField> candidates;
  Named<SymmetryAnsatz> ansatzes;
  Named<Fixture> fixtures;

  /// Candidate or vector field by name; throws Error naming the kind.
  const VectorField& field(const std::string& name) const;
  const SymmetryAnsatz& ansatz(const std::string& name) const;
  const Fixture& fixture(const std::string& name) const;
  const Expr* definition(const std::string& name) const;
  const Distribution& require_distribution() const;
};

/// Parameter values forced from the command line, "name=value" with a
/// rational value expression.
using ParameterOverrides = std::vector<std::pair<std::string, Expr>>;

Model parse_model(const std::string& text, const std::string& path, const ParameterOverrides& overrides = {});
Model load_model(const std::string& path, const ParameterOverrides& overrides = {});

/// Splits at top-level commas (outside parentheses and brackets).
std::vector<std::pair<std::string, std::size_t>> split_list(const std::string& text);

}  // namespace dgeom::cli
