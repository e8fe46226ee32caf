#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dgeom/parse.hpp"

using namespace dgeom;
using namespace dgeom::cli;

namespace {

ParameterOverrides parse_overrides(const std::vector<std::string>& items) {
  ParameterOverrides out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("--set expects name=value, got '" + item + "'");
    try {
      out.emplace_back(item.substr(0, eq), parse(item.substr(eq + 1)));
    } catch (const ParseError& e) {
      throw Error("--set " + item + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributions, symmetries and flows on coordinate charts"};
  app.require_subcommand(1);

  bool as_json = false;
  Options opt;
  std::vector<std::string> sets;
  app.add_flag("--json", as_json, "Print one JSON document instead of text");
  app.add_option("--max-order", opt.max_order, "Lie series truncation order")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--probes", opt.probes, "Random probes for zero tests")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tolerance", opt.tolerance, "Numeric residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--set", sets, "Give a parameter a rational value, name=value")->take_all();

  std::string model_path;

  auto* check = app.add_subcommand("check", "Annihilator, rank and involutivity of the model distribution");
  check->add_option("model", model_path, "Model file")->required();
  check->add_flag("--require-involutive", opt.require_involutive, "Exit with 2 when the distribution is not involutive");

  std::vector<std::string> candidates;
  auto* symmetry = app.add_subcommand("symmetry", "Classify candidate fields as symmetries");
  symmetry->add_option("model", model_path, "Model file")->required();
  symmetry->add_option("candidates", candidates, "Candidate or vector field names (default: all candidates)");

  std::optional<std::string> ansatz, verify;
  auto* determining = app.add_subcommand("determining", "List the determining system of an ansatz");
  determining->add_option("model", model_path, "Model file")->required();
  determining->add_option("--ansatz", ansatz, "Ansatz name (default: the only one)");
  determining->add_option("--verify", verify, "Substitute a candidate and report residuals");

  std::string field;
  std::optional<int> order;
  std::optional<std::string> at;
  auto* flow = app.add_subcommand("flow", "Lie series flow of a vector field");
  flow->add_option("model", model_path, "Model file")->required();
  flow->add_option("field", field, "Vector field or candidate name")->required();
  flow->add_option("--order", order, "Truncation order (default: --max-order)")->check(CLI::PositiveNumber);
  flow->add_option("--at", at, "Evaluate the flow at this parameter value");

  std::string fixture;
  std::vector<double> s_values{0.1, 0.05, 0.025};
  auto* transport = app.add_subcommand("transport", "Move a solution along a vertical flow and measure residuals");
  transport->add_option("model", model_path, "Model file")->required();
  transport->add_option("fixture", fixture, "Fixture name")->required();
  transport->add_option("field", field, "Vertical field or candidate name")->required();
  transport->add_option("--s", s_values, "Flow parameters")->capture_default_str()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kSuccess : kUsageError;
  }

  try {
    ProbeScope probes(ProbeOptions{.probes = opt.probes});
    const Model m = load_model(model_path, parse_overrides(sets));
    Report r;
    if (*check) r = run_check(m, opt);
    if (*symmetry) r = run_symmetry(m, candidates, opt);
    if (*determining) r = run_determining(m, ansatz, verify, opt);
    if (*flow) r = run_flow(m, field, order, at, opt);
    if (*transport) r = run_transport(m, fixture, field, s_values, opt);
    if (as_json) {
      std::cout << r.json().dump(2) << "\n";
    } else {
      std::cout << r.text;
    }
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
