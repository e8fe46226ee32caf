#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "model_file.hpp"

namespace dgeom::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kCheckFailed = 2 };

struct Options {
  int max_order = kDefaultFlowOrder;
  int probes = 8;
  double tolerance = 1e-6;
  bool require_involutive = false;
};

struct Report {
  std::string command;
  std::string model;
  std::string text;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  std::vector<std::string> genericity;
  int exit_code = kSuccess;

  void note(const GenericityLedger& ledger);
  nlohmann::ordered_json json() const;
};

Report run_check(const Model& m, const Options& opt);
/// All candidates of the model when `names` is empty.
Report run_symmetry(const Model& m, const std::vector<std::string>& names, const Options& opt);
Report run_determining(const Model& m, const std::optional<std::string>& ansatz,
                       const std::optional<std::string>& verify, const Options& opt);
Report run_flow(const Model& m, const std::string& field, std::optional<int> order,
                const std::optional<std::string>& at, const Options& opt);
Report run_transport(const Model& m, const std::string& fixture, const std::string& field,
                     const std::vector<double>& s_values, const Options& opt);

}  // namespace dgeom::cli
