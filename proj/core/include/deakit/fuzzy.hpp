#pragma once

#include "deakit/data.hpp"
#include "deakit/multiplier.hpp"
#include "deakit/nonradial.hpp"
#include "deakit/radial.hpp"
#include "deakit/result.hpp"
#include "deakit/sbm.hpp"
#include "deakit/supereff.hpp"

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace deakit {

/// Crisp interval bounds of every fuzzy entry at one alpha level.
struct AlphaCutData {
  double alpha = 1.0;
  Eigen::MatrixXd input_lower, input_upper;
  Eigen::MatrixXd output_lower, output_upper;
};

AlphaCutData alpha_cut(const FuzzyDeaData& f, double alpha);

/// N equispaced levels on [0, 1]; N must exceed 1.
std::vector<double> alpha_grid(std::size_t n);

/// Options of the crisp model run in each scenario. The alternative must
/// match the submodel name (basic, fdh and supereff share BasicOptions).
using SubmodelOptions =
    std::variant<BasicOptions, RdmOptions, MultiplierOptions, NonradialOptions, DeapsOptions,
                 AdditiveOptions, ProfitOptions, SbmOptions, SbmSupereffOptions, AddSupereffOptions>;

/// Default-constructed options for a submodel name; throws on unknown names.
SubmodelOptions default_submodel_options(const std::string& name);

struct KaoliuOptions {
  std::string submodel = "basic";
  /// Empty => default_submodel_options(submodel). Its dmu_eval/dmu_ref are
  /// overridden per scenario.
  std::optional<SubmodelOptions> submodel_options;
  std::vector<double> alpha = alpha_grid(5);
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  unsigned threads = 1;
};

struct KaoliuCut {
  double alpha = 1.0;
  /// Aligned with dmu_eval.
  std::vector<DmuResult> worst, best;
};

struct FuzzyDeaResult {
  std::string submodel;
  Orientation orientation = Orientation::input;
  std::shared_ptr<const FuzzyDeaData> data;
  std::vector<std::size_t> dmu_eval, dmu_ref;
  std::vector<KaoliuCut> alphacut;
  std::vector<std::string> notes;
};

/// Runs the crisp submodel on the worst and best data scenario of each
/// evaluated DMU at every alpha level.
FuzzyDeaResult modelfuzzy_kaoliu(const FuzzyDeaData& f, const KaoliuOptions& opt = {});

/// Runs a named crisp model; used by the fuzzy metamodel and the CLI.
DeaResult run_submodel(const std::string& name, const DeaData& data, SubmodelOptions opt,
                       const std::vector<std::size_t>& dmu_eval, const std::vector<std::size_t>& dmu_ref);

}  // namespace deakit
