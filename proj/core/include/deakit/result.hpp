#pragma once

#include "deakit/data.hpp"
#include "deakit/types.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace deakit {

/// Dual weights of a radial program.
struct Multipliers {
  Eigen::VectorXd input;   // v, length m
  Eigen::VectorXd output;  // u, length s
  double rts_lower = 0.0;  // xi_L
  double rts_upper = 0.0;  // xi_U
};

struct DmuResult {
  /// Optimal objective of the model (theta, eta, beta, rho, omega, delta...).
  double efficiency = NA;
  DmuStatus status = DmuStatus::optimal;
  Classification classification = Classification::unknown;

  /// Intensities over dmu_ref. Super-efficiency runs report 0 for the
  /// evaluated DMU's own entry.
  Eigen::VectorXd lambda;
  Eigen::VectorXd slack_input;
  Eigen::VectorXd slack_output;
  Eigen::VectorXd target_input;
  Eigen::VectorXd target_output;

  /// Per-variable factors of non-radial models (theta_i or eta_r).
  Eigen::VectorXd efficiency_vector;
  std::optional<Multipliers> multipliers;

  /// Model-specific scalars, e.g. the raw additive super-efficiency objective.
  std::map<std::string, double> extra;
  std::vector<std::string> flags;

  bool ok() const { return status == DmuStatus::optimal && !is_na(efficiency); }
};

/// Which result facets a model populates.
struct Facets {
  bool lambdas = false;
  bool slacks = false;
  bool targets = false;
  bool multipliers = false;
};

/// Output of every crisp model: per-DMU results plus the configuration
/// needed to replicate the run.
struct DeaResult {
  std::string modelname;
  Orientation orientation = Orientation::input;
  RtsSpec rts;
  std::shared_ptr<const DeaData> data;
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  bool maxslack = false;
  Facets facets;

  /// Named numeric parameters (L, U, epsilon, ...).
  std::map<std::string, double> parameters;
  /// Named parameter matrices (slack weights, directions, prices, translations).
  std::map<std::string, Eigen::MatrixXd> parameter_matrices;
  std::vector<std::string> notes;

  /// Aligned with dmu_eval.
  std::vector<DmuResult> dmus;

  const DmuResult& at(std::size_t eval_pos) const { return dmus.at(eval_pos); }
  std::string dmu_label(std::size_t eval_pos) const;
  std::string ref_label(std::size_t ref_pos) const;
};

}  // namespace deakit
