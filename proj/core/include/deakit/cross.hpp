#pragma once

#include "deakit/data.hpp"
#include "deakit/types.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace deakit {

/// Cross-efficiency outcome of one weighting method. Rows of the matrices
/// follow dmu_eval (the DMU whose weights are used); columns of cross_eff
/// follow dmu_eval too (the rated DMU).
struct CrossMethod {
  Eigen::MatrixXd multiplier_input;   // n x m
  Eigen::MatrixXd multiplier_output;  // n x s
  Eigen::MatrixXd multiplier_rts;     // n x 2 (xi_L, xi_U)
  Eigen::MatrixXd cross_eff;          // n x n
  Eigen::VectorXd e;                  // column means
  Eigen::VectorXd A;                  // row means
  Eigen::VectorXd maverick;
  /// Per-row notes, e.g. automatic multiplier bounds.
  std::vector<std::vector<std::string>> flags;
};

struct CrossOptions {
  Orientation orientation = Orientation::input;
  RtsSpec rts = RtsSpec::crs();
  double epsilon = 0.0;
  bool selfapp = true;
  /// Corrected ratio for io vrs/nirs/grs.
  bool correction = false;
  bool M2 = true;
  bool M3 = true;
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
};

struct CrossEffResult {
  Orientation orientation = Orientation::input;
  RtsSpec rts;
  double epsilon = 0.0;
  bool selfapp = true;
  bool correction = false;
  std::shared_ptr<const DeaData> data;
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  /// Multiplier self-efficiency per evaluated DMU.
  Eigen::VectorXd efficiency;
  CrossMethod arbitrary;
  std::optional<CrossMethod> m2_agg, m2_ben, m3_agg, m3_ben;
};

CrossEffResult cross_efficiency(const DeaData& data, const CrossOptions& opt = {});

/// Column means, row means and Maverick index of a cross-efficiency matrix.
/// NA entries are skipped; selfapp = false drops the diagonal.
void cross_aggregates(CrossMethod& m, bool selfapp);

}  // namespace deakit
