#pragma once

#include "deakit/data.hpp"
#include "deakit/radial.hpp"
#include "deakit/result.hpp"

#include <vector>

namespace deakit {

/// Radial super-efficiency: model_basic with the evaluated DMU removed from
/// its own reference set. Its lambda entry is reported as 0.
DeaResult model_supereff(const DeaData& data, const BasicOptions& opt = {});

struct SbmSupereffOptions {
  /// none => non-oriented; io drops the output super-slacks, oo the input ones.
  Orientation orientation = Orientation::none;
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  Broadcast weight_slack_i = 1.0;
  Broadcast weight_slack_o = 1.0;
};

/// SBM super-efficiency. Slacks hold the super-slacks t-, t+.
DeaResult model_sbmsupereff(const DeaData& data, const SbmSupereffOptions& opt = {});

struct AddSupereffOptions {
  Orientation orientation = Orientation::none;
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  /// Empty => 1/x_o and 1/y_o of each evaluated DMU.
  Broadcast weight_slack_i;
  Broadcast weight_slack_o;
};

/// Additive super-efficiency. efficiency holds the SSBM-style score delta of
/// the optimal super-slacks; extra["objective"] holds w- t- + w+ t+.
DeaResult model_addsupereff(const DeaData& data, const AddSupereffOptions& opt = {});

}  // namespace deakit
