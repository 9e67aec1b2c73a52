#pragma once

#include "deakit/data.hpp"
#include "deakit/lp.hpp"
#include "deakit/result.hpp"

#include <vector>

namespace deakit {

struct MultiplierOptions {
  Orientation orientation = Orientation::input;
  RtsSpec rts = RtsSpec::crs();
  /// Lower bound on every input and output weight.
  double epsilon = 0.0;
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
};

/// Radial model in multiplier form. Infeasible programs (epsilon too large)
/// give NA for that DMU.
DeaResult model_multiplier(const DeaData& data, const MultiplierOptions& opt = {});

std::vector<LinearProgram> model_multiplier_lp(const DeaData& data,
                                               const MultiplierOptions& opt = {});

}  // namespace deakit
