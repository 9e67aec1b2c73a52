#pragma once

#include "deakit/data.hpp"
#include "deakit/lp.hpp"
#include "deakit/result.hpp"

#include <vector>

namespace deakit {

/// Options shared by the radial/directional family. Index sets are 0-based;
/// empty means every DMU.
struct BasicOptions {
  Orientation orientation = Orientation::input;
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  bool maxslack = true;
  Broadcast weight_slack_i = 1.0;
  Broadcast weight_slack_o = 1.0;
  /// Directional model only; empty means the evaluated DMU's own data.
  Broadcast dir_input;
  Broadcast dir_output;
  /// Seiford-Zhu translation for undesirable variables (NaN = max + 1).
  Translation vtrans;
};

/// Radial (io/oo) or directional (dir) envelopment model with optional
/// max-slack second stage.
DeaResult model_basic(const DeaData& data, const BasicOptions& opt = {});

/// First-stage programs of model_basic, one per evaluated DMU, unsolved.
std::vector<LinearProgram> model_basic_lp(const DeaData& data, const BasicOptions& opt = {});

/// Free disposal hull: same options, rts is ignored.
DeaResult model_fdh(const DeaData& data, const BasicOptions& opt = {});

struct RdmOptions {
  /// none => non-oriented, input => g+ = 0, output => g- = 0.
  Orientation orientation = Orientation::none;
  bool irdm = false;
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  bool maxslack = true;
  Broadcast weight_slack_i = 1.0;
  Broadcast weight_slack_o = 1.0;
};

/// Range directional model (VRS) and its inverse variant.
DeaResult model_rdm(const DeaData& data, const RdmOptions& opt = {});

}  // namespace deakit
