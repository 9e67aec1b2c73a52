#pragma once

#include "deakit/data.hpp"
#include "deakit/lp.hpp"
#include "deakit/result.hpp"
#include "deakit/sbm.hpp"

#include <optional>
#include <vector>

namespace deakit {

struct NonradialOptions {
  Orientation orientation = Orientation::input;
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  bool maxslack = true;
  /// Second-stage weights on the opposite side (outputs for io).
  Broadcast weight_slack = 1.0;
};

/// Non-radial (per-variable factor) model. The efficiency is the mean
/// factor; efficiency_vector holds the factors (NA for non-discretionary).
DeaResult model_nonradial(const DeaData& data, const NonradialOptions& opt = {});

struct DeapsOptions {
  Orientation orientation = Orientation::input;
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  bool maxslack = true;
  Broadcast weight_slack = 1.0;
  /// Preference weights, one per input (io) or output (oo).
  Broadcast weight_eff = 1.0;
  bool restricted_eff = true;
};

DeaResult model_deaps(const DeaData& data, const DeapsOptions& opt = {});
std::vector<LinearProgram> model_deaps_lp(const DeaData& data, const DeapsOptions& opt = {});

struct AdditiveOptions {
  /// none, or input (output weights zeroed) / output (input weights zeroed).
  Orientation orientation = Orientation::none;
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  Broadcast weight_slack_i = 1.0;
  Broadcast weight_slack_o = 1.0;
};

DeaResult model_additive(const DeaData& data, const AdditiveOptions& opt = {});
std::vector<LinearProgram> model_additive_lp(const DeaData& data, const AdditiveOptions& opt = {});

struct AddminOptions {
  Orientation orientation = Orientation::none;
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  Broadcast weight_slack_i = 1.0;
  Broadcast weight_slack_o = 1.0;
  std::optional<FacetSet> maxfr;
};

/// Additive-Min by enumeration of maximal friends facets. The index of the
/// winning facet is stored in extra["facet"].
DeaResult model_addmin(const DeaData& data, const AddminOptions& opt = {});

struct ProfitOptions {
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  /// Input prices only => cost; output prices only => revenue; both => profit.
  Broadcast price_input;
  Broadcast price_output;
  bool restricted_optimal = true;
};

DeaResult model_profit(const DeaData& data, const ProfitOptions& opt = {});

}  // namespace deakit
