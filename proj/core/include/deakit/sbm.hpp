#pragma once

#include "deakit/data.hpp"
#include "deakit/lp.hpp"
#include "deakit/result.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace deakit {

/// Facets of the efficient frontier as sets of 0-based DMU indices.
using FacetSet = std::vector<std::vector<std::size_t>>;

struct FrontierOptions {
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_ref;
  /// Receives progress messages unless null.
  std::function<void(const std::string&)> progress;
};

/// Efficient DMUs of dmu_ref that are not combinations of the others.
std::vector<std::size_t> extreme_efficient(const DeaData& data, const FrontierOptions& opt = {});

/// Maximal subsets of efficient DMUs whose centroid is efficient, ordered by
/// size descending, then lexicographically.
FacetSet maximal_friends(const DeaData& data, const FrontierOptions& opt = {});

/// Whether the centroid of `subset` is Pareto efficient with respect to
/// `ref` under `rts`.
bool is_friends(const DeaData& data, const std::vector<std::size_t>& subset,
                const std::vector<std::size_t>& ref, const RtsSpec& rts);

struct SbmOptions {
  /// none => non-oriented.
  Orientation orientation = Orientation::none;
  RtsSpec rts = RtsSpec::crs();
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
  Broadcast weight_input = 1.0;
  Broadcast weight_output = 1.0;
  /// SBM-Max: maximise the score over the efficient facets.
  bool kaizen = false;
  /// Precomputed facets for kaizen; computed when absent.
  std::optional<FacetSet> maxfr;
};

DeaResult model_sbmeff(const DeaData& data, const SbmOptions& opt = {});

std::vector<LinearProgram> model_sbmeff_lp(const DeaData& data, const SbmOptions& opt = {});

}  // namespace deakit
