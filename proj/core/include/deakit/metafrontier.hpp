#pragma once

#include "deakit/data.hpp"
#include "deakit/radial.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace deakit {

/// Named disjoint groups of 0-based DMU indices.
struct Grouping {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> members;

  std::size_t size() const { return members.size(); }
  /// Throws on empty, overlapping or out-of-range groups.
  void validate(std::size_t n_dmus) const;
};

/// Parses "G1=1-8;G2=9-14;G3=15-23" (1-based, ranges and comma lists).
Grouping parse_grouping(std::string_view spec, std::size_t n_dmus);

struct MetafrontierResult {
  Grouping grouping;
  /// Grouped DMUs in group order, then member order.
  std::vector<std::size_t> dmus;
  std::vector<std::string> dmunames;
  /// |dmus| x k: score of each DMU against each group frontier.
  Eigen::MatrixXd group_scores;
  /// Minimum over group frontiers, NA entries skipped.
  Eigen::VectorXd nonconcave;
  /// Score against the frontier of all DMUs.
  Eigen::VectorXd concave;
};

/// Runs model_basic for every (evaluated group, reference group) pair; the
/// options' dmu_eval/dmu_ref are replaced.
MetafrontierResult metafrontier(const DeaData& data, const Grouping& grouping, const BasicOptions& opt = {},
                                unsigned threads = 1);

}  // namespace deakit
