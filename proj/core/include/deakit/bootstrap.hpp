#pragma once

#include "deakit/data.hpp"
#include "deakit/result.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace deakit {

enum class BandwidthRule { fixed, h1, h2, h3, h4 };

std::string_view to_string(BandwidthRule r);
BandwidthRule parse_bandwidth_rule(std::string_view s);

struct Bandwidth {
  BandwidthRule rule = BandwidthRule::fixed;
  /// Used by the fixed rule only.
  double value = 0.014;
};

/// Smoothing bandwidth for a score sample in (0, 1]. Data-driven rules use
/// the sample reflected about 1; throws when the result is not positive.
double bandwidth(const std::vector<double>& scores, const Bandwidth& h);

struct BootstrapOptions {
  Orientation orientation = Orientation::input;
  RtsSpec rts = RtsSpec::crs();
  std::size_t B = 2000;
  double alpha = 0.05;
  Bandwidth h;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct BootstrapResult {
  BootstrapOptions options;
  double h = 0.0;  // realised bandwidth
  std::shared_ptr<const DeaData> data;
  /// Per DMU, in data order.
  Eigen::VectorXd score, score_bc, bias;
  Eigen::VectorXd mean, variance, median;
  Eigen::VectorXd ci_low, ci_up;
  /// Replications whose program failed for that DMU.
  std::vector<std::size_t> failures;
  /// B x n; NA marks failed replications.
  Eigen::MatrixXd estimates_bootstrap;
  std::vector<std::string> notes;
};

/// Smoothed bootstrap of the radial io/oo scores with reflection and
/// variance correction. Each replication draws from its own generator
/// seeded from (seed, replication), so output does not depend on threads.
BootstrapResult bootstrap_basic(const DeaData& data, const BootstrapOptions& opt = {});

}  // namespace deakit
