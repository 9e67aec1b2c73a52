#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deakit {

/// Absent-value marker used for per-DMU failures. NaN propagates through
/// products and ratios, so a missing factor never turns into a zero.
inline constexpr double NA = std::numeric_limits<double>::quiet_NaN();

inline bool is_na(double v) { return std::isnan(v); }

/// Thrown for invalid datasets or model parameters. The message names the
/// offending argument.
class DeaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by file ingestion/export. Carries the path in the message.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Orientation { input, output, directional, none };

std::string_view to_string(Orientation o);
Orientation parse_orientation(std::string_view s);

enum class RtsKind { crs, vrs, nirs, ndrs, grs };

/// Returns-to-scale regime, encoded as bounds on the sum of intensities.
struct RtsSpec {
  RtsKind kind = RtsKind::crs;
  double L = 1.0;
  double U = 1.0;

  static RtsSpec crs() { return {RtsKind::crs, 1.0, 1.0}; }
  static RtsSpec vrs() { return {RtsKind::vrs, 1.0, 1.0}; }
  static RtsSpec nirs() { return {RtsKind::nirs, 0.0, 1.0}; }
  static RtsSpec ndrs() { return {RtsKind::ndrs, 1.0, 1.0}; }
  static RtsSpec grs(double lower, double upper);

  /// Lower bound on e*lambda, if any.
  std::optional<double> lower() const;
  /// Upper bound on e*lambda, if any.
  std::optional<double> upper() const;

  void validate() const;
};

std::string_view to_string(RtsKind k);
RtsSpec parse_rts(std::string_view s, double L = 1.0, double U = 1.0);

/// A scalar, a per-variable vector or a variable x evaluated-DMU matrix.
/// Used for slack weights, directions, prices and translations.
class Broadcast {
 public:
  Broadcast() = default;
  Broadcast(double v) : kind_(Kind::scalar), scalar_(v) {}  // NOLINT(implicit)
  Broadcast(std::vector<double> v);                          // NOLINT(implicit)
  Broadcast(Eigen::VectorXd v);                              // NOLINT(implicit)
  Broadcast(Eigen::MatrixXd m);                              // NOLINT(implicit)

  bool empty() const { return kind_ == Kind::none; }

  /// Expands to rows x cols. Vectors must have `rows` entries; matrices
  /// must already be rows x cols. `what` names the parameter in errors.
  Eigen::MatrixXd resolve(Eigen::Index rows, Eigen::Index cols,
                          std::string_view what) const;

 private:
  enum class Kind { none, scalar, vector, matrix };
  Kind kind_ = Kind::none;
  double scalar_ = 0.0;
  Eigen::MatrixXd values_;
};

/// Outcome of one per-DMU subproblem.
enum class DmuStatus {
  optimal,
  infeasible,
  unbounded,
  empty_reference,
  degenerate,
  numerical
};

std::string_view to_string(DmuStatus s);

enum class Classification { efficient, weakly_efficient, inefficient, unknown };

std::string_view to_string(Classification c);

/// Thresholds used when classifying DMUs.
inline constexpr double kEfficiencyTol = 1e-6;
/// Minimum intensity for a DMU to count as a reference.
inline constexpr double kLambdaTol = 1e-9;

}  // namespace deakit
