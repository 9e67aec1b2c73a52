#include "deakit/types.hpp"

#include <string>

namespace deakit {

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::input: return "io";
    case Orientation::output: return "oo";
    case Orientation::directional: return "dir";
    case Orientation::none: return "no";
  }
  return "?";
}

Orientation parse_orientation(std::string_view s) {
  if (s == "io") return Orientation::input;
  if (s == "oo") return Orientation::output;
  if (s == "dir") return Orientation::directional;
  if (s == "no" || s == "none") return Orientation::none;
  throw DeaError("orientation: unknown value '" + std::string(s) + "' (expected io, oo, dir or no)");
}

RtsSpec RtsSpec::grs(double lower, double upper) {
  RtsSpec r{RtsKind::grs, lower, upper};
  r.validate();
  return r;
}

std::optional<double> RtsSpec::lower() const {
  switch (kind) {
    case RtsKind::crs:
    case RtsKind::nirs: return std::nullopt;
    case RtsKind::vrs:
    case RtsKind::ndrs: return 1.0;
    case RtsKind::grs: return L;
  }
  return std::nullopt;
}

std::optional<double> RtsSpec::upper() const {
  switch (kind) {
    case RtsKind::crs:
    case RtsKind::ndrs: return std::nullopt;
    case RtsKind::vrs:
    case RtsKind::nirs: return 1.0;
    case RtsKind::grs: return U;
  }
  return std::nullopt;
}

void RtsSpec::validate() const {
  if (kind != RtsKind::grs) return;
  if (!(L >= 0.0 && L <= 1.0))
    throw DeaError("rts: L must lie in [0, 1], got " + std::to_string(L));
  if (!(U >= 1.0) || std::isinf(U))
    throw DeaError("rts: U must be finite and >= 1, got " + std::to_string(U));
}

std::string_view to_string(RtsKind k) {
  switch (k) {
    case RtsKind::crs: return "crs";
    case RtsKind::vrs: return "vrs";
    case RtsKind::nirs: return "nirs";
    case RtsKind::ndrs: return "ndrs";
    case RtsKind::grs: return "grs";
  }
  return "?";
}

RtsSpec parse_rts(std::string_view s, double L, double U) {
  if (s == "crs") return RtsSpec::crs();
  if (s == "vrs") return RtsSpec::vrs();
  if (s == "nirs") return RtsSpec::nirs();
  if (s == "ndrs") return RtsSpec::ndrs();
  if (s == "grs") return RtsSpec::grs(L, U);
  throw DeaError("rts: unknown value '" + std::string(s) + "' (expected crs, vrs, nirs, ndrs or grs)");
}

Broadcast::Broadcast(std::vector<double> v) : kind_(Kind::vector) {
  values_ = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Broadcast::Broadcast(Eigen::VectorXd v) : kind_(Kind::vector), values_(std::move(v)) {}

Broadcast::Broadcast(Eigen::MatrixXd m) : kind_(Kind::matrix), values_(std::move(m)) {
  if (values_.cols() == 1) kind_ = Kind::vector;
}

Eigen::MatrixXd Broadcast::resolve(Eigen::Index rows, Eigen::Index cols,
                                   std::string_view what) const {
  switch (kind_) {
    case Kind::none:
      throw DeaError(std::string(what) + ": no value supplied");
    case Kind::scalar:
      return Eigen::MatrixXd::Constant(rows, cols, scalar_);
    case Kind::vector:
      if (values_.rows() == 1 && rows != 1)
        return Eigen::MatrixXd::Constant(rows, cols, values_(0, 0));
      if (values_.rows() != rows)
        throw DeaError(std::string(what) + ": expected " + std::to_string(rows) +
                       " entries, got " + std::to_string(values_.rows()));
      return values_.col(0).replicate(1, cols);
    case Kind::matrix:
      if (values_.rows() != rows || values_.cols() != cols)
        throw DeaError(std::string(what) + ": expected a " + std::to_string(rows) + "x" +
                       std::to_string(cols) + " matrix, got " + std::to_string(values_.rows()) +
                       "x" + std::to_string(values_.cols()));
      return values_;
  }
  return {};
}

std::string_view to_string(DmuStatus s) {
  switch (s) {
    case DmuStatus::optimal: return "optimal";
    case DmuStatus::infeasible: return "infeasible";
    case DmuStatus::unbounded: return "unbounded";
    case DmuStatus::empty_reference: return "empty_reference";
    case DmuStatus::degenerate: return "degenerate";
    case DmuStatus::numerical: return "numerical";
  }
  return "?";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::efficient: return "efficient";
    case Classification::weakly_efficient: return "weakly_efficient";
    case Classification::inefficient: return "inefficient";
    case Classification::unknown: return "unknown";
  }
  return "?";
}

}  // namespace deakit
