#pragma once

#include "deakit/data.hpp"
#include "deakit/types.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace deakit {

enum class FrontierType { contemporary, sequential, global };
enum class MalmquistType { fgnz, rd, gl, bias };

std::string_view to_string(FrontierType t);
std::string_view to_string(MalmquistType t);
FrontierType parse_frontier_type(std::string_view s);    // cont, seq, glob
MalmquistType parse_malmquist_type(std::string_view s);  // fgnz, rd, gl, bias

/// Radial distance of (x, y) to the frontier spanned by the reference
/// columns of the given periods: theta for io, 1/eta for oo. NA when the
/// program is infeasible or unbounded.
double malmquist_distance(const MalmquistSeries& series, const std::vector<std::size_t>& periods,
                          const std::vector<std::size_t>& dmu_ref, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, Orientation orientation, RtsKind rts);

struct MalmquistOptions {
  Orientation orientation = Orientation::input;
  RtsKind rts = RtsKind::crs;
  FrontierType type1 = FrontierType::contemporary;
  MalmquistType type2 = MalmquistType::fgnz;
  bool tc_vrs = false;
  std::vector<std::size_t> dmu_eval;
  std::vector<std::size_t> dmu_ref;
};

struct MalmquistResult {
  MalmquistOptions options;
  std::vector<std::string> dmunames;      // of dmu_eval
  std::vector<std::string> period_names;  // all periods
  /// Index name -> |dmu_eval| x (T-1); column t compares periods t and t+1.
  std::map<std::string, Eigen::MatrixXd> indices;
  /// Distance tables: efficiency.* and efficiency.glob.* are |dmu_eval| x T,
  /// the cross-period ones |dmu_eval| x (T-1). Suffix crs or vrs.
  std::map<std::string, Eigen::MatrixXd> eff_all;
  std::vector<std::string> notes;
};

MalmquistResult malmquist_index(const MalmquistSeries& series, const MalmquistOptions& opt = {});

}  // namespace deakit
