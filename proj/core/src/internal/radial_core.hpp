#pragma once

#include "internal/common.hpp"

namespace deakit::detail {

/// Envelopment program shared by model_basic, model_rdm and the radial
/// super-efficiency model.
struct RadialCore {
  const DeaData& data;
  Orientation orientation;
  RtsSpec rts;
  bool maxslack = true;
  /// RDM convention: a zero direction yields beta* = 0 instead of an error.
  bool zero_direction_ok = false;

  std::vector<VarKind> in_kind;
  std::vector<VarKind> out_kind;

  RadialCore(const DeaData& d, Orientation o, RtsSpec r, bool ms);

  struct Dmu {
    Eigen::VectorXd x, y;    // evaluated activity
    Eigen::VectorXd gi, go;  // directions (dir only)
    Eigen::VectorXd wi, wo;  // second-stage weights
  };

  LinearProgram stage1(const Dmu& o, const std::vector<std::size_t>& ref) const;
  DmuResult solve(const Dmu& o, const std::vector<std::size_t>& ref) const;

  /// Throws if the oriented side has no discretionary variable.
  void check_orientation() const;

 private:
  struct RowSpec {
    double phi = 0.0;  // coefficient on the score variable
    Sense sense = Sense::le;
    double rhs = 0.0;
    bool slack = false;
  };
  RowSpec input_row(const Dmu& o, std::size_t i) const;
  RowSpec output_row(const Dmu& o, std::size_t r) const;
  LinearProgram build(const Dmu& o, const RefBlock& ref, const std::vector<std::size_t>& idx,
                      bool second, double phi_lo, double phi_hi) const;
};

}  // namespace deakit::detail
