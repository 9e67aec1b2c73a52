#pragma once

#include "internal/common.hpp"

#include <optional>

namespace deakit::detail {

/// Column layout of a multiplier program: v (m), u (s), then the optional
/// rts multipliers.
struct MultiplierLayout {
  std::size_t m = 0, s = 0;
  std::optional<std::size_t> xi_lower, xi_upper;

  std::size_t v(std::size_t i) const { return i; }
  std::size_t u(std::size_t r) const { return m + r; }
};

/// Adds the weight variables and rts multipliers with the sign pattern of
/// the orientation. Objective coefficients are left at zero.
MultiplierLayout add_multiplier_vars(LinearProgram& lp, const DeaData& data, Orientation o,
                                     const RtsSpec& rts, double epsilon);

/// Row "u y_j - v x_j + xi_L + xi_U" (io) or its negation-free oo twin
/// "v x_j - u y_j + xi_L + xi_U", as a coefficient vector.
Eigen::VectorXd multiplier_row(const LinearProgram& lp, const MultiplierLayout& L, Orientation o,
                               const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Full program of the evaluated activity (x_o, y_o) against `ref`.
LinearProgram multiplier_program(const DeaData& data, const RefBlock& ref, Orientation o,
                                 const RtsSpec& rts, double epsilon, const Eigen::VectorXd& xo,
                                 const Eigen::VectorXd& yo, MultiplierLayout* layout = nullptr);

Multipliers read_multipliers(const MultiplierLayout& L, const Eigen::VectorXd& x);

/// u y + L xi_L + U xi_U (io) or v x + L xi_L + U xi_U (oo).
double rts_terms(const MultiplierLayout& L, const RtsSpec& rts, const Eigen::VectorXd& x);

}  // namespace deakit::detail
