#include "internal/multiplier_core.hpp"

namespace deakit::detail {

MultiplierLayout add_multiplier_vars(LinearProgram& lp, const DeaData& data, Orientation o,
                                     const RtsSpec& rts, double epsilon) {
  MultiplierLayout L;
  L.m = data.n_inputs();
  L.s = data.n_outputs();
  const auto base = lp.n_vars();
  if (base != 0) throw std::logic_error("multiplier variables must come first");
  for (std::size_t i = 0; i < L.m; ++i)
    lp.add_var("v_" + data.input_names()[i], 0.0, VarBound{epsilon, kInf});
  for (std::size_t r = 0; r < L.s; ++r)
    lp.add_var("u_" + data.output_names()[r], 0.0, VarBound{epsilon, kInf});
  const bool io = o == Orientation::input;
  if (rts.lower())
    L.xi_lower = lp.add_var("xi_L", 0.0, io ? VarBound{0.0, kInf} : VarBound{-kInf, 0.0});
  if (rts.upper())
    L.xi_upper = lp.add_var("xi_U", 0.0, io ? VarBound{-kInf, 0.0} : VarBound{0.0, kInf});
  return L;
}

Eigen::VectorXd multiplier_row(const LinearProgram& lp, const MultiplierLayout& L, Orientation o,
                               const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXd row = zero_row(lp);
  const double sx = o == Orientation::input ? -1.0 : 1.0;
  for (std::size_t i = 0; i < L.m; ++i) row(static_cast<Eigen::Index>(L.v(i))) = sx * x(static_cast<Eigen::Index>(i));
  for (std::size_t r = 0; r < L.s; ++r) row(static_cast<Eigen::Index>(L.u(r))) = -sx * y(static_cast<Eigen::Index>(r));
  if (L.xi_lower) row(static_cast<Eigen::Index>(*L.xi_lower)) = 1.0;
  if (L.xi_upper) row(static_cast<Eigen::Index>(*L.xi_upper)) = 1.0;
  return row;
}

LinearProgram multiplier_program(const DeaData& data, const RefBlock& ref, Orientation o,
                                 const RtsSpec& rts, double epsilon, const Eigen::VectorXd& xo,
                                 const Eigen::VectorXd& yo, MultiplierLayout* layout) {
  const bool io = o == Orientation::input;
  LinearProgram lp(io ? Direction::maximize : Direction::minimize, 0);
  const auto L = add_multiplier_vars(lp, data, o, rts, epsilon);
  for (std::size_t r = 0; r < L.s && io; ++r) lp.objective(static_cast<Eigen::Index>(L.u(r))) = yo(static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < L.m && !io; ++i) lp.objective(static_cast<Eigen::Index>(L.v(i))) = xo(static_cast<Eigen::Index>(i));
  if (L.xi_lower) lp.objective(static_cast<Eigen::Index>(*L.xi_lower)) = *rts.lower();
  if (L.xi_upper) lp.objective(static_cast<Eigen::Index>(*L.xi_upper)) = *rts.upper();

  Eigen::VectorXd norm = zero_row(lp);
  if (io)
    for (std::size_t i = 0; i < L.m; ++i) norm(static_cast<Eigen::Index>(L.v(i))) = xo(static_cast<Eigen::Index>(i));
  else
    for (std::size_t r = 0; r < L.s; ++r) norm(static_cast<Eigen::Index>(L.u(r))) = yo(static_cast<Eigen::Index>(r));
  lp.add_row(std::move(norm), Sense::eq, 1.0, "normalization");
  for (Eigen::Index j = 0; j < ref.n(); ++j)
    lp.add_row(multiplier_row(lp, L, o, ref.X.col(j), ref.Y.col(j)), io ? Sense::le : Sense::ge, 0.0,
               "dmu" + std::to_string(j + 1));
  if (layout) *layout = L;
  return lp;
}

Multipliers read_multipliers(const MultiplierLayout& L, const Eigen::VectorXd& x) {
  Multipliers mu;
  mu.input = x.head(static_cast<Eigen::Index>(L.m));
  mu.output = x.segment(static_cast<Eigen::Index>(L.m), static_cast<Eigen::Index>(L.s));
  if (L.xi_lower) mu.rts_lower = x(static_cast<Eigen::Index>(*L.xi_lower));
  if (L.xi_upper) mu.rts_upper = x(static_cast<Eigen::Index>(*L.xi_upper));
  return mu;
}

double rts_terms(const MultiplierLayout& L, const RtsSpec& rts, const Eigen::VectorXd& x) {
  double v = 0.0;
  if (L.xi_lower) v += *rts.lower() * x(static_cast<Eigen::Index>(*L.xi_lower));
  if (L.xi_upper) v += *rts.upper() * x(static_cast<Eigen::Index>(*L.xi_upper));
  return v;
}

}  // namespace deakit::detail
