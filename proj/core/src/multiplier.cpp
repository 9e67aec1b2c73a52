#include "deakit/multiplier.hpp"

#include "internal/common.hpp"
#include "internal/multiplier_core.hpp"

namespace deakit {

namespace {

void check(const DeaData& data, const MultiplierOptions& opt) {
  if (opt.orientation != Orientation::input && opt.orientation != Orientation::output)
    throw DeaError("model_multiplier: orientation must be io or oo");
  if (!(opt.epsilon >= 0.0)) throw DeaError("epsilon: must be nonnegative");
  if (data.special().any())
    throw DeaError("model_multiplier: nc/nd/ud variables are not supported in multiplier form");
  opt.rts.validate();
}

}  // namespace

DeaResult model_multiplier(const DeaData& data, const MultiplierOptions& opt) {
  check(data, opt);
  const auto eval = detail::resolve_set(opt.dmu_eval, data.n_dmus(), "dmu_eval");
  const auto ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  const auto block = detail::ref_block(data.input(), data.output(), ref);

  DeaResult res;
  res.modelname = "multiplier";
  res.orientation = opt.orientation;
  res.rts = opt.rts;
  res.data = detail::share(data);
  res.dmu_eval = eval;
  res.dmu_ref = ref;
  res.facets.multipliers = true;
  res.parameters["epsilon"] = opt.epsilon;
  if (opt.rts.kind == RtsKind::grs) {
    res.parameters["L"] = opt.rts.L;
    res.parameters["U"] = opt.rts.U;
  }
  for (auto j : eval) {
    const auto c = static_cast<Eigen::Index>(j);
    detail::MultiplierLayout L;
    const auto lp = detail::multiplier_program(data, block, opt.orientation, opt.rts, opt.epsilon,
                                               data.input().col(c), data.output().col(c), &L);
    const auto sol = solve(lp);
    DmuResult dr;
    if (!sol.optimal()) {
      dr.status = detail::dmu_status(sol.status);
      dr.efficiency = NA;
      dr.multipliers = Multipliers{Eigen::VectorXd::Constant(static_cast<Eigen::Index>(L.m), NA),
                                   Eigen::VectorXd::Constant(static_cast<Eigen::Index>(L.s), NA), NA, NA};
      res.dmus.push_back(std::move(dr));
      continue;
    }
    dr.efficiency = sol.objective;
    dr.multipliers = detail::read_multipliers(L, sol.x);
    const bool positive = dr.multipliers->input.minCoeff() > 0.0 && dr.multipliers->output.minCoeff() > 0.0;
    if (std::abs(dr.efficiency - 1.0) > kEfficiencyTol) dr.classification = Classification::inefficient;
    else dr.classification = positive ? Classification::efficient : Classification::weakly_efficient;
    res.dmus.push_back(std::move(dr));
  }
  return res;
}

std::vector<LinearProgram> model_multiplier_lp(const DeaData& data, const MultiplierOptions& opt) {
  check(data, opt);
  const auto eval = detail::resolve_set(opt.dmu_eval, data.n_dmus(), "dmu_eval");
  const auto ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  const auto block = detail::ref_block(data.input(), data.output(), ref);
  std::vector<LinearProgram> out;
  for (auto j : eval) {
    const auto c = static_cast<Eigen::Index>(j);
    out.push_back(detail::multiplier_program(data, block, opt.orientation, opt.rts, opt.epsilon,
                                             data.input().col(c), data.output().col(c)));
  }
  return out;
}

}  // namespace deakit
