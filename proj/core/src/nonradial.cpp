#include "deakit/nonradial.hpp"

#include "internal/common.hpp"

#include <algorithm>
#include <cmath>

namespace deakit {

namespace {

using detail::RefBlock;

Eigen::Index ix(std::size_t k) { return static_cast<Eigen::Index>(k); }

void reject_undesirable(const DeaData& data, const char* model) {
  if (data.special().has_undesirable())
    throw DeaError(std::string(model) + ": undesirable variables are not supported by this model");
}

// ---------------------------------------------------------------------------
// Per-variable factor programs (non-radial and preference structure)

struct FactorSetup {
  Orientation orientation;
  RtsSpec rts;
  bool maxslack;
  bool restricted;
  std::vector<std::size_t> eval, ref;
  Eigen::MatrixXd w_eff;    // |side| x |eval|
  Eigen::MatrixXd w_slack;  // |opposite side| x |eval|
};

struct FactorLayout {
  std::vector<std::size_t> factor_var;  // per oriented variable; npos if not discretionary
  std::size_t l0 = 0;
  std::vector<std::size_t> slack_var;  // per opposite variable; npos if none
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

class FactorModel {
 public:
  FactorModel(const DeaData& d, FactorSetup s) : data_(d), su_(std::move(s)) {
    if (su_.orientation != Orientation::input && su_.orientation != Orientation::output)
      throw DeaError("orientation: must be io or oo for this model");
    su_.rts.validate();
    io_ = su_.orientation == Orientation::input;
    const auto side = io_ ? data_.n_inputs() : data_.n_outputs();
    bool any = false;
    for (std::size_t k = 0; k < side; ++k) any = any || kind(true, k) == VarKind::discretionary;
    if (!any)
      throw DeaError(std::string("orientation ") + std::string(to_string(su_.orientation)) +
                     ": no discretionary variable on the oriented side");
    block_ = detail::ref_block(data_.input(), data_.output(), su_.ref);
  }

  /// Kind of a variable on the oriented side (own = true) or the opposite side.
  VarKind kind(bool own, std::size_t k) const {
    return (io_ == own) ? data_.input_kind(k) : data_.output_kind(k);
  }

  /// `band` widens the fixed factors of the second stage relative to their
  /// magnitude; 0 fixes them exactly.
  LinearProgram build(std::size_t k, bool second, const Eigen::VectorXd* fixed,
                      FactorLayout* out = nullptr, double band = 0.0) const {
    const auto j = ix(su_.eval[k]);
    const Eigen::VectorXd x = data_.input().col(j), y = data_.output().col(j);
    const auto m = data_.n_inputs(), s = data_.n_outputs();
    const auto n_own = io_ ? m : s, n_opp = io_ ? s : m;
    const Eigen::VectorXd& own = io_ ? x : y;
    const Eigen::VectorXd& opp = io_ ? y : x;
    const Eigen::MatrixXd& B_own = io_ ? block_.X : block_.Y;
    const Eigen::MatrixXd& B_opp = io_ ? block_.Y : block_.X;
    const auto& own_names = io_ ? data_.input_names() : data_.output_names();
    const auto& opp_names = io_ ? data_.output_names() : data_.input_names();

    LinearProgram lp(io_ ? Direction::minimize : Direction::maximize, 0);
    FactorLayout L;
    L.factor_var.assign(n_own, npos);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n_own; ++i)
      if (kind(true, i) == VarKind::discretionary) wsum += su_.w_eff(ix(i), ix(k));
    if (!(wsum > 0.0)) throw DeaError("weight_eff: weights of discretionary variables sum to zero");
    for (std::size_t i = 0; i < n_own; ++i) {
      if (kind(true, i) != VarKind::discretionary) continue;
      if (own(ix(i)) == 0.0)
        throw DeaError("DMU " + data_.dmunames()[su_.eval[k]] + ": zero value of discretionary " +
                       (io_ ? "input " : "output ") + own_names[i] + " in a non-radial model");
      VarBound b = io_ ? (su_.restricted ? VarBound{0.0, 1.0} : VarBound{0.0, kInf})
                       : (su_.restricted ? VarBound{1.0, kInf} : VarBound{0.0, kInf});
      if (fixed) {
        const double f = std::clamp((*fixed)(ix(i)), b.lo, b.hi);
        const double tol = band * std::max(1.0, std::abs(f));
        b = VarBound{std::max(b.lo, f - tol), std::min(b.hi, f + tol)};
      }
      L.factor_var[i] = lp.add_var((io_ ? "theta_" : "eta_") + own_names[i],
                                   second ? 0.0 : su_.w_eff(ix(i), ix(k)) / wsum, b);
    }
    L.l0 = detail::add_lambdas(lp, data_, su_.ref);
    L.slack_var.assign(n_opp, npos);
    if (second)
      for (std::size_t r = 0; r < n_opp; ++r)
        if (kind(false, r) == VarKind::discretionary)
          L.slack_var[r] = lp.add_var((io_ ? "sout_" : "sin_") + opp_names[r], su_.w_slack(ix(r), ix(k)));
    if (second) lp.direction = Direction::maximize;

    for (std::size_t i = 0; i < n_own; ++i) {
      auto row = detail::zero_row(lp);
      detail::put(row, L.l0, B_own.row(ix(i)));
      const auto kd = kind(true, i);
      if (kd == VarKind::discretionary) {
        row(ix(L.factor_var[i])) = -own(ix(i));
        lp.add_row(std::move(row), Sense::eq, 0.0, own_names[i]);
      } else if (kd == VarKind::non_controllable) {
        lp.add_row(std::move(row), Sense::eq, own(ix(i)), own_names[i]);
      } else {
        lp.add_row(std::move(row), io_ ? Sense::le : Sense::ge, own(ix(i)), own_names[i]);
      }
    }
    for (std::size_t r = 0; r < n_opp; ++r) {
      auto row = detail::zero_row(lp);
      detail::put(row, L.l0, B_opp.row(ix(r)));
      if (kind(false, r) == VarKind::non_controllable) {
        lp.add_row(std::move(row), Sense::eq, opp(ix(r)), opp_names[r]);
      } else if (L.slack_var[r] != npos) {
        row(ix(L.slack_var[r])) = io_ ? -1.0 : 1.0;
        lp.add_row(std::move(row), Sense::eq, opp(ix(r)), opp_names[r]);
      } else {
        lp.add_row(std::move(row), io_ ? Sense::ge : Sense::le, opp(ix(r)), opp_names[r]);
      }
    }
    detail::add_rts_rows(lp, su_.rts, L.l0, block_.n());
    if (out) *out = L;
    return lp;
  }

  DmuResult solve(std::size_t k) const {
    const auto m = data_.n_inputs(), s = data_.n_outputs();
    const auto nref = block_.n();
    FactorLayout L;
    auto lp1 = build(k, false, nullptr, &L);
    auto sol = deakit::solve(lp1);
    if (!sol.optimal()) return detail::failed(detail::dmu_status(sol.status), m, s, nref);
    const auto n_own = io_ ? m : s;
    Eigen::VectorXd factors = Eigen::VectorXd::Constant(ix(n_own), NA);
    for (std::size_t i = 0; i < n_own; ++i)
      if (L.factor_var[i] != npos) factors(ix(i)) = sol.x(ix(L.factor_var[i]));
    const double score = sol.objective;
    Eigen::VectorXd x_sol = sol.x;
    double slack_obj = 0.0;
    if (su_.maxslack) {
      FactorLayout L2;
      auto sol2 = deakit::solve(build(k, true, &factors, &L2));
      if (!sol2.optimal()) sol2 = deakit::solve(build(k, true, &factors, &L2, 1e-9));
      if (sol2.optimal()) {
        L = L2;
        x_sol = sol2.x;
        slack_obj = sol2.objective;
      }
    }
    DmuResult r;
    r.efficiency = score;
    r.efficiency_vector = factors;
    detail::set_projection(r, block_, x_sol.segment(ix(L.l0), nref));
    const auto j = ix(su_.eval[k]);
    r.slack_input = (data_.input().col(j) - r.target_input).cwiseMax(0.0);
    r.slack_output = (r.target_output - data_.output().col(j)).cwiseMax(0.0);
    // The factor side is radial per variable: its residual is not a slack.
    for (std::size_t i = 0; i < n_own; ++i) {
      if (L.factor_var[i] == npos) continue;
      (io_ ? r.slack_input : r.slack_output)(ix(i)) = 0.0;
    }
    if (!su_.maxslack) {
      const Eigen::VectorXd& sl = io_ ? r.slack_output : r.slack_input;
      for (Eigen::Index q = 0; q < sl.size(); ++q)
        if (kind(false, static_cast<std::size_t>(q)) == VarKind::discretionary)
          slack_obj += su_.w_slack(q, ix(k)) * sl(q);
    }
    r.extra["slack_objective"] = slack_obj;
    bool all_one = true;
    for (std::size_t i = 0; i < n_own; ++i)
      if (L.factor_var[i] != npos) all_one = all_one && std::abs(factors(ix(i)) - 1.0) <= kEfficiencyTol;
    r.classification = all_one ? detail::classify(1.0, 1.0, slack_obj) : Classification::inefficient;
    return r;
  }

 private:
  const DeaData& data_;
  FactorSetup su_;
  bool io_ = true;
  RefBlock block_;
};

FactorSetup factor_setup(const DeaData& data, Orientation o, const RtsSpec& rts, bool maxslack,
                         bool restricted, const std::vector<std::size_t>& eval_in,
                         const std::vector<std::size_t>& ref_in, const Broadcast& w_eff,
                         const Broadcast& w_slack) {
  FactorSetup su{o, rts, maxslack, restricted, {}, {}, {}, {}};
  su.eval = detail::resolve_set(eval_in, data.n_dmus(), "dmu_eval");
  su.ref = detail::resolve_set(ref_in, data.n_dmus(), "dmu_ref");
  const bool io = o == Orientation::input;
  const auto ne = ix(su.eval.size());
  const auto n_own = ix(io ? data.n_inputs() : data.n_outputs());
  const auto n_opp = ix(io ? data.n_outputs() : data.n_inputs());
  su.w_eff = w_eff.resolve(n_own, ne, "weight_eff");
  su.w_slack = w_slack.resolve(n_opp, ne, "weight_slack");
  if (su.w_eff.size() && su.w_eff.minCoeff() < 0.0) throw DeaError("weight_eff: must be nonnegative");
  return su;
}

DeaResult factor_result(const DeaData& data, const FactorSetup& su, std::string name) {
  DeaResult res;
  res.modelname = std::move(name);
  res.orientation = su.orientation;
  res.rts = su.rts;
  res.data = detail::share(data);
  res.dmu_eval = su.eval;
  res.dmu_ref = su.ref;
  res.maxslack = su.maxslack;
  res.facets = {true, true, true, false};
  if (su.rts.kind == RtsKind::grs) {
    res.parameters["L"] = su.rts.L;
    res.parameters["U"] = su.rts.U;
  }
  res.parameter_matrices["weight_slack"] = su.w_slack;
  return res;
}

}  // namespace

DeaResult model_nonradial(const DeaData& data, const NonradialOptions& opt) {
  reject_undesirable(data, "model_nonradial");
  auto su = factor_setup(data, opt.orientation, opt.rts, opt.maxslack, true, opt.dmu_eval,
                         opt.dmu_ref, Broadcast(1.0), opt.weight_slack);
  FactorModel model(data, su);
  auto res = factor_result(data, su, "nonradial");
  for (std::size_t k = 0; k < su.eval.size(); ++k) res.dmus.push_back(model.solve(k));
  return res;
}

DeaResult model_deaps(const DeaData& data, const DeapsOptions& opt) {
  reject_undesirable(data, "model_deaps");
  auto su = factor_setup(data, opt.orientation, opt.rts, opt.maxslack, opt.restricted_eff,
                         opt.dmu_eval, opt.dmu_ref, opt.weight_eff, opt.weight_slack);
  FactorModel model(data, su);
  auto res = factor_result(data, su, "deaps");
  res.parameter_matrices["weight_eff"] = su.w_eff;
  res.parameters["restricted_eff"] = opt.restricted_eff ? 1.0 : 0.0;
  for (std::size_t k = 0; k < su.eval.size(); ++k) res.dmus.push_back(model.solve(k));
  return res;
}

std::vector<LinearProgram> model_deaps_lp(const DeaData& data, const DeapsOptions& opt) {
  reject_undesirable(data, "model_deaps");
  auto su = factor_setup(data, opt.orientation, opt.rts, opt.maxslack, opt.restricted_eff,
                         opt.dmu_eval, opt.dmu_ref, opt.weight_eff, opt.weight_slack);
  FactorModel model(data, su);
  std::vector<LinearProgram> out;
  for (std::size_t k = 0; k < su.eval.size(); ++k) out.push_back(model.build(k, false, nullptr));
  return out;
}

// ---------------------------------------------------------------------------
// Additive

namespace {

struct AdditiveLayout {
  std::size_t l0 = 0;
  std::vector<std::size_t> s_in, s_out;  // npos when the variable is fixed
};

/// max (or min) w- s- + w+ s+ s.t. X lambda + s- = x, Y lambda - s+ = y over
/// the reference block; non-controllable variables carry no slack.
LinearProgram additive_program(const DeaData& data, const RefBlock& block,
                               const std::vector<std::size_t>& ref_idx, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y, const Eigen::VectorXd& wi,
                               const Eigen::VectorXd& wo, const RtsSpec& rts, Direction dir,
                               AdditiveLayout* out = nullptr) {
  const auto m = data.n_inputs(), s = data.n_outputs();
  LinearProgram lp(dir, 0);
  AdditiveLayout L;
  L.l0 = detail::add_lambdas(lp, data, ref_idx);
  L.s_in.assign(m, npos);
  L.s_out.assign(s, npos);
  for (std::size_t i = 0; i < m; ++i)
    if (data.input_kind(i) != VarKind::non_controllable)
      L.s_in[i] = lp.add_var("sin_" + data.input_names()[i], wi(ix(i)));
  for (std::size_t r = 0; r < s; ++r)
    if (data.output_kind(r) != VarKind::non_controllable)
      L.s_out[r] = lp.add_var("sout_" + data.output_names()[r], wo(ix(r)));
  for (std::size_t i = 0; i < m; ++i) {
    auto row = detail::zero_row(lp);
    detail::put(row, L.l0, block.X.row(ix(i)));
    if (L.s_in[i] != npos) row(ix(L.s_in[i])) = 1.0;
    lp.add_row(std::move(row), Sense::eq, x(ix(i)), data.input_names()[i]);
  }
  for (std::size_t r = 0; r < s; ++r) {
    auto row = detail::zero_row(lp);
    detail::put(row, L.l0, block.Y.row(ix(r)));
    if (L.s_out[r] != npos) row(ix(L.s_out[r])) = -1.0;
    lp.add_row(std::move(row), Sense::eq, y(ix(r)), data.output_names()[r]);
  }
  detail::add_rts_rows(lp, rts, L.l0, block.n());
  if (out) *out = L;
  return lp;
}

struct AdditiveSetup {
  std::vector<std::size_t> eval, ref;
  Eigen::MatrixXd wi, wo;
};

AdditiveSetup additive_setup(const DeaData& data, Orientation o, const RtsSpec& rts,
                             const std::vector<std::size_t>& eval, const std::vector<std::size_t>& ref,
                             const Broadcast& wi, const Broadcast& wo, const char* model) {
  reject_undesirable(data, model);
  if (o == Orientation::directional) throw DeaError(std::string(model) + ": orientation must be none, io or oo");
  rts.validate();
  AdditiveSetup su;
  su.eval = detail::resolve_set(eval, data.n_dmus(), "dmu_eval");
  su.ref = detail::resolve_set(ref, data.n_dmus(), "dmu_ref");
  const auto ne = ix(su.eval.size());
  su.wi = wi.resolve(ix(data.n_inputs()), ne, "weight_slack_i");
  su.wo = wo.resolve(ix(data.n_outputs()), ne, "weight_slack_o");
  if ((su.wi.size() && su.wi.minCoeff() < 0.0) || (su.wo.size() && su.wo.minCoeff() < 0.0))
    throw DeaError(std::string(model) + ": slack weights must be nonnegative");
  if (o == Orientation::input) su.wo.setZero();
  if (o == Orientation::output) su.wi.setZero();
  return su;
}

DmuResult additive_result(const LpSolution& sol, const AdditiveLayout& L, const RefBlock& block,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  DmuResult r;
  r.efficiency = sol.objective;
  detail::set_projection(r, block, sol.x.segment(ix(L.l0), block.n()));
  r.slack_input = Eigen::VectorXd::Zero(x.size());
  r.slack_output = Eigen::VectorXd::Zero(y.size());
  for (std::size_t i = 0; i < L.s_in.size(); ++i)
    if (L.s_in[i] != npos) r.slack_input(ix(i)) = std::max(0.0, sol.x(ix(L.s_in[i])));
  for (std::size_t q = 0; q < L.s_out.size(); ++q)
    if (L.s_out[q] != npos) r.slack_output(ix(q)) = std::max(0.0, sol.x(ix(L.s_out[q])));
  const double total = r.slack_input.sum() + r.slack_output.sum();
  r.classification = std::abs(r.efficiency) <= kEfficiencyTol && total <= kEfficiencyTol
                         ? Classification::efficient
                         : Classification::inefficient;
  return r;
}

DeaResult additive_skeleton(const DeaData& data, const AdditiveSetup& su, Orientation o,
                            const RtsSpec& rts, std::string name) {
  DeaResult res;
  res.modelname = std::move(name);
  res.orientation = o;
  res.rts = rts;
  res.data = detail::share(data);
  res.dmu_eval = su.eval;
  res.dmu_ref = su.ref;
  res.facets = {true, true, true, false};
  if (rts.kind == RtsKind::grs) {
    res.parameters["L"] = rts.L;
    res.parameters["U"] = rts.U;
  }
  res.parameter_matrices["weight_slack_i"] = su.wi;
  res.parameter_matrices["weight_slack_o"] = su.wo;
  return res;
}

}  // namespace

DeaResult model_additive(const DeaData& data, const AdditiveOptions& opt) {
  auto su = additive_setup(data, opt.orientation, opt.rts, opt.dmu_eval, opt.dmu_ref,
                           opt.weight_slack_i, opt.weight_slack_o, "model_additive");
  const auto block = detail::ref_block(data.input(), data.output(), su.ref);
  auto res = additive_skeleton(data, su, opt.orientation, opt.rts, "additive");
  for (std::size_t k = 0; k < su.eval.size(); ++k) {
    const auto j = ix(su.eval[k]);
    AdditiveLayout L;
    const Eigen::VectorXd x = data.input().col(j), y = data.output().col(j);
    const auto lp = additive_program(data, block, su.ref, x, y, su.wi.col(ix(k)), su.wo.col(ix(k)),
                                     opt.rts, Direction::maximize, &L);
    const auto sol = solve(lp);
    if (!sol.optimal()) {
      res.dmus.push_back(detail::failed(detail::dmu_status(sol.status), data.n_inputs(),
                                        data.n_outputs(), block.n()));
      continue;
    }
    res.dmus.push_back(additive_result(sol, L, block, x, y));
  }
  return res;
}

std::vector<LinearProgram> model_additive_lp(const DeaData& data, const AdditiveOptions& opt) {
  auto su = additive_setup(data, opt.orientation, opt.rts, opt.dmu_eval, opt.dmu_ref,
                           opt.weight_slack_i, opt.weight_slack_o, "model_additive");
  const auto block = detail::ref_block(data.input(), data.output(), su.ref);
  std::vector<LinearProgram> out;
  for (std::size_t k = 0; k < su.eval.size(); ++k) {
    const auto j = ix(su.eval[k]);
    out.push_back(additive_program(data, block, su.ref, data.input().col(j), data.output().col(j),
                                   su.wi.col(ix(k)), su.wo.col(ix(k)), opt.rts, Direction::maximize));
  }
  return out;
}

DeaResult model_addmin(const DeaData& data, const AddminOptions& opt) {
  if (opt.rts.kind != RtsKind::crs && opt.rts.kind != RtsKind::vrs)
    throw DeaError("model_addmin: rts must be crs or vrs");
  auto su = additive_setup(data, opt.orientation, opt.rts, opt.dmu_eval, opt.dmu_ref,
                           opt.weight_slack_i, opt.weight_slack_o, "model_addmin");
  if (data.special().any()) throw DeaError("model_addmin: nc/nd variables are not supported");
  const FacetSet facets =
      opt.maxfr ? *opt.maxfr : maximal_friends(data, FrontierOptions{opt.rts, su.ref, nullptr});
  if (facets.empty()) throw DeaError("model_addmin: no efficient facet found");
  std::vector<RefBlock> blocks;
  for (const auto& f : facets) {
    if (f.empty()) throw DeaError("maxfr: empty facet");
    for (auto j : f)
      if (j >= data.n_dmus()) throw DeaError("maxfr: DMU index out of range");
    blocks.push_back(detail::ref_block(data.input(), data.output(), f));
  }
  const auto full = detail::ref_block(data.input(), data.output(), su.ref);
  auto res = additive_skeleton(data, su, opt.orientation, opt.rts, "addmin");
  for (std::size_t k = 0; k < su.eval.size(); ++k) {
    const auto j = ix(su.eval[k]);
    const Eigen::VectorXd x = data.input().col(j), y = data.output().col(j);
    std::optional<std::size_t> best;
    LpSolution best_sol;
    AdditiveLayout best_L;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      AdditiveLayout L;
      const auto lp = additive_program(data, blocks[f], facets[f], x, y, su.wi.col(ix(k)),
                                       su.wo.col(ix(k)), opt.rts, Direction::minimize, &L);
      auto sol = solve(lp);
      if (!sol.optimal()) continue;
      if (!best || sol.objective < best_sol.objective - 1e-9 * (1.0 + std::abs(best_sol.objective))) {
        best = f;
        best_sol = std::move(sol);
        best_L = L;
      }
    }
    if (!best) {
      res.dmus.push_back(detail::failed(DmuStatus::infeasible, data.n_inputs(), data.n_outputs(),
                                        full.n(), "no facet dominates the DMU"));
      continue;
    }
    auto r = additive_result(best_sol, best_L, blocks[*best], x, y);
    // Report intensities over dmu_ref.
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(full.n());
    for (std::size_t q = 0; q < facets[*best].size(); ++q) {
      const auto it = std::find(su.ref.begin(), su.ref.end(), facets[*best][q]);
      if (it == su.ref.end()) throw DeaError("maxfr: facet DMU outside dmu_ref");
      lambda(ix(static_cast<std::size_t>(it - su.ref.begin()))) = r.lambda(ix(q));
    }
    r.lambda = lambda;
    r.extra["facet"] = static_cast<double>(*best);
    res.dmus.push_back(std::move(r));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Cost, revenue and profit

DeaResult model_profit(const DeaData& data, const ProfitOptions& opt) {
  if (data.special().any()) throw DeaError("model_profit: nc/nd/ud variables are not supported");
  opt.rts.validate();
  const bool cost = !opt.price_input.empty();
  const bool revenue = !opt.price_output.empty();
  if (!cost && !revenue) throw DeaError("model_profit: price_input and/or price_output required");
  const auto eval = detail::resolve_set(opt.dmu_eval, data.n_dmus(), "dmu_eval");
  const auto ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  const auto m = data.n_inputs(), s = data.n_outputs();
  const auto ne = ix(eval.size());
  const Eigen::MatrixXd c = cost ? opt.price_input.resolve(ix(m), ne, "price_input") : Eigen::MatrixXd();
  const Eigen::MatrixXd p = revenue ? opt.price_output.resolve(ix(s), ne, "price_output") : Eigen::MatrixXd();
  const auto block = detail::ref_block(data.input(), data.output(), ref);

  DeaResult res;
  res.modelname = cost && revenue ? "profit" : cost ? "cost" : "revenue";
  res.orientation = cost && revenue ? Orientation::none : cost ? Orientation::input : Orientation::output;
  res.rts = opt.rts;
  res.data = detail::share(data);
  res.dmu_eval = eval;
  res.dmu_ref = ref;
  res.facets = {true, false, true, false};
  res.parameters["restricted_optimal"] = opt.restricted_optimal ? 1.0 : 0.0;
  if (opt.rts.kind == RtsKind::grs) {
    res.parameters["L"] = opt.rts.L;
    res.parameters["U"] = opt.rts.U;
  }
  if (cost) res.parameter_matrices["price_input"] = c;
  if (revenue) res.parameter_matrices["price_output"] = p;
  if ((cost && c.minCoeff() < 0.0) || (revenue && p.minCoeff() < 0.0))
    res.notes.emplace_back("negative prices supplied");

  for (std::size_t k = 0; k < eval.size(); ++k) {
    const auto j = ix(eval[k]);
    const Eigen::VectorXd xo = data.input().col(j), yo = data.output().col(j);
    LinearProgram lp(cost && !revenue ? Direction::minimize : Direction::maximize, 0);
    std::vector<std::size_t> xv(m, npos), yv(s, npos);
    if (cost)
      for (std::size_t i = 0; i < m; ++i) {
        const VarBound b = opt.restricted_optimal ? VarBound{0.0, xo(ix(i))} : VarBound{};
        xv[i] = lp.add_var("x_" + data.input_names()[i], revenue ? -c(ix(i), ix(k)) : c(ix(i), ix(k)), b);
      }
    if (revenue)
      for (std::size_t r = 0; r < s; ++r) {
        const VarBound b = opt.restricted_optimal ? VarBound{yo(ix(r)), kInf} : VarBound{};
        yv[r] = lp.add_var("y_" + data.output_names()[r], p(ix(r), ix(k)), b);
      }
    const auto l0 = detail::add_lambdas(lp, data, ref);
    for (std::size_t i = 0; i < m; ++i) {
      auto row = detail::zero_row(lp);
      detail::put(row, l0, block.X.row(ix(i)), -1.0);
      if (xv[i] != npos) {
        row(ix(xv[i])) = 1.0;  // x - X lambda >= 0
        lp.add_row(std::move(row), Sense::ge, 0.0, data.input_names()[i]);
      } else {
        lp.add_row(std::move(row), Sense::ge, -xo(ix(i)), data.input_names()[i]);
      }
    }
    for (std::size_t r = 0; r < s; ++r) {
      auto row = detail::zero_row(lp);
      detail::put(row, l0, block.Y.row(ix(r)), -1.0);
      if (yv[r] != npos) {
        row(ix(yv[r])) = 1.0;  // y - Y lambda <= 0
        lp.add_row(std::move(row), Sense::le, 0.0, data.output_names()[r]);
      } else {
        lp.add_row(std::move(row), Sense::le, -yo(ix(r)), data.output_names()[r]);
      }
    }
    detail::add_rts_rows(lp, opt.rts, l0, block.n());
    const auto sol = solve(lp);
    if (!sol.optimal()) {
      res.dmus.push_back(detail::failed(detail::dmu_status(sol.status), m, s, block.n()));
      continue;
    }
    DmuResult r;
    detail::set_projection(r, block, sol.x.segment(ix(l0), block.n()));
    for (std::size_t i = 0; i < m; ++i)
      if (xv[i] != npos) r.target_input(ix(i)) = sol.x(ix(xv[i]));
    for (std::size_t q = 0; q < s; ++q)
      if (yv[q] != npos) r.target_output(ix(q)) = sol.x(ix(yv[q]));
    const double cx_o = cost ? c.col(ix(k)).dot(xo) : 0.0;
    const double py_o = revenue ? p.col(ix(k)).dot(yo) : 0.0;
    if (cost && revenue) {
      const double denom = sol.objective;
      r.extra["optimal_profit"] = denom;
      r.extra["observed_profit"] = py_o - cx_o;
      if (py_o < cx_o) r.flags.emplace_back("observed profit is negative");
      if (std::abs(denom) <= 1e-12) {
        r.efficiency = NA;
        r.status = DmuStatus::degenerate;
        r.flags.emplace_back("optimal profit is zero");
      } else {
        r.efficiency = (py_o - cx_o) / denom;
      }
    } else if (cost) {
      r.extra["optimal_cost"] = sol.objective;
      r.efficiency = cx_o != 0.0 ? sol.objective / cx_o : NA;
    } else {
      r.extra["optimal_revenue"] = sol.objective;
      r.efficiency = sol.objective != 0.0 ? py_o / sol.objective : NA;
    }
    if (is_na(r.efficiency) && r.status == DmuStatus::optimal) r.status = DmuStatus::degenerate;
    r.classification = is_na(r.efficiency) ? Classification::unknown
                       : std::abs(r.efficiency - 1.0) <= kEfficiencyTol ? Classification::efficient
                                                                        : Classification::inefficient;
    res.dmus.push_back(std::move(r));
  }
  return res;
}

}  // namespace deakit
