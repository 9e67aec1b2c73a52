#include "deakit/supereff.hpp"

#include "internal/common.hpp"

#include <cmath>

namespace deakit {

namespace {

using detail::RefBlock;

Eigen::Index ix(std::size_t k) { return static_cast<Eigen::Index>(k); }

struct SuperSetup {
  Orientation orientation;
  RtsSpec rts;
  std::vector<std::size_t> eval, ref;
  Eigen::MatrixXd wi, wo;
};

struct SuperLayout {
  std::optional<std::size_t> tau;
  std::size_t l0 = 0;
  std::size_t t_in = 0, t_out = 0;
  bool has_in = true, has_out = true;
};

/// Program over the reference set without the evaluated DMU. With `ratio`
/// the non-oriented SSBM fraction is linearised with a scale tau; otherwise
/// the objective is ci . t- + co . t+.
LinearProgram super_program(const DeaData& data, const RefBlock& block,
                            const std::vector<std::size_t>& others, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, const Eigen::VectorXd& ci,
                            const Eigen::VectorXd& co, bool has_in, bool has_out, bool ratio,
                            const RtsSpec& rts, SuperLayout* out) {
  const auto m = data.n_inputs(), s = data.n_outputs();
  LinearProgram lp(Direction::minimize, 0);
  SuperLayout L;
  L.has_in = has_in;
  L.has_out = has_out;
  if (ratio) L.tau = lp.add_var("tau", 1.0);
  L.l0 = detail::add_lambdas(lp, data, others);
  L.t_in = lp.n_vars();
  if (has_in)
    for (std::size_t i = 0; i < m; ++i) lp.add_var("tin_" + data.input_names()[i], ci(ix(i)));
  L.t_out = lp.n_vars();
  if (has_out)
    for (std::size_t r = 0; r < s; ++r)
      lp.add_var("tout_" + data.output_names()[r], ratio ? 0.0 : co(ix(r)));
  if (ratio) {
    auto norm = detail::zero_row(lp);
    norm(ix(*L.tau)) = 1.0;
    for (std::size_t r = 0; r < s; ++r) norm(ix(L.t_out + r)) = -co(ix(r));
    lp.add_row(std::move(norm), Sense::eq, 1.0, "normalization");
  }
  for (std::size_t i = 0; i < m; ++i) {
    auto row = detail::zero_row(lp);
    detail::put(row, L.l0, block.X.row(ix(i)));
    if (has_in) row(ix(L.t_in + i)) = -1.0;
    if (ratio) row(ix(*L.tau)) = -x(ix(i));
    lp.add_row(std::move(row), Sense::le, ratio ? 0.0 : x(ix(i)), data.input_names()[i]);
  }
  for (std::size_t r = 0; r < s; ++r) {
    auto row = detail::zero_row(lp);
    detail::put(row, L.l0, block.Y.row(ix(r)));
    if (has_out) row(ix(L.t_out + r)) = 1.0;
    if (ratio) row(ix(*L.tau)) = -y(ix(r));
    lp.add_row(std::move(row), Sense::ge, ratio ? 0.0 : y(ix(r)), data.output_names()[r]);
  }
  if (ratio) {
    const auto lo = rts.lower();
    const auto hi = rts.upper();
    auto row = [&](double c) {
      Eigen::VectorXd v = detail::zero_row(lp);
      v.segment(ix(L.l0), block.n()).setOnes();
      v(ix(*L.tau)) = -c;
      return v;
    };
    if (lo && hi && *lo == *hi) {
      lp.add_row(row(*lo), Sense::eq, 0.0, "rts");
    } else {
      if (lo && *lo > 0.0) lp.add_row(row(*lo), Sense::ge, 0.0, "rts_lower");
      if (hi) lp.add_row(row(*hi), Sense::le, 0.0, "rts_upper");
    }
  } else {
    detail::add_rts_rows(lp, rts, L.l0, block.n());
  }
  if (out) *out = L;
  return lp;
}

/// (1 + mean of t-/x) / (1 - mean of t+/y), dropping zero denominators.
double delta_score(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& tin,
                   const Eigen::VectorXd& tout, const Eigen::VectorXd& wi, const Eigen::VectorXd& wo) {
  double num = 1.0, den = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) > 0.0) num += wi(i) * tin(i) / (static_cast<double>(x.size()) * x(i));
  for (Eigen::Index r = 0; r < y.size(); ++r)
    if (y(r) > 0.0) den -= wo(r) * tout(r) / (static_cast<double>(y.size()) * y(r));
  return den > 1e-12 ? num / den : NA;
}

SuperSetup super_setup(const DeaData& data, Orientation o, const RtsSpec& rts,
                       const std::vector<std::size_t>& eval, const std::vector<std::size_t>& ref,
                       const char* model) {
  if (o == Orientation::directional)
    throw DeaError(std::string(model) + ": orientation must be no, io or oo");
  if (data.special().any())
    throw DeaError(std::string(model) + ": nc/nd/ud variables are not supported");
  rts.validate();
  SuperSetup su{o, rts, {}, {}, {}, {}};
  su.eval = detail::resolve_set(eval, data.n_dmus(), "dmu_eval");
  su.ref = detail::resolve_set(ref, data.n_dmus(), "dmu_ref");
  return su;
}

DeaResult super_skeleton(const DeaData& data, const SuperSetup& su, std::string name) {
  DeaResult res;
  res.modelname = std::move(name);
  res.orientation = su.orientation;
  res.rts = su.rts;
  res.data = detail::share(data);
  res.dmu_eval = su.eval;
  res.dmu_ref = su.ref;
  res.facets = {true, true, true, false};
  if (su.rts.kind == RtsKind::grs) {
    res.parameters["L"] = su.rts.L;
    res.parameters["U"] = su.rts.U;
  }
  res.parameter_matrices["weight_slack_i"] = su.wi;
  res.parameter_matrices["weight_slack_o"] = su.wo;
  return res;
}

/// Solves the super program of evaluated DMU k. `finish` turns the scaled
/// solution into the score and may fill extra entries.
template <class Finish>
DmuResult solve_super(const DeaData& data, const SuperSetup& su, std::size_t k, bool ratio,
                      const Eigen::VectorXd& ci, const Eigen::VectorXd& co, Finish finish) {
  const auto m = data.n_inputs(), s = data.n_outputs();
  const auto nref = ix(su.ref.size());
  std::vector<std::size_t> others;
  std::vector<Eigen::Index> pos;
  for (std::size_t q = 0; q < su.ref.size(); ++q)
    if (su.ref[q] != su.eval[k]) {
      others.push_back(su.ref[q]);
      pos.push_back(ix(q));
    }
  if (others.empty()) return detail::failed(DmuStatus::empty_reference, m, s, nref, "empty reference set");
  const auto block = detail::ref_block(data.input(), data.output(), others);
  const auto j = ix(su.eval[k]);
  const Eigen::VectorXd x = data.input().col(j), y = data.output().col(j);
  const bool has_in = su.orientation != Orientation::output;
  const bool has_out = su.orientation != Orientation::input;
  SuperLayout L;
  const auto lp = super_program(data, block, others, x, y, ci, co, has_in, has_out, ratio, su.rts, &L);
  const auto sol = solve(lp);
  if (!sol.optimal()) return detail::failed(detail::dmu_status(sol.status), m, s, nref);
  const double scale = L.tau ? sol.x(ix(*L.tau)) : 1.0;
  if (!(scale > 1e-12)) return detail::failed(DmuStatus::numerical, m, s, nref, "degenerate scaling variable");
  DmuResult r;
  Eigen::VectorXd lam = sol.x.segment(ix(L.l0), block.n()) / scale;
  detail::set_projection(r, block, lam);
  r.lambda = Eigen::VectorXd::Zero(nref);
  for (std::size_t q = 0; q < pos.size(); ++q) r.lambda(pos[q]) = lam(ix(q));
  r.slack_input = has_in ? Eigen::VectorXd(sol.x.segment(ix(L.t_in), ix(m)) / scale) : Eigen::VectorXd::Zero(ix(m));
  r.slack_output = has_out ? Eigen::VectorXd(sol.x.segment(ix(L.t_out), ix(s)) / scale) : Eigen::VectorXd::Zero(ix(s));
  r.slack_input = r.slack_input.cwiseMax(0.0);
  r.slack_output = r.slack_output.cwiseMax(0.0);
  finish(r, sol, x, y);
  if (is_na(r.efficiency)) {
    r.status = DmuStatus::degenerate;
    r.classification = Classification::unknown;
  } else {
    r.classification =
        r.efficiency > 1.0 + kEfficiencyTol ? Classification::efficient : Classification::inefficient;
  }
  return r;
}

}  // namespace

DeaResult model_sbmsupereff(const DeaData& data, const SbmSupereffOptions& opt) {
  auto su = super_setup(data, opt.orientation, opt.rts, opt.dmu_eval, opt.dmu_ref, "model_sbmsupereff");
  const auto ne = ix(su.eval.size());
  const auto m = ix(data.n_inputs()), s = ix(data.n_outputs());
  su.wi = opt.weight_slack_i.resolve(m, ne, "weight_slack_i");
  su.wo = opt.weight_slack_o.resolve(s, ne, "weight_slack_o");
  for (Eigen::Index k = 0; k < ne; ++k) {
    if (su.wi.col(k).minCoeff() <= 0.0 || su.wo.col(k).minCoeff() <= 0.0)
      throw DeaError("model_sbmsupereff: weights must be positive");
    su.wi.col(k) *= static_cast<double>(m) / su.wi.col(k).sum();
    su.wo.col(k) *= static_cast<double>(s) / su.wo.col(k).sum();
  }
  auto res = super_skeleton(data, su, "sbmsupereff");
  for (std::size_t k = 0; k < su.eval.size(); ++k) {
    const auto j = ix(su.eval[k]);
    const Eigen::VectorXd x = data.input().col(j), y = data.output().col(j);
    Eigen::VectorXd ci = Eigen::VectorXd::Zero(m), co = Eigen::VectorXd::Zero(s);
    for (Eigen::Index i = 0; i < m; ++i)
      if (x(i) > 0.0) ci(i) = su.wi(i, ix(k)) / (static_cast<double>(m) * x(i));
    for (Eigen::Index r = 0; r < s; ++r)
      if (y(r) > 0.0) co(r) = su.wo(r, ix(k)) / (static_cast<double>(s) * y(r));
    const bool ratio = opt.orientation == Orientation::none;
    const Eigen::VectorXd wi = su.wi.col(ix(k)), wo = su.wo.col(ix(k));
    res.dmus.push_back(solve_super(data, su, k, ratio, ci, co,
                                   [&](DmuResult& r, const LpSolution& sol, const Eigen::VectorXd& xo,
                                       const Eigen::VectorXd& yo) {
                                     if (opt.orientation == Orientation::input) r.efficiency = 1.0 + sol.objective;
                                     else if (opt.orientation == Orientation::output)
                                       r.efficiency = sol.objective < 1.0 - 1e-12 ? 1.0 / (1.0 - sol.objective) : NA;
                                     else r.efficiency = delta_score(xo, yo, r.slack_input, r.slack_output, wi, wo);
                                   }));
  }
  return res;
}

DeaResult model_addsupereff(const DeaData& data, const AddSupereffOptions& opt) {
  auto su = super_setup(data, opt.orientation, opt.rts, opt.dmu_eval, opt.dmu_ref, "model_addsupereff");
  const auto ne = ix(su.eval.size());
  const auto m = ix(data.n_inputs()), s = ix(data.n_outputs());
  const bool need_in = opt.orientation != Orientation::output;
  const bool need_out = opt.orientation != Orientation::input;
  su.wi = Eigen::MatrixXd::Zero(m, ne);
  su.wo = Eigen::MatrixXd::Zero(s, ne);
  for (Eigen::Index k = 0; k < ne; ++k) {
    const auto j = ix(su.eval[static_cast<std::size_t>(k)]);
    if (need_in && opt.weight_slack_i.empty()) {
      if (data.input().col(j).minCoeff() <= 0.0)
        throw DeaError("model_addsupereff: default input weights need positive inputs");
      su.wi.col(k) = data.input().col(j).cwiseInverse();
    }
    if (need_out && opt.weight_slack_o.empty()) {
      if (data.output().col(j).minCoeff() <= 0.0)
        throw DeaError("model_addsupereff: default output weights need positive outputs");
      su.wo.col(k) = data.output().col(j).cwiseInverse();
    }
  }
  if (need_in && !opt.weight_slack_i.empty()) su.wi = opt.weight_slack_i.resolve(m, ne, "weight_slack_i");
  if (need_out && !opt.weight_slack_o.empty()) su.wo = opt.weight_slack_o.resolve(s, ne, "weight_slack_o");
  if ((su.wi.size() && su.wi.minCoeff() < 0.0) || (su.wo.size() && su.wo.minCoeff() < 0.0))
    throw DeaError("model_addsupereff: weights must be nonnegative");
  for (Eigen::Index k = 0; k < ne; ++k)
    if ((need_in ? su.wi.col(k).sum() : 0.0) + (need_out ? su.wo.col(k).sum() : 0.0) <= 0.0)
      throw DeaError("model_addsupereff: all weights are zero");
  auto res = super_skeleton(data, su, "addsupereff");
  const Eigen::VectorXd ones_i = Eigen::VectorXd::Ones(m), ones_o = Eigen::VectorXd::Ones(s);
  for (std::size_t k = 0; k < su.eval.size(); ++k) {
    res.dmus.push_back(solve_super(data, su, k, false, su.wi.col(ix(k)), su.wo.col(ix(k)),
                                   [&](DmuResult& r, const LpSolution& sol, const Eigen::VectorXd& xo,
                                       const Eigen::VectorXd& yo) {
                                     r.extra["objective"] = sol.objective;
                                     r.efficiency = delta_score(xo, yo, r.slack_input, r.slack_output,
                                                                ones_i, ones_o);
                                   }));
  }
  return res;
}

}  // namespace deakit
