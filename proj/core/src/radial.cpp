#include "deakit/radial.hpp"
#include "deakit/supereff.hpp"

#include "internal/common.hpp"
#include "internal/radial_core.hpp"

#include <algorithm>
#include <cmath>

namespace deakit {

namespace {

using detail::RadialCore;

struct Prepared {
  std::shared_ptr<const DeaData> data;  // translated when undesirable io/oo
  std::vector<std::size_t> eval, ref;
  Eigen::MatrixXd wi, wo, gi, go;
  std::vector<std::string> notes;
  Eigen::VectorXd vtrans_i, vtrans_o;
};

Prepared prepare(const DeaData& data, const BasicOptions& opt, const char* model) {
  if (opt.orientation == Orientation::none)
    throw DeaError(std::string(model) + ": orientation must be io, oo or dir");
  opt.rts.validate();
  Prepared p;
  p.eval = detail::resolve_set(opt.dmu_eval, data.n_dmus(), "dmu_eval");
  p.ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  const bool dir = opt.orientation == Orientation::directional;
  if (!dir && (!opt.dir_input.empty() || !opt.dir_output.empty()))
    throw DeaError("dir_input/dir_output: only valid with orientation dir");
  if (data.special().has_undesirable() && !dir) {
    auto t = undesirable_transform(data, opt.vtrans);
    p.data = std::make_shared<const DeaData>(std::move(t.data));
    p.vtrans_i = t.vtrans_i;
    p.vtrans_o = t.vtrans_o;
    p.notes = t.diagnostics;
    if (opt.rts.kind != RtsKind::vrs)
      p.notes.emplace_back("undesirable variables translated under non-VRS returns to scale; "
                           "results are not translation invariant");
  } else {
    if (!opt.vtrans.inputs.empty() || !opt.vtrans.outputs.empty())
      throw DeaError("vtrans_i/vtrans_o: translations apply to radial io/oo models with undesirable variables");
    p.data = detail::share(data);
  }
  const auto ne = static_cast<Eigen::Index>(p.eval.size());
  const auto m = static_cast<Eigen::Index>(data.n_inputs());
  const auto s = static_cast<Eigen::Index>(data.n_outputs());
  p.wi = opt.weight_slack_i.resolve(m, ne, "weight_slack_i");
  p.wo = opt.weight_slack_o.resolve(s, ne, "weight_slack_o");
  if (dir) {
    Eigen::MatrixXd own_x(m, ne), own_y(s, ne);
    for (Eigen::Index k = 0; k < ne; ++k) {
      own_x.col(k) = data.input().col(static_cast<Eigen::Index>(p.eval[static_cast<std::size_t>(k)]));
      own_y.col(k) = data.output().col(static_cast<Eigen::Index>(p.eval[static_cast<std::size_t>(k)]));
    }
    p.gi = opt.dir_input.empty() ? own_x : opt.dir_input.resolve(m, ne, "dir_input");
    p.go = opt.dir_output.empty() ? own_y : opt.dir_output.resolve(s, ne, "dir_output");
  }
  return p;
}

RadialCore::Dmu dmu_of(const Prepared& p, std::size_t k) {
  const auto j = static_cast<Eigen::Index>(p.eval[k]);
  const auto c = static_cast<Eigen::Index>(k);
  RadialCore::Dmu o{p.data->input().col(j), p.data->output().col(j), {}, {},
                    p.wi.col(c), p.wo.col(c)};
  if (p.gi.size()) {
    o.gi = p.gi.col(c);
    o.go = p.go.col(c);
  }
  return o;
}

DeaResult skeleton(const Prepared& p, std::string name, const BasicOptions& opt) {
  DeaResult r;
  r.modelname = std::move(name);
  r.orientation = opt.orientation;
  r.rts = opt.rts;
  r.data = p.data;
  r.dmu_eval = p.eval;
  r.dmu_ref = p.ref;
  r.maxslack = opt.maxslack;
  r.facets = {true, true, true, false};
  if (r.rts.kind == RtsKind::grs) {
    r.parameters["L"] = r.rts.L;
    r.parameters["U"] = r.rts.U;
  }
  r.parameter_matrices["weight_slack_i"] = p.wi;
  r.parameter_matrices["weight_slack_o"] = p.wo;
  if (p.gi.size()) {
    r.parameter_matrices["dir_input"] = p.gi;
    r.parameter_matrices["dir_output"] = p.go;
  }
  if (p.vtrans_i.size()) r.parameter_matrices["vtrans_i"] = p.vtrans_i;
  if (p.vtrans_o.size()) r.parameter_matrices["vtrans_o"] = p.vtrans_o;
  r.notes = p.notes;
  return r;
}

}  // namespace

DeaResult model_basic(const DeaData& data, const BasicOptions& opt) {
  auto p = prepare(data, opt, "model_basic");
  RadialCore core(*p.data, opt.orientation, opt.rts, opt.maxslack);
  core.check_orientation();
  auto res = skeleton(p, "basic", opt);
  res.dmus.reserve(p.eval.size());
  for (std::size_t k = 0; k < p.eval.size(); ++k) res.dmus.push_back(core.solve(dmu_of(p, k), p.ref));
  return res;
}

std::vector<LinearProgram> model_basic_lp(const DeaData& data, const BasicOptions& opt) {
  auto p = prepare(data, opt, "model_basic");
  RadialCore core(*p.data, opt.orientation, opt.rts, opt.maxslack);
  core.check_orientation();
  std::vector<LinearProgram> out;
  for (std::size_t k = 0; k < p.eval.size(); ++k) out.push_back(core.stage1(dmu_of(p, k), p.ref));
  return out;
}

// ---------------------------------------------------------------------------
// FDH by enumeration

namespace {

/// Feasible interval of the score for one candidate reference DMU.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool feasible = true;

  /// Adds a*phi <= b.
  void le(double a, double b) {
    if (a > 0.0) hi = std::min(hi, b / a);
    else if (a < 0.0) lo = std::max(lo, b / a);
    else if (b < -1e-12 * (1.0 + std::abs(b))) feasible = false;
  }
  void eq(double a, double b) {
    le(a, b);
    le(-a, -b);
  }
};

}  // namespace

DeaResult model_fdh(const DeaData& data, const BasicOptions& opt) {
  auto p = prepare(data, opt, "model_fdh");
  RadialCore core(*p.data, opt.orientation, RtsSpec::vrs(), opt.maxslack);
  core.check_orientation();
  const auto& d = *p.data;
  const auto m = d.n_inputs();
  const auto s = d.n_outputs();
  const auto block = detail::ref_block(d.input(), d.output(), p.ref);
  const auto nref = block.n();
  auto res = skeleton(p, "fdh", opt);
  res.rts = RtsSpec::vrs();
  const bool io = opt.orientation == Orientation::input;
  const bool oo = opt.orientation == Orientation::output;
  const double tol = 1e-12;

  for (std::size_t k = 0; k < p.eval.size(); ++k) {
    const auto o = dmu_of(p, k);
    if (!io && !oo) {
      bool zero = true;
      for (std::size_t i = 0; i < m; ++i)
        if (core.in_kind[i] != VarKind::non_controllable && core.in_kind[i] != VarKind::non_discretionary)
          zero = zero && o.gi(static_cast<Eigen::Index>(i)) == 0.0;
      for (std::size_t r = 0; r < s; ++r)
        if (core.out_kind[r] != VarKind::non_controllable && core.out_kind[r] != VarKind::non_discretionary)
          zero = zero && o.go(static_cast<Eigen::Index>(r)) == 0.0;
      if (zero) throw DeaError("dir_input/dir_output: direction is all zero");
    }
    // Score each candidate j as the optimum of the program with lambda = e_j.
    std::vector<double> score(static_cast<std::size_t>(nref), NA);
    for (Eigen::Index j = 0; j < nref; ++j) {
      Interval iv;
      for (std::size_t i = 0; i < m; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const double xj = block.X(ii, j), xo = o.x(ii);
        switch (core.in_kind[i]) {
          case VarKind::non_controllable: iv.eq(0.0, xo - xj); break;
          case VarKind::non_discretionary: iv.le(0.0, xo - xj); break;
          case VarKind::undesirable: iv.eq(-o.gi(ii), xo - xj); break;
          case VarKind::discretionary:
            if (io) iv.le(-xo, -xj);          // theta*xo >= xj
            else if (oo) iv.le(0.0, xo - xj);
            else iv.le(o.gi(ii), xo - xj);    // beta*g + xj <= xo
            break;
        }
      }
      for (std::size_t r = 0; r < s; ++r) {
        const auto rr = static_cast<Eigen::Index>(r);
        const double yj = block.Y(rr, j), yo = o.y(rr);
        switch (core.out_kind[r]) {
          case VarKind::non_controllable: iv.eq(0.0, yj - yo); break;
          case VarKind::non_discretionary: iv.le(0.0, yj - yo); break;
          case VarKind::undesirable: iv.eq(o.go(rr), yo - yj); break;
          case VarKind::discretionary:
            if (io) iv.le(0.0, yj - yo);
            else if (oo) iv.le(yo, yj);        // eta*yo <= yj
            else iv.le(o.go(rr), yj - yo);     // beta*g <= yj - yo
            break;
        }
      }
      if (!iv.feasible || iv.lo > iv.hi + tol * (1.0 + std::abs(iv.hi))) continue;
      score[static_cast<std::size_t>(j)] = io ? iv.lo : iv.hi;
    }
    double best = NA;
    bool unbounded = false;
    for (double v : score) {
      if (is_na(v)) continue;
      if (std::isinf(v)) {
        unbounded = unbounded || (io ? v < 0 : v > 0);
        continue;
      }
      if (is_na(best) || (io ? v < best : v > best)) best = v;
    }
    if (unbounded || is_na(best)) {
      res.dmus.push_back(detail::failed(unbounded ? DmuStatus::unbounded : DmuStatus::infeasible, m,
                                        s, nref));
      continue;
    }
    // Second stage: among optimal candidates take the largest weighted slack.
    Eigen::Index pick = -1;
    double pick_omega = -1.0;
    for (Eigen::Index j = 0; j < nref; ++j) {
      const double v = score[static_cast<std::size_t>(j)];
      if (is_na(v) || std::abs(v - best) > 1e-9 * (1.0 + std::abs(best))) continue;
      if (!opt.maxslack) {
        pick = j;
        break;
      }
      double omega = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (core.in_kind[i] != VarKind::discretionary) continue;
        const auto ii = static_cast<Eigen::Index>(i);
        const double lim = io ? best * o.x(ii) : oo ? o.x(ii) : o.x(ii) - best * o.gi(ii);
        omega += o.wi(ii) * (lim - block.X(ii, j));
      }
      for (std::size_t r = 0; r < s; ++r) {
        if (core.out_kind[r] != VarKind::discretionary) continue;
        const auto rr = static_cast<Eigen::Index>(r);
        const double lim = io ? o.y(rr) : oo ? best * o.y(rr) : o.y(rr) + best * o.go(rr);
        omega += o.wo(rr) * (block.Y(rr, j) - lim);
      }
      if (omega > pick_omega + 1e-12) {
        pick_omega = omega;
        pick = j;
      }
    }
    DmuResult dr;
    dr.efficiency = best;
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(nref);
    lambda(pick) = 1.0;
    detail::set_projection(dr, block, lambda);
    dr.slack_input.resize(static_cast<Eigen::Index>(m));
    dr.slack_output.resize(static_cast<Eigen::Index>(s));
    double omega = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      double lim = o.x(ii);
      if (core.in_kind[i] == VarKind::discretionary)
        lim = io ? best * o.x(ii) : oo ? o.x(ii) : o.x(ii) - best * o.gi(ii);
      else if (core.in_kind[i] == VarKind::undesirable)
        lim = o.x(ii) + best * o.gi(ii);
      double v = lim - dr.target_input(ii);
      if (std::abs(v) < 1e-12) v = 0.0;
      dr.slack_input(ii) = v;
      if (core.in_kind[i] == VarKind::discretionary) omega += o.wi(ii) * v;
    }
    for (std::size_t r = 0; r < s; ++r) {
      const auto rr = static_cast<Eigen::Index>(r);
      double lim = o.y(rr);
      if (core.out_kind[r] == VarKind::discretionary)
        lim = io ? o.y(rr) : oo ? best * o.y(rr) : o.y(rr) + best * o.go(rr);
      else if (core.out_kind[r] == VarKind::undesirable)
        lim = o.y(rr) - best * o.go(rr);
      double v = dr.target_output(rr) - lim;
      if (std::abs(v) < 1e-12) v = 0.0;
      dr.slack_output(rr) = v;
      if (core.out_kind[r] == VarKind::discretionary) omega += o.wo(rr) * v;
    }
    dr.classification = detail::classify(best, io || oo ? 1.0 : 0.0, omega);
    dr.extra["slack_objective"] = omega;
    res.dmus.push_back(std::move(dr));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Range directional models

DeaResult model_rdm(const DeaData& data, const RdmOptions& opt) {
  if (opt.orientation == Orientation::directional)
    throw DeaError("model_rdm: orientation must be no, io or oo");
  const auto ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  const auto eval = detail::resolve_set(opt.dmu_eval, data.n_dmus(), "dmu_eval");
  const auto m = static_cast<Eigen::Index>(data.n_inputs());
  const auto s = static_cast<Eigen::Index>(data.n_outputs());
  const auto ne = static_cast<Eigen::Index>(eval.size());
  const auto block = detail::ref_block(data.input(), data.output(), ref);
  const Eigen::VectorXd xmin = block.X.rowwise().minCoeff();
  const Eigen::VectorXd ymax = block.Y.rowwise().maxCoeff();
  Eigen::MatrixXd gi(m, ne), go(s, ne);
  for (Eigen::Index k = 0; k < ne; ++k) {
    const auto j = static_cast<Eigen::Index>(eval[static_cast<std::size_t>(k)]);
    gi.col(k) = data.input().col(j) - xmin;
    go.col(k) = ymax - data.output().col(j);
  }
  // DMUs outside dmu_ref can sit beyond the observed range; clip at zero.
  gi = gi.cwiseMax(0.0);
  go = go.cwiseMax(0.0);
  if (opt.orientation == Orientation::input) go.setZero();
  if (opt.orientation == Orientation::output) gi.setZero();
  if (opt.irdm) {
    gi = gi.unaryExpr([](double v) { return v != 0.0 ? 1.0 / v : 0.0; });
    go = go.unaryExpr([](double v) { return v != 0.0 ? 1.0 / v : 0.0; });
  }

  BasicOptions bo;
  bo.orientation = Orientation::directional;
  bo.rts = RtsSpec::vrs();
  bo.dmu_eval = eval;
  bo.dmu_ref = ref;
  bo.maxslack = opt.maxslack;
  bo.weight_slack_i = opt.weight_slack_i;
  bo.weight_slack_o = opt.weight_slack_o;
  bo.dir_input = gi;
  bo.dir_output = go;
  auto p = prepare(data, bo, "model_rdm");
  RadialCore core(*p.data, Orientation::directional, RtsSpec::vrs(), opt.maxslack);
  core.zero_direction_ok = true;
  core.check_orientation();
  auto res = skeleton(p, opt.irdm ? "irdm" : "rdm", bo);
  res.orientation = opt.orientation;
  for (std::size_t k = 0; k < eval.size(); ++k) res.dmus.push_back(core.solve(dmu_of(p, k), ref));
  return res;
}

// ---------------------------------------------------------------------------
// Radial super-efficiency

DeaResult model_supereff(const DeaData& data, const BasicOptions& opt) {
  auto p = prepare(data, opt, "model_supereff");
  RadialCore core(*p.data, opt.orientation, opt.rts, opt.maxslack);
  core.check_orientation();
  auto res = skeleton(p, "supereff", opt);
  const auto m = p.data->n_inputs(), s = p.data->n_outputs();
  const auto nref = static_cast<Eigen::Index>(p.ref.size());
  for (std::size_t k = 0; k < p.eval.size(); ++k) {
    std::vector<std::size_t> others;
    std::vector<Eigen::Index> pos;
    for (std::size_t q = 0; q < p.ref.size(); ++q)
      if (p.ref[q] != p.eval[k]) {
        others.push_back(p.ref[q]);
        pos.push_back(static_cast<Eigen::Index>(q));
      }
    if (others.empty()) {
      res.dmus.push_back(detail::failed(DmuStatus::empty_reference, m, s, nref, "empty reference set"));
      continue;
    }
    auto r = core.solve(dmu_of(p, k), others);
    if (r.ok()) {
      // Efficient DMUs score beyond the plain ideal value.
      const double e = r.efficiency;
      const bool eff = opt.orientation == Orientation::input    ? e >= 1.0 - kEfficiencyTol
                       : opt.orientation == Orientation::output ? e <= 1.0 + kEfficiencyTol
                                                                : e <= kEfficiencyTol;
      r.classification = eff ? Classification::efficient : Classification::inefficient;
    }
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(nref);
    if (!r.ok()) lambda.setConstant(NA);
    for (std::size_t q = 0; q < pos.size(); ++q) lambda(pos[q]) = r.lambda(static_cast<Eigen::Index>(q));
    r.lambda = lambda;
    res.dmus.push_back(std::move(r));
  }
  return res;
}

}  // namespace deakit
