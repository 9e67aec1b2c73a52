#include "internal/radial_core.hpp"

#include <algorithm>

namespace deakit::detail {

RadialCore::RadialCore(const DeaData& d, Orientation o, RtsSpec r, bool ms)
    : data(d), orientation(o), rts(r), maxslack(ms) {
  for (std::size_t i = 0; i < d.n_inputs(); ++i) in_kind.push_back(d.input_kind(i));
  for (std::size_t k = 0; k < d.n_outputs(); ++k) out_kind.push_back(d.output_kind(k));
}

void RadialCore::check_orientation() const {
  auto any_d = [](const std::vector<VarKind>& k) {
    return std::find(k.begin(), k.end(), VarKind::discretionary) != k.end();
  };
  if (orientation == Orientation::input && !any_d(in_kind))
    throw DeaError("orientation io requires at least one discretionary input");
  if (orientation == Orientation::output && !any_d(out_kind))
    throw DeaError("orientation oo requires at least one discretionary output");
  if (orientation == Orientation::directional && !any_d(in_kind) && !any_d(out_kind))
    throw DeaError("orientation dir requires at least one discretionary variable");
  if (orientation != Orientation::directional) {
    for (auto k : in_kind)
      if (k == VarKind::undesirable)
        throw DeaError("undesirable inputs must be translated before a radial io/oo model");
    for (auto k : out_kind)
      if (k == VarKind::undesirable)
        throw DeaError("undesirable outputs must be translated before a radial io/oo model");
  }
}

RadialCore::RowSpec RadialCore::input_row(const Dmu& o, std::size_t i) const {
  const auto k = static_cast<Eigen::Index>(i);
  const double x = o.x(k);
  switch (in_kind[i]) {
    case VarKind::non_controllable: return {0.0, Sense::eq, x, false};
    case VarKind::non_discretionary: return {0.0, Sense::le, x, false};
    case VarKind::undesirable: return {-o.gi(k), Sense::eq, x, false};
    case VarKind::discretionary: break;
  }
  switch (orientation) {
    case Orientation::input: return {-x, Sense::le, 0.0, true};
    case Orientation::directional: return {o.gi(k), Sense::le, x, true};
    default: return {0.0, Sense::le, x, true};
  }
}

RadialCore::RowSpec RadialCore::output_row(const Dmu& o, std::size_t r) const {
  const auto k = static_cast<Eigen::Index>(r);
  const double y = o.y(k);
  switch (out_kind[r]) {
    case VarKind::non_controllable: return {0.0, Sense::eq, y, false};
    case VarKind::non_discretionary: return {0.0, Sense::ge, y, false};
    case VarKind::undesirable: return {o.go(k), Sense::eq, y, false};
    case VarKind::discretionary: break;
  }
  switch (orientation) {
    case Orientation::output: return {-y, Sense::ge, 0.0, true};
    case Orientation::directional: return {-o.go(k), Sense::ge, y, true};
    default: return {0.0, Sense::ge, y, true};
  }
}

LinearProgram RadialCore::build(const Dmu& o, const RefBlock& ref,
                                const std::vector<std::size_t>& idx, bool second, double phi_lo,
                                double phi_hi) const {
  const bool minimise = orientation == Orientation::input;
  LinearProgram lp(second || !minimise ? Direction::maximize : Direction::minimize, 0);
  const char* phi_name = orientation == Orientation::input    ? "theta"
                         : orientation == Orientation::output ? "eta"
                                                              : "beta";
  const auto phi = lp.add_var(phi_name, second ? 0.0 : 1.0,
                              second ? VarBound::boxed(phi_lo, phi_hi) : VarBound::free());
  const auto l0 = add_lambdas(lp, data, idx);
  const auto m = data.n_inputs();
  const auto s = data.n_outputs();
  std::vector<RowSpec> rin(m), rout(s);
  std::vector<std::size_t> sin(m, 0), sout(s, 0);
  for (std::size_t i = 0; i < m; ++i) {
    rin[i] = input_row(o, i);
    if (second && rin[i].slack)
      sin[i] = lp.add_var("slack_" + data.input_names()[i], o.wi(static_cast<Eigen::Index>(i)));
  }
  for (std::size_t r = 0; r < s; ++r) {
    rout[r] = output_row(o, r);
    if (second && rout[r].slack)
      sout[r] = lp.add_var("slack_" + data.output_names()[r], o.wo(static_cast<Eigen::Index>(r)));
  }
  for (std::size_t i = 0; i < m; ++i) {
    auto row = zero_row(lp);
    put(row, l0, ref.X.row(static_cast<Eigen::Index>(i)));
    row(static_cast<Eigen::Index>(phi)) = rin[i].phi;
    auto sense = rin[i].sense;
    if (second && rin[i].slack) {
      row(static_cast<Eigen::Index>(sin[i])) = 1.0;
      sense = Sense::eq;
    }
    lp.add_row(std::move(row), sense, rin[i].rhs, data.input_names()[i]);
  }
  for (std::size_t r = 0; r < s; ++r) {
    auto row = zero_row(lp);
    put(row, l0, ref.Y.row(static_cast<Eigen::Index>(r)));
    row(static_cast<Eigen::Index>(phi)) = rout[r].phi;
    auto sense = rout[r].sense;
    if (second && rout[r].slack) {
      row(static_cast<Eigen::Index>(sout[r])) = -1.0;
      sense = Sense::eq;
    }
    lp.add_row(std::move(row), sense, rout[r].rhs, data.output_names()[r]);
  }
  add_rts_rows(lp, rts, l0, ref.n());
  return lp;
}

LinearProgram RadialCore::stage1(const Dmu& o, const std::vector<std::size_t>& ref) const {
  const auto block = ref_block(data.input(), data.output(), ref);
  return build(o, block, ref, false, 0.0, 0.0);
}

DmuResult RadialCore::solve(const Dmu& o, const std::vector<std::size_t>& ref) const {
  const auto m = data.n_inputs();
  const auto s = data.n_outputs();
  const auto nref = static_cast<Eigen::Index>(ref.size());
  if (ref.empty()) return failed(DmuStatus::empty_reference, m, s, 0, "empty reference set");
  const auto block = ref_block(data.input(), data.output(), ref);

  double phi = 0.0;
  bool fixed_zero = false;
  LpSolution first;
  if (orientation == Orientation::directional) {
    bool zero = true;
    for (std::size_t i = 0; i < m; ++i)
      if (in_kind[i] == VarKind::discretionary || in_kind[i] == VarKind::undesirable)
        zero = zero && o.gi(static_cast<Eigen::Index>(i)) == 0.0;
    for (std::size_t r = 0; r < s; ++r)
      if (out_kind[r] == VarKind::discretionary || out_kind[r] == VarKind::undesirable)
        zero = zero && o.go(static_cast<Eigen::Index>(r)) == 0.0;
    if (zero && !zero_direction_ok) throw DeaError("dir_input/dir_output: direction is all zero");
    fixed_zero = zero;
  }

  if (!fixed_zero) {
    first = deakit::solve(build(o, block, ref, false, 0.0, 0.0));
    if (!first.optimal()) return failed(dmu_status(first.status), m, s, nref);
    phi = first.x(0);
  }

  Eigen::VectorXd lambda = fixed_zero ? Eigen::VectorXd() : Eigen::VectorXd(first.x.segment(1, nref));
  double phi_used = phi;
  bool second_ok = false;
  if (maxslack || fixed_zero) {
    // The first-stage score is fixed exactly; a band of 1e-9 is only used
    // when rounding makes the exact fix infeasible, since any slack in the
    // score lets the slack maximisation buy spurious intensities.
    auto sec = deakit::solve(build(o, block, ref, true, phi, phi));
    if (!sec.optimal() && !fixed_zero) {
      const double tol = 1e-9 * std::max(1.0, std::abs(phi));
      const double lo = orientation == Orientation::input ? phi : phi - tol;
      const double hi = orientation == Orientation::input ? phi + tol : phi;
      sec = deakit::solve(build(o, block, ref, true, lo, hi));
    }
    if (sec.optimal()) {
      lambda = sec.x.segment(1, nref);
      phi_used = sec.x(0);
      second_ok = true;
    } else if (fixed_zero) {
      return failed(dmu_status(sec.status), m, s, nref);
    }
  }

  DmuResult res;
  res.efficiency = phi;
  set_projection(res, block, lambda);
  if ((maxslack || fixed_zero) && !second_ok) res.flags.emplace_back("second stage failed");
  res.slack_input.resize(static_cast<Eigen::Index>(m));
  res.slack_output.resize(static_cast<Eigen::Index>(s));
  double omega = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const auto spec = input_row(o, i);
    double v = spec.rhs - spec.phi * phi_used - res.target_input(k);
    if (spec.sense == Sense::eq || std::abs(v) < 1e-9) v = std::max(v, 0.0);
    if (std::abs(v) < 1e-12) v = 0.0;
    res.slack_input(k) = v;
    if (spec.slack) omega += o.wi(k) * v;
  }
  for (std::size_t r = 0; r < s; ++r) {
    const auto k = static_cast<Eigen::Index>(r);
    const auto spec = output_row(o, r);
    double v = res.target_output(k) + spec.phi * phi_used - spec.rhs;
    if (spec.sense == Sense::eq || std::abs(v) < 1e-9) v = std::max(v, 0.0);
    if (std::abs(v) < 1e-12) v = 0.0;
    res.slack_output(k) = v;
    if (spec.slack) omega += o.wo(k) * v;
  }
  const double ideal = orientation == Orientation::directional ? 0.0 : 1.0;
  res.classification = classify(phi, ideal, omega);
  res.extra["slack_objective"] = omega;
  return res;
}

}  // namespace deakit::detail
