#include "deakit/cross.hpp"

#include "internal/common.hpp"
#include "internal/multiplier_core.hpp"

#include <cmath>

namespace deakit {

namespace {

using detail::MultiplierLayout;

Eigen::Index ix(std::size_t k) { return static_cast<Eigen::Index>(k); }

constexpr double kAutoBound = 1e6;

struct Weights {
  Eigen::VectorXd v, u;
  double xi_l = 0.0, xi_u = 0.0;
};

class CrossModel {
 public:
  CrossModel(const DeaData& d, const CrossOptions& opt, std::vector<std::size_t> eval,
             std::vector<std::size_t> ref)
      : data_(d), opt_(opt), eval_(std::move(eval)), ref_(std::move(ref)) {
    block_ = detail::ref_block(data_.input(), data_.output(), ref_);
    io_ = opt_.orientation == Orientation::input;
    const auto m = ix(data_.n_inputs()), s = ix(data_.n_outputs());
    sum_x_.setZero(m);
    sum_y_.setZero(s);
    for (auto j : eval_) {
      sum_x_ += data_.input().col(ix(j));
      sum_y_ += data_.output().col(ix(j));
    }
  }

  /// E_ok for weights w of o applied to rated DMU k.
  double ratio(const Weights& w, std::size_t k) const {
    const auto j = ix(eval_[k]);
    const double vx = w.v.dot(data_.input().col(j));
    const double uy = w.u.dot(data_.output().col(j));
    const double xi = lower() * w.xi_l + upper() * w.xi_u;
    double num = 0.0, den = 0.0;
    if (opt_.correction) {
      num = uy;
      den = vx - xi;
    } else if (io_) {
      num = uy + xi;
      den = vx;
    } else {
      num = vx + xi;
      den = uy;
    }
    return den != 0.0 ? num / den : NA;
  }

  /// Arbitrary weights: the multiplier optimum of DMU o.
  std::optional<Weights> arbitrary(std::size_t o, double& score) const {
    const auto j = ix(eval_[o]);
    MultiplierLayout L;
    const auto lp = detail::multiplier_program(data_, block_, opt_.orientation, opt_.rts, opt_.epsilon,
                                               data_.input().col(j), data_.output().col(j), &L);
    const auto sol = solve(lp);
    if (!sol.optimal()) return std::nullopt;
    score = sol.objective;
    return read(L, sol.x);
  }

  /// Method II (third = false) or III (third = true) secondary goal.
  std::optional<Weights> secondary(std::size_t o, double e_oo, bool third, bool benevolent,
                                   std::vector<std::string>& flags) const {
    auto build = [&](bool bounded) {
      const auto j = ix(eval_[o]);
      const Eigen::VectorXd xo = data_.input().col(j), yo = data_.output().col(j);
      const Eigen::VectorXd sx = sum_x_ - xo, sy = sum_y_ - yo;
      const double n1 = static_cast<double>(eval_.size()) - 1.0;
      // Aggressive io minimises the rated DMUs' scores; aggressive oo maximises.
      const bool minimize = io_ != benevolent;
      LinearProgram lp(minimize ? Direction::minimize : Direction::maximize, 0);
      const auto L = detail::add_multiplier_vars(lp, data_, opt_.orientation, opt_.rts, opt_.epsilon);
      auto& own_w = io_ ? sx : sy;    // normalised side
      auto& other_w = io_ ? sy : sx;  // scored side
      for (std::size_t q = 0; q < (io_ ? L.s : L.m); ++q)
        lp.objective(ix(io_ ? L.u(q) : L.v(q))) = other_w(ix(q));
      if (!third)
        for (std::size_t q = 0; q < (io_ ? L.m : L.s); ++q)
          lp.objective(ix(io_ ? L.v(q) : L.u(q))) = -own_w(ix(q));
      const bool corrected_m3 = third && opt_.correction;
      if (L.xi_lower) lp.objective(ix(*L.xi_lower)) = corrected_m3 ? 0.0 : n1 * lower();
      if (L.xi_upper) lp.objective(ix(*L.xi_upper)) = corrected_m3 ? 0.0 : n1 * upper();

      auto norm = detail::zero_row(lp);
      for (std::size_t q = 0; q < (io_ ? L.m : L.s); ++q)
        norm(ix(io_ ? L.v(q) : L.u(q))) = third ? own_w(ix(q)) : (io_ ? xo : yo)(ix(q));
      if (corrected_m3) {
        if (L.xi_lower) norm(ix(*L.xi_lower)) = -n1 * lower();
        if (L.xi_upper) norm(ix(*L.xi_upper)) = -n1 * upper();
      }
      lp.add_row(std::move(norm), Sense::eq, 1.0, "normalization");
      for (Eigen::Index c = 0; c < block_.n(); ++c)
        lp.add_row(detail::multiplier_row(lp, L, opt_.orientation, block_.X.col(c), block_.Y.col(c)),
                   io_ ? Sense::le : Sense::ge, 0.0);
      // Keep the self-evaluation at its optimum.
      auto keep = detail::zero_row(lp);
      for (std::size_t q = 0; q < (io_ ? L.s : L.m); ++q)
        keep(ix(io_ ? L.u(q) : L.v(q))) = (io_ ? yo : xo)(ix(q));
      if (L.xi_lower) keep(ix(*L.xi_lower)) = lower();
      if (L.xi_upper) keep(ix(*L.xi_upper)) = upper();
      if (third) {
        for (std::size_t q = 0; q < (io_ ? L.m : L.s); ++q)
          keep(ix(io_ ? L.v(q) : L.u(q))) = -e_oo * (io_ ? xo : yo)(ix(q));
        lp.add_row(std::move(keep), Sense::eq, 0.0, "self_efficiency");
      } else {
        lp.add_row(std::move(keep), Sense::eq, e_oo, "self_efficiency");
      }
      if (bounded)
        for (auto& b : lp.bounds) {
          b.lo = std::max(b.lo, -kAutoBound);
          b.hi = std::min(b.hi, kAutoBound);
        }
      return std::make_pair(lp, L);
    };
    auto [lp, L] = build(false);
    auto sol = solve(lp);
    if (sol.status == LpStatus::unbounded) {
      auto [lpb, Lb] = build(true);
      sol = solve(lpb);
      L = Lb;
      flags.emplace_back("unbounded program: multipliers bounded at " + std::to_string(kAutoBound));
    }
    if (!sol.optimal()) {
      flags.emplace_back(std::string("secondary program ") + std::string(to_string(sol.status)));
      return std::nullopt;
    }
    return read(L, sol.x);
  }

  CrossMethod assemble(const std::vector<std::optional<Weights>>& w,
                       std::vector<std::vector<std::string>> flags) const {
    const auto n = ix(eval_.size());
    CrossMethod cm;
    cm.multiplier_input = Eigen::MatrixXd::Constant(n, ix(data_.n_inputs()), NA);
    cm.multiplier_output = Eigen::MatrixXd::Constant(n, ix(data_.n_outputs()), NA);
    cm.multiplier_rts = Eigen::MatrixXd::Constant(n, 2, NA);
    cm.cross_eff = Eigen::MatrixXd::Constant(n, n, NA);
    for (Eigen::Index o = 0; o < n; ++o) {
      const auto& wo = w[static_cast<std::size_t>(o)];
      if (!wo) continue;
      cm.multiplier_input.row(o) = wo->v.transpose();
      cm.multiplier_output.row(o) = wo->u.transpose();
      cm.multiplier_rts(o, 0) = wo->xi_l;
      cm.multiplier_rts(o, 1) = wo->xi_u;
      for (Eigen::Index k = 0; k < n; ++k) cm.cross_eff(o, k) = ratio(*wo, static_cast<std::size_t>(k));
    }
    cm.flags = std::move(flags);
    cross_aggregates(cm, opt_.selfapp);
    return cm;
  }

  std::size_t n() const { return eval_.size(); }

 private:
  double lower() const { return opt_.rts.lower().value_or(0.0); }
  double upper() const { return opt_.rts.upper().value_or(0.0); }

  static Weights read(const MultiplierLayout& L, const Eigen::VectorXd& x) {
    const auto mu = detail::read_multipliers(L, x);
    return Weights{mu.input, mu.output, mu.rts_lower, mu.rts_upper};
  }

  const DeaData& data_;
  const CrossOptions& opt_;
  std::vector<std::size_t> eval_, ref_;
  detail::RefBlock block_;
  bool io_ = true;
  Eigen::VectorXd sum_x_, sum_y_;
};

}  // namespace

void cross_aggregates(CrossMethod& m, bool selfapp) {
  const auto n = m.cross_eff.rows();
  m.e = Eigen::VectorXd::Constant(n, NA);
  m.A = Eigen::VectorXd::Constant(m.cross_eff.rows(), NA);
  m.maverick = Eigen::VectorXd::Constant(n, NA);
  auto mean = [&](auto&& get, Eigen::Index len, Eigen::Index skip) {
    double sum = 0.0;
    int cnt = 0;
    for (Eigen::Index q = 0; q < len; ++q) {
      if (q == skip) continue;
      const double v = get(q);
      if (is_na(v)) continue;
      sum += v;
      ++cnt;
    }
    return cnt ? sum / cnt : NA;
  };
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index skip = selfapp ? -1 : k;
    m.e(k) = mean([&](Eigen::Index o) { return m.cross_eff(o, k); }, n, skip);
    m.A(k) = mean([&](Eigen::Index q) { return m.cross_eff(k, q); }, n, skip);
    const double ekk = m.cross_eff(k, k);
    if (!is_na(m.e(k)) && m.e(k) != 0.0 && !is_na(ekk)) m.maverick(k) = (ekk - m.e(k)) / m.e(k);
  }
}

CrossEffResult cross_efficiency(const DeaData& data, const CrossOptions& opt) {
  if (opt.orientation != Orientation::input && opt.orientation != Orientation::output)
    throw DeaError("cross_efficiency: orientation must be io or oo");
  if (!(opt.epsilon >= 0.0)) throw DeaError("epsilon: must be nonnegative");
  if (data.special().any()) throw DeaError("cross_efficiency: nc/nd/ud variables are not supported");
  opt.rts.validate();
  if (opt.correction &&
      (opt.orientation != Orientation::input ||
       (opt.rts.kind != RtsKind::vrs && opt.rts.kind != RtsKind::nirs && opt.rts.kind != RtsKind::grs)))
    throw DeaError("cross_efficiency: correction applies to io models with vrs, nirs or grs");
  CrossEffResult res;
  res.orientation = opt.orientation;
  res.rts = opt.rts;
  res.epsilon = opt.epsilon;
  res.selfapp = opt.selfapp;
  res.correction = opt.correction;
  res.data = detail::share(data);
  res.dmu_eval = detail::resolve_set(opt.dmu_eval, data.n_dmus(), "dmu_eval");
  res.dmu_ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  CrossModel model(data, opt, res.dmu_eval, res.dmu_ref);
  const auto n = model.n();
  res.efficiency = Eigen::VectorXd::Constant(ix(n), NA);
  std::vector<std::optional<Weights>> arb(n);
  std::vector<std::vector<std::string>> arb_flags(n);
  for (std::size_t o = 0; o < n; ++o) {
    double score = NA;
    arb[o] = model.arbitrary(o, score);
    if (!arb[o]) arb_flags[o].emplace_back("multiplier program not optimal");
    res.efficiency(ix(o)) = score;
  }
  res.arbitrary = model.assemble(arb, arb_flags);
  auto secondary = [&](bool third, bool benevolent) {
    std::vector<std::optional<Weights>> w(n);
    std::vector<std::vector<std::string>> flags(n);
    for (std::size_t o = 0; o < n; ++o)
      if (arb[o]) w[o] = model.secondary(o, res.efficiency(ix(o)), third, benevolent, flags[o]);
    return model.assemble(w, flags);
  };
  if (opt.M2) {
    res.m2_agg = secondary(false, false);
    res.m2_ben = secondary(false, true);
  }
  if (opt.M3) {
    res.m3_agg = secondary(true, false);
    res.m3_ben = secondary(true, true);
  }
  return res;
}

}  // namespace deakit
