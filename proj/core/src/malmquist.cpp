#include "deakit/malmquist.hpp"

#include "internal/common.hpp"

#include <cmath>
#include <numeric>

namespace deakit {

std::string_view to_string(FrontierType t) {
  switch (t) {
    case FrontierType::contemporary: return "cont";
    case FrontierType::sequential: return "seq";
    case FrontierType::global: return "glob";
  }
  return "?";
}

std::string_view to_string(MalmquistType t) {
  switch (t) {
    case MalmquistType::fgnz: return "fgnz";
    case MalmquistType::rd: return "rd";
    case MalmquistType::gl: return "gl";
    case MalmquistType::bias: return "bias";
  }
  return "?";
}

FrontierType parse_frontier_type(std::string_view s) {
  if (s == "cont") return FrontierType::contemporary;
  if (s == "seq") return FrontierType::sequential;
  if (s == "glob") return FrontierType::global;
  throw DeaError("type1: expected cont, seq or glob, got '" + std::string(s) + "'");
}

MalmquistType parse_malmquist_type(std::string_view s) {
  if (s == "fgnz") return MalmquistType::fgnz;
  if (s == "rd") return MalmquistType::rd;
  if (s == "gl") return MalmquistType::gl;
  if (s == "bias") return MalmquistType::bias;
  throw DeaError("type2: expected fgnz, rd, gl or bias, got '" + std::string(s) + "'");
}

double malmquist_distance(const MalmquistSeries& series, const std::vector<std::size_t>& periods,
                          const std::vector<std::size_t>& dmu_ref, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, Orientation orientation, RtsKind rts) {
  if (orientation != Orientation::input && orientation != Orientation::output)
    throw DeaError("malmquist: orientation must be io or oo");
  if (rts != RtsKind::crs && rts != RtsKind::vrs) throw DeaError("malmquist: rts must be crs or vrs");
  const bool io = orientation == Orientation::input;
  const auto& d0 = series[0];
  const auto m = static_cast<Eigen::Index>(d0.n_inputs());
  const auto s = static_cast<Eigen::Index>(d0.n_outputs());
  const auto ncol = static_cast<Eigen::Index>(periods.size() * dmu_ref.size());
  Eigen::MatrixXd X(m, ncol), Y(s, ncol);
  Eigen::Index c = 0;
  for (auto t : periods)
    for (auto j : dmu_ref) {
      X.col(c) = series[t].input().col(static_cast<Eigen::Index>(j));
      Y.col(c) = series[t].output().col(static_cast<Eigen::Index>(j));
      ++c;
    }
  LinearProgram lp(io ? Direction::minimize : Direction::maximize, 0);
  const auto phi = lp.add_var(io ? "theta" : "eta", 1.0, VarBound::free());
  const auto l0 = lp.n_vars();
  for (Eigen::Index j = 0; j < ncol; ++j) lp.add_var("lambda" + std::to_string(j + 1));
  for (Eigen::Index i = 0; i < m; ++i) {
    auto row = detail::zero_row(lp);
    row.segment(static_cast<Eigen::Index>(l0), ncol) = X.row(i).transpose();
    if (io) row(static_cast<Eigen::Index>(phi)) = -x(i);
    lp.add_row(std::move(row), Sense::le, io ? 0.0 : x(i));
  }
  for (Eigen::Index r = 0; r < s; ++r) {
    auto row = detail::zero_row(lp);
    row.segment(static_cast<Eigen::Index>(l0), ncol) = Y.row(r).transpose();
    if (!io) row(static_cast<Eigen::Index>(phi)) = -y(r);
    lp.add_row(std::move(row), Sense::ge, io ? y(r) : 0.0);
  }
  detail::add_rts_rows(lp, rts == RtsKind::vrs ? RtsSpec::vrs() : RtsSpec::crs(), l0, ncol);
  const auto sol = solve(lp);
  if (!sol.optimal()) return NA;
  if (io) return sol.objective;
  return sol.objective > 0.0 ? 1.0 / sol.objective : NA;
}

namespace {

/// Distance tables of one returns-to-scale regime.
struct Tables {
  Eigen::MatrixXd eff, t_t1, t1_t, t_xt1, t1_xt1, glob;
};

}  // namespace

MalmquistResult malmquist_index(const MalmquistSeries& series, const MalmquistOptions& opt) {
  if (opt.orientation != Orientation::input && opt.orientation != Orientation::output)
    throw DeaError("malmquist_index: orientation must be io or oo");
  if (opt.rts != RtsKind::crs && opt.rts != RtsKind::vrs)
    throw DeaError("malmquist_index: rts must be crs or vrs");
  const bool glob = opt.type1 == FrontierType::global;
  if (!glob && (opt.type2 == MalmquistType::rd || opt.type2 == MalmquistType::gl) && opt.rts != RtsKind::vrs)
    throw DeaError("malmquist_index: type2 = " + std::string(to_string(opt.type2)) +
                   " requires rts = vrs (got crs)");
  for (const auto& p : series.periods())
    if (p.special().any()) throw DeaError("malmquist_index: nc/nd/ud variables are not supported");
  const auto& d0 = series[0];
  MalmquistResult res;
  res.options = opt;
  res.options.dmu_eval = detail::resolve_set(opt.dmu_eval, d0.n_dmus(), "dmu_eval");
  res.options.dmu_ref = detail::resolve_set(opt.dmu_ref, d0.n_dmus(), "dmu_ref");
  const auto& eval = res.options.dmu_eval;
  const auto& ref = res.options.dmu_ref;
  for (auto j : eval) res.dmunames.push_back(d0.dmunames()[j]);
  res.period_names = series.period_names();
  if (glob && opt.type2 != MalmquistType::fgnz) res.notes.emplace_back("type2 is ignored with type1 = glob");

  const auto T = series.size();
  const auto ne = static_cast<Eigen::Index>(eval.size());
  const auto T1 = static_cast<Eigen::Index>(T - 1);
  auto frontier = [&](std::size_t t) {
    std::vector<std::size_t> p;
    if (opt.type1 == FrontierType::sequential)
      for (std::size_t q = 0; q <= t; ++q) p.push_back(q);
    else p.push_back(t);
    return p;
  };
  std::vector<std::size_t> all(T);
  std::iota(all.begin(), all.end(), std::size_t{0});

  auto tables = [&](RtsKind rts) {
    Tables tb;
    tb.eff.resize(ne, static_cast<Eigen::Index>(T));
    tb.glob.resize(ne, static_cast<Eigen::Index>(T));
    tb.t_t1.resize(ne, T1);
    tb.t1_t.resize(ne, T1);
    tb.t_xt1.resize(ne, T1);
    tb.t1_xt1.resize(ne, T1);
    for (Eigen::Index k = 0; k < ne; ++k) {
      const auto j = static_cast<Eigen::Index>(eval[static_cast<std::size_t>(k)]);
      auto D = [&](const std::vector<std::size_t>& F, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return malmquist_distance(series, F, ref, x, y, opt.orientation, rts);
      };
      for (std::size_t t = 0; t < T; ++t) {
        const Eigen::VectorXd x = series[t].input().col(j), y = series[t].output().col(j);
        tb.eff(k, static_cast<Eigen::Index>(t)) = D(frontier(t), x, y);
        tb.glob(k, static_cast<Eigen::Index>(t)) = D(all, x, y);
      }
      for (std::size_t t = 0; t + 1 < T; ++t) {
        const auto c = static_cast<Eigen::Index>(t);
        const Eigen::VectorXd x0 = series[t].input().col(j), y0 = series[t].output().col(j);
        const Eigen::VectorXd x1 = series[t + 1].input().col(j), y1 = series[t + 1].output().col(j);
        tb.t_t1(k, c) = D(frontier(t), x1, y1);
        tb.t1_t(k, c) = D(frontier(t + 1), x0, y0);
        tb.t_xt1(k, c) = D(frontier(t), x1, y0);
        tb.t1_xt1(k, c) = D(frontier(t + 1), x1, y0);
      }
    }
    return tb;
  };
  const Tables C = tables(RtsKind::crs);
  const Tables V = tables(RtsKind::vrs);
  for (const auto& [suffix, tb] : {std::pair<std::string, const Tables*>{"crs", &C}, {"vrs", &V}}) {
    res.eff_all["efficiency." + suffix] = tb->eff;
    res.eff_all["efficiency_t_t1." + suffix] = tb->t_t1;
    res.eff_all["efficiency_t1_t." + suffix] = tb->t1_t;
    res.eff_all["efficiency_t_xt1." + suffix] = tb->t_xt1;
    res.eff_all["efficiency_t1_xt1." + suffix] = tb->t1_xt1;
    res.eff_all["efficiency.glob." + suffix] = tb->glob;
  }

  auto e0 = [](const Tables& tb) { return tb.eff.leftCols(tb.eff.cols() - 1).array().eval(); };
  auto e1 = [](const Tables& tb) { return tb.eff.rightCols(tb.eff.cols() - 1).array().eval(); };
  auto g0 = [](const Tables& tb) { return tb.glob.leftCols(tb.glob.cols() - 1).array().eval(); };
  auto g1 = [](const Tables& tb) { return tb.glob.rightCols(tb.glob.cols() - 1).array().eval(); };
  using A = Eigen::ArrayXXd;
  auto put = [&](const char* name, const A& v) { res.indices[name] = v.matrix(); };

  const A pech = e1(V) / e0(V);
  const A sech = (e1(C) * e0(V)) / (e0(C) * e1(V));
  const A sech2 = (C.t_t1.array() * e0(V)) / (e0(C) * V.t_t1.array());
  const A ec = e1(C) / e0(C);
  const bool vrs = opt.rts == RtsKind::vrs;

  if (glob) {
    const Tables& B = vrs ? V : C;
    const A tc = (e0(B) * g1(B)) / (e1(B) * g0(B));
    put("tc", tc);
    if (vrs) {
      put("pech", pech);
      put("sech", sech2);
      put("mi", tc * pech * sech2);
    } else {
      put("ec", ec);
      put("mi", tc * ec);
    }
    return res;
  }
  switch (opt.type2) {
    case MalmquistType::fgnz: {
      const A mi = ((C.t_t1.array() * e1(C)) / (e0(C) * C.t1_t.array())).sqrt();
      const A tc = ((C.t_t1.array() * e0(C)) / (e1(C) * C.t1_t.array())).sqrt();
      put("mi", mi);
      put("tc", tc);
      if (vrs) {
        put("pech", pech);
        put("sech", sech);
      } else {
        put("ec", ec);
      }
      break;
    }
    case MalmquistType::rd: {
      const A tc = V.t_t1.array() / e1(V);
      put("mi", C.t_t1.array() / e0(C));
      put("tc", tc);
      put("pech", pech);
      put("sech", sech2);
      break;
    }
    case MalmquistType::gl: {
      const A tc = V.t_t1.array() / e1(V);
      const A sech3 = (C.t_xt1.array() * e0(V)) / (e0(C) * V.t_xt1.array());
      put("mi", tc * pech * sech3);
      put("tc", tc);
      put("pech", pech);
      put("sech", sech3);
      break;
    }
    case MalmquistType::bias: {
      const Tables& B = vrs && opt.tc_vrs ? V : C;
      const A matech = e0(B) / B.t1_t.array();
      const A obtech = ((B.t_t1.array() * B.t1_xt1.array()) / (e1(B) * B.t_xt1.array())).sqrt();
      const A ibtech = ((B.t1_t.array() * B.t_xt1.array()) / (e0(B) * B.t1_xt1.array())).sqrt();
      const A tc = matech * obtech * ibtech;
      put("matech", matech);
      put("obtech", obtech);
      put("ibtech", ibtech);
      put("tc", tc);
      if (vrs) {
        put("pech", pech);
        put("sech", sech);
        put("mi", tc * pech * sech);
      } else {
        put("ec", ec);
        put("mi", tc * ec);
      }
      break;
    }
  }
  return res;
}

}  // namespace deakit
