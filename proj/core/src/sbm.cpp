#include "deakit/sbm.hpp"

#include "internal/common.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace deakit {

namespace {

using detail::RefBlock;

Eigen::Index ix(std::size_t k) { return static_cast<Eigen::Index>(k); }

constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Sum-of-intensity rows against a scaling variable t: L t <= e lambda <= U t.
void add_scaled_rts_rows(LinearProgram& lp, const RtsSpec& rts, std::size_t l0, Eigen::Index n,
                         std::size_t t) {
  const auto lo = rts.lower();
  const auto hi = rts.upper();
  auto row = [&](double c) {
    Eigen::VectorXd r = detail::zero_row(lp);
    r.segment(ix(l0), n).setOnes();
    r(ix(t)) = -c;
    return r;
  };
  if (lo && hi && *lo == *hi) {
    lp.add_row(row(*lo), Sense::eq, 0.0, "rts");
    return;
  }
  if (lo && *lo > 0.0) lp.add_row(row(*lo), Sense::ge, 0.0, "rts_lower");
  if (hi) lp.add_row(row(*hi), Sense::le, 0.0, "rts_upper");
}

}  // namespace

// ---------------------------------------------------------------------------
// Frontier structure

bool is_friends(const DeaData& data, const std::vector<std::size_t>& subset,
                const std::vector<std::size_t>& ref, const RtsSpec& rts) {
  if (subset.empty()) return false;
  const auto m = data.n_inputs(), s = data.n_outputs();
  Eigen::VectorXd cx = Eigen::VectorXd::Zero(ix(m)), cy = Eigen::VectorXd::Zero(ix(s));
  for (auto j : subset) {
    cx += data.input().col(ix(j));
    cy += data.output().col(ix(j));
  }
  cx /= static_cast<double>(subset.size());
  cy /= static_cast<double>(subset.size());
  // Weighted additive test with unit-free weights: optimum 0 iff Pareto efficient.
  const auto block = detail::ref_block(data.input(), data.output(), ref);
  LinearProgram lp(Direction::maximize, 0);
  const auto l0 = detail::add_lambdas(lp, data, ref);
  std::vector<std::size_t> si(m), so(s);
  for (std::size_t i = 0; i < m; ++i) si[i] = lp.add_var("sin", cx(ix(i)) > 0.0 ? 1.0 / cx(ix(i)) : 1.0);
  for (std::size_t r = 0; r < s; ++r) so[r] = lp.add_var("sout", cy(ix(r)) > 0.0 ? 1.0 / cy(ix(r)) : 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    auto row = detail::zero_row(lp);
    detail::put(row, l0, block.X.row(ix(i)));
    row(ix(si[i])) = 1.0;
    lp.add_row(std::move(row), Sense::eq, cx(ix(i)));
  }
  for (std::size_t r = 0; r < s; ++r) {
    auto row = detail::zero_row(lp);
    detail::put(row, l0, block.Y.row(ix(r)));
    row(ix(so[r])) = -1.0;
    lp.add_row(std::move(row), Sense::eq, cy(ix(r)));
  }
  detail::add_rts_rows(lp, rts, l0, block.n());
  const auto sol = solve(lp);
  return sol.optimal() && sol.objective <= 1e-8;
}

namespace {

std::vector<std::size_t> efficient_members(const DeaData& data, const std::vector<std::size_t>& ref,
                                           const RtsSpec& rts) {
  std::vector<std::size_t> eff;
  for (auto j : ref)
    if (is_friends(data, {j}, ref, rts)) eff.push_back(j);
  return eff;
}

}  // namespace

std::vector<std::size_t> extreme_efficient(const DeaData& data, const FrontierOptions& opt) {
  opt.rts.validate();
  const auto ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  auto eff = efficient_members(data, ref, opt.rts);
  // Greedy removal in index order keeps one member of each duplicate group.
  for (std::size_t k = 0; k < eff.size();) {
    std::vector<std::size_t> others;
    for (std::size_t q = 0; q < eff.size(); ++q)
      if (q != k) others.push_back(eff[q]);
    bool representable = false;
    if (!others.empty()) {
      const auto block = detail::ref_block(data.input(), data.output(), others);
      LinearProgram lp(Direction::minimize, 0);
      const auto l0 = detail::add_lambdas(lp, data, others);
      const auto j = ix(eff[k]);
      for (Eigen::Index i = 0; i < block.X.rows(); ++i) {
        auto row = detail::zero_row(lp);
        detail::put(row, l0, block.X.row(i));
        lp.add_row(std::move(row), Sense::eq, data.input()(i, j));
      }
      for (Eigen::Index r = 0; r < block.Y.rows(); ++r) {
        auto row = detail::zero_row(lp);
        detail::put(row, l0, block.Y.row(r));
        lp.add_row(std::move(row), Sense::eq, data.output()(r, j));
      }
      detail::add_rts_rows(lp, opt.rts, l0, block.n());
      representable = solve(lp).optimal();
    }
    if (opt.progress)
      opt.progress("extreme_efficient: " + data.dmunames()[eff[k]] +
                   (representable ? " is a combination of others" : " is extreme"));
    if (representable) eff.erase(eff.begin() + static_cast<std::ptrdiff_t>(k));
    else ++k;
  }
  return eff;
}

FacetSet maximal_friends(const DeaData& data, const FrontierOptions& opt) {
  opt.rts.validate();
  const auto ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  const auto eff = efficient_members(data, ref, opt.rts);
  FacetSet maximal;
  std::vector<std::vector<std::size_t>> level;
  for (auto j : eff) level.push_back({j});
  while (!level.empty()) {
    if (opt.progress)
      opt.progress("maximal_friends: " + std::to_string(level.size()) + " friend sets of size " +
                   std::to_string(level.front().size()));
    const std::set<std::vector<std::size_t>> known(level.begin(), level.end());
    std::vector<std::vector<std::size_t>> next;
    std::set<std::vector<std::size_t>> covered;
    for (std::size_t a = 0; a < level.size(); ++a) {
      for (std::size_t b = a + 1; b < level.size(); ++b) {
        const auto& A = level[a];
        const auto& B = level[b];
        if (!std::equal(A.begin(), A.end() - 1, B.begin())) break;
        auto cand = A;
        cand.push_back(B.back());
        // Every subset one element smaller must already be a friend set.
        bool all = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && all; ++drop) {
          auto sub = cand;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          all = known.count(sub) > 0;
        }
        if (!all || !is_friends(data, cand, ref, opt.rts)) continue;
        covered.insert(A);
        covered.insert(B);
        for (std::size_t drop = 0; drop + 2 < cand.size(); ++drop) {
          auto sub = cand;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          covered.insert(sub);
        }
        next.push_back(std::move(cand));
      }
    }
    for (const auto& f : level)
      if (!covered.count(f)) maximal.push_back(f);
    level = std::move(next);
  }
  std::stable_sort(maximal.begin(), maximal.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return maximal;
}

// ---------------------------------------------------------------------------
// SBM

namespace {

struct SbmSetup {
  Orientation orientation;
  RtsSpec rts;
  std::vector<std::size_t> eval, ref;
  Eigen::MatrixXd wi, wo;  // normalized per DMU
};

struct SbmLayout {
  std::size_t t = npos;  // Charnes-Cooper scale (non-oriented only)
  std::size_t l0 = 0;
  std::vector<std::size_t> s_in, s_out;
};

class SbmModel {
 public:
  SbmModel(const DeaData& d, SbmSetup su) : data_(d), su_(std::move(su)) {
    full_ = detail::ref_block(data_.input(), data_.output(), su_.ref);
  }

  /// Denominator used for the output slack term of row r, or 0 to drop it.
  double output_scale(const Eigen::VectorXd& y, std::size_t r) const {
    const double v = y(ix(r));
    if (v > 0.0) return v;
    double lo = kInf;
    for (Eigen::Index j = 0; j < full_.n(); ++j)
      if (full_.Y(ix(r), j) > 0.0) lo = std::min(lo, full_.Y(ix(r), j));
    return std::isinf(lo) ? 0.0 : lo / 100.0;
  }

  /// Program over the columns `cols` of the reference set (all when empty).
  /// Non-oriented: Charnes-Cooper form of the ratio. io: max phi with
  /// rho_I = 1 - phi. oo: max phi with rho_O = 1 / (1 + phi). `maximize_score`
  /// flips the direction for the facet search.
  LinearProgram build(std::size_t k, const std::vector<std::size_t>& cols, const RefBlock& block,
                      bool maximize_score, SbmLayout* out = nullptr) const {
    const auto j = ix(su_.eval[k]);
    const Eigen::VectorXd x = data_.input().col(j), y = data_.output().col(j);
    const auto m = data_.n_inputs(), s = data_.n_outputs();
    const bool no = su_.orientation == Orientation::none;
    const bool io = su_.orientation == Orientation::input;
    LinearProgram lp(Direction::maximize, 0);
    SbmLayout L;
    if (no) L.t = lp.add_var("t", 1.0);
    L.l0 = detail::add_lambdas(lp, data_, cols);
    L.s_in.assign(m, npos);
    L.s_out.assign(s, npos);
    std::vector<std::pair<std::size_t, double>> denominator;
    for (std::size_t i = 0; i < m; ++i) {
      if (data_.input_kind(i) == VarKind::non_controllable) continue;
      double c = 0.0;
      if ((no || io) && x(ix(i)) > 0.0) c = su_.wi(ix(i), ix(k)) / (static_cast<double>(m) * x(ix(i)));
      L.s_in[i] = lp.add_var("sin_" + data_.input_names()[i], no ? -c : c);
    }
    for (std::size_t r = 0; r < s; ++r) {
      if (data_.output_kind(r) == VarKind::non_controllable) continue;
      double c = 0.0;
      if (!io) {
        const double sc = output_scale(y, r);
        if (sc > 0.0) c = su_.wo(ix(r), ix(k)) / (static_cast<double>(s) * sc);
      }
      L.s_out[r] = lp.add_var("sout_" + data_.output_names()[r], no ? 0.0 : c);
      if (no && c != 0.0) denominator.emplace_back(L.s_out[r], c);
    }
    if (no) {
      // min t - (1/m) sum w S / x, stated as the maximum of its negation.
      lp.objective *= -1.0;
      auto norm = detail::zero_row(lp);
      norm(ix(L.t)) = 1.0;
      for (const auto& [v, c] : denominator) norm(ix(v)) = c;
      lp.add_row(std::move(norm), Sense::eq, 1.0, "normalization");
    }
    // The linear objective is maximised for the min-score problems and
    // minimised for the facet search.
    if (maximize_score) lp.objective *= -1.0;

    for (std::size_t i = 0; i < m; ++i) {
      auto row = detail::zero_row(lp);
      detail::put(row, L.l0, block.X.row(ix(i)));
      const auto kd = data_.input_kind(i);
      if (L.s_in[i] != npos) row(ix(L.s_in[i])) = kd == VarKind::undesirable ? -1.0 : 1.0;
      if (no) {
        row(ix(L.t)) = -x(ix(i));
        lp.add_row(std::move(row), Sense::eq, 0.0, data_.input_names()[i]);
      } else {
        lp.add_row(std::move(row), Sense::eq, x(ix(i)), data_.input_names()[i]);
      }
    }
    for (std::size_t r = 0; r < s; ++r) {
      auto row = detail::zero_row(lp);
      detail::put(row, L.l0, block.Y.row(ix(r)));
      const auto kd = data_.output_kind(r);
      if (L.s_out[r] != npos) row(ix(L.s_out[r])) = kd == VarKind::undesirable ? 1.0 : -1.0;
      if (no) {
        row(ix(L.t)) = -y(ix(r));
        lp.add_row(std::move(row), Sense::eq, 0.0, data_.output_names()[r]);
      } else {
        lp.add_row(std::move(row), Sense::eq, y(ix(r)), data_.output_names()[r]);
      }
    }
    if (no) add_scaled_rts_rows(lp, su_.rts, L.l0, block.n(), L.t);
    else detail::add_rts_rows(lp, su_.rts, L.l0, block.n());
    if (out) *out = L;
    return lp;
  }

  /// Score from the linear objective value.
  double score(double objective, bool maximize_score) const {
    const double v = maximize_score ? -objective : objective;
    switch (su_.orientation) {
      case Orientation::input: return 1.0 - v;
      case Orientation::output: return 1.0 / (1.0 + v);
      default: return -v;
    }
  }

  DmuResult finish(std::size_t k, const LpSolution& sol, const SbmLayout& L, const RefBlock& block,
                   bool maximize_score) const {
    const auto m = data_.n_inputs(), s = data_.n_outputs();
    double t = 1.0;
    if (L.t != npos) {
      t = sol.x(ix(L.t));
      if (!(t > 1e-12))
        return detail::failed(DmuStatus::numerical, m, s, block.n(), "degenerate scaling variable");
    }
    DmuResult r;
    r.efficiency = score(sol.objective, maximize_score);
    detail::set_projection(r, block, sol.x.segment(ix(L.l0), block.n()) / t);
    r.slack_input = Eigen::VectorXd::Zero(ix(m));
    r.slack_output = Eigen::VectorXd::Zero(ix(s));
    for (std::size_t i = 0; i < m; ++i)
      if (L.s_in[i] != npos) r.slack_input(ix(i)) = std::max(0.0, sol.x(ix(L.s_in[i])) / t);
    for (std::size_t q = 0; q < s; ++q)
      if (L.s_out[q] != npos) r.slack_output(ix(q)) = std::max(0.0, sol.x(ix(L.s_out[q])) / t);
    const double total = r.slack_input.sum() + r.slack_output.sum();
    if (std::abs(r.efficiency - 1.0) > kEfficiencyTol) r.classification = Classification::inefficient;
    else r.classification = total <= kEfficiencyTol ? Classification::efficient : Classification::weakly_efficient;
    if (r.efficiency < 0.0) r.flags.emplace_back("negative efficiency score (good inputs)");
    return r;
  }

  DmuResult solve(std::size_t k) const {
    const auto m = data_.n_inputs(), s = data_.n_outputs();
    const auto j = ix(su_.eval[k]);
    if (su_.orientation == Orientation::none && data_.input().col(j).isZero(0.0))
      return detail::failed(DmuStatus::degenerate, m, s, full_.n(), "all inputs are zero");
    SbmLayout L;
    const auto lp = build(k, su_.ref, full_, false, &L);
    const auto sol = deakit::solve(lp);
    if (!sol.optimal()) return detail::failed(detail::dmu_status(sol.status), m, s, full_.n());
    return finish(k, sol, L, full_, false);
  }

  DmuResult solve_kaizen(std::size_t k, const FacetSet& facets, const std::vector<RefBlock>& blocks) const {
    const auto m = data_.n_inputs(), s = data_.n_outputs();
    const auto j = ix(su_.eval[k]);
    if (su_.orientation == Orientation::none && data_.input().col(j).isZero(0.0))
      return detail::failed(DmuStatus::degenerate, m, s, full_.n(), "all inputs are zero");
    std::optional<DmuResult> best;
    std::size_t best_f = 0;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      SbmLayout L;
      const auto lp = build(k, facets[f], blocks[f], true, &L);
      const auto sol = deakit::solve(lp);
      if (!sol.optimal()) continue;
      auto r = finish(k, sol, L, blocks[f], true);
      if (!r.ok()) continue;
      if (!best || r.efficiency > best->efficiency + 1e-9) {
        best = std::move(r);
        best_f = f;
      }
    }
    if (!best)
      return detail::failed(DmuStatus::infeasible, m, s, full_.n(), "no facet dominates the DMU");
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(full_.n());
    for (std::size_t q = 0; q < facets[best_f].size(); ++q) {
      const auto it = std::find(su_.ref.begin(), su_.ref.end(), facets[best_f][q]);
      if (it == su_.ref.end()) throw DeaError("maxfr: facet DMU outside dmu_ref");
      lambda(ix(static_cast<std::size_t>(it - su_.ref.begin()))) = best->lambda(ix(q));
    }
    best->lambda = lambda;
    best->extra["facet"] = static_cast<double>(best_f);
    return *best;
  }

  const SbmSetup& setup() const { return su_; }
  const RefBlock& full() const { return full_; }

 private:
  const DeaData& data_;
  SbmSetup su_;
  RefBlock full_;
};

SbmSetup sbm_setup(const DeaData& data, const SbmOptions& opt) {
  if (opt.orientation == Orientation::directional)
    throw DeaError("model_sbmeff: orientation must be no, io or oo");
  opt.rts.validate();
  if (opt.kaizen && opt.rts.kind != RtsKind::crs && opt.rts.kind != RtsKind::vrs)
    throw DeaError("model_sbmeff: kaizen requires crs or vrs");
  SbmSetup su{opt.orientation, opt.rts, {}, {}, {}, {}};
  su.eval = detail::resolve_set(opt.dmu_eval, data.n_dmus(), "dmu_eval");
  su.ref = detail::resolve_set(opt.dmu_ref, data.n_dmus(), "dmu_ref");
  const auto ne = ix(su.eval.size());
  const auto m = ix(data.n_inputs()), s = ix(data.n_outputs());
  su.wi = opt.weight_input.resolve(m, ne, "weight_input");
  su.wo = opt.weight_output.resolve(s, ne, "weight_output");
  for (Eigen::Index k = 0; k < ne; ++k) {
    if (su.wi.col(k).minCoeff() <= 0.0 || su.wo.col(k).minCoeff() <= 0.0)
      throw DeaError("model_sbmeff: weights must be positive");
    su.wi.col(k) *= static_cast<double>(m) / su.wi.col(k).sum();
    su.wo.col(k) *= static_cast<double>(s) / su.wo.col(k).sum();
  }
  return su;
}

}  // namespace

DeaResult model_sbmeff(const DeaData& data, const SbmOptions& opt) {
  SbmModel model(data, sbm_setup(data, opt));
  const auto& su = model.setup();
  DeaResult res;
  res.modelname = "sbmeff";
  res.orientation = opt.orientation;
  res.rts = opt.rts;
  res.data = detail::share(data);
  res.dmu_eval = su.eval;
  res.dmu_ref = su.ref;
  res.facets = {true, true, true, false};
  if (opt.rts.kind == RtsKind::grs) {
    res.parameters["L"] = opt.rts.L;
    res.parameters["U"] = opt.rts.U;
  }
  res.parameters["kaizen"] = opt.kaizen ? 1.0 : 0.0;
  res.parameter_matrices["weight_input"] = su.wi;
  res.parameter_matrices["weight_output"] = su.wo;
  if (data.special().has_undesirable())
    res.notes.emplace_back("undesirable variables: good inputs can produce negative scores");
  if (!opt.kaizen) {
    for (std::size_t k = 0; k < su.eval.size(); ++k) res.dmus.push_back(model.solve(k));
    return res;
  }
  res.notes.emplace_back("kaizen (SBM-Max) scores can be non-monotonic");
  const FacetSet facets = opt.maxfr ? *opt.maxfr : maximal_friends(data, FrontierOptions{opt.rts, su.ref, nullptr});
  std::vector<RefBlock> blocks;
  for (const auto& f : facets) {
    if (f.empty()) throw DeaError("maxfr: empty facet");
    for (auto j : f)
      if (j >= data.n_dmus()) throw DeaError("maxfr: DMU index out of range");
    blocks.push_back(detail::ref_block(data.input(), data.output(), f));
  }
  for (std::size_t k = 0; k < su.eval.size(); ++k) res.dmus.push_back(model.solve_kaizen(k, facets, blocks));
  return res;
}

std::vector<LinearProgram> model_sbmeff_lp(const DeaData& data, const SbmOptions& opt) {
  SbmModel model(data, sbm_setup(data, opt));
  const auto& su = model.setup();
  std::vector<LinearProgram> out;
  if (!opt.kaizen) {
    for (std::size_t k = 0; k < su.eval.size(); ++k) out.push_back(model.build(k, su.ref, model.full(), false));
    return out;
  }
  const FacetSet facets = opt.maxfr ? *opt.maxfr : maximal_friends(data, FrontierOptions{opt.rts, su.ref, nullptr});
  for (std::size_t k = 0; k < su.eval.size(); ++k)
    for (const auto& f : facets)
      out.push_back(model.build(k, f, detail::ref_block(data.input(), data.output(), f), true));
  return out;
}

}  // namespace deakit
