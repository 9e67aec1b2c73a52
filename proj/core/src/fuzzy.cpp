#include "deakit/fuzzy.hpp"

#include "internal/common.hpp"

#include <cmath>

namespace deakit {

AlphaCutData alpha_cut(const FuzzyDeaData& f, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DeaError("alpha: must lie in [0, 1]");
  AlphaCutData a;
  a.alpha = alpha;
  const double w = 1.0 - alpha;
  a.input_lower = f.input().mL - w * f.input().dL;
  a.input_upper = f.input().mR + w * f.input().dR;
  a.output_lower = f.output().mL - w * f.output().dL;
  a.output_upper = f.output().mR + w * f.output().dR;
  return a;
}

std::vector<double> alpha_grid(std::size_t n) {
  if (n < 2) throw DeaError("alpha: a level count must exceed 1");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

SubmodelOptions default_submodel_options(const std::string& name) {
  if (name == "basic" || name == "fdh" || name == "supereff") return BasicOptions{};
  if (name == "rdm") return RdmOptions{};
  if (name == "multiplier") return MultiplierOptions{};
  if (name == "nonradial") return NonradialOptions{};
  if (name == "deaps") return DeapsOptions{};
  if (name == "additive") return AdditiveOptions{};
  if (name == "profit") return ProfitOptions{};
  if (name == "sbmeff") return SbmOptions{};
  if (name == "sbmsupereff") return SbmSupereffOptions{};
  if (name == "addsupereff") return AddSupereffOptions{};
  throw DeaError("kaoliu_modelname: unknown model '" + name + "'");
}

namespace {

template <class Opt>
const Opt& as(const SubmodelOptions& v, const std::string& name) {
  if (const auto* p = std::get_if<Opt>(&v)) return *p;
  throw DeaError("submodel options do not match model '" + name + "'");
}

Orientation orientation_of(const SubmodelOptions& v) {
  return std::visit(
      [](const auto& o) {
        if constexpr (std::is_same_v<std::decay_t<decltype(o)>, ProfitOptions>) return Orientation::none;
        else return o.orientation;
      },
      v);
}

}  // namespace

DeaResult run_submodel(const std::string& name, const DeaData& data, SubmodelOptions opt,
                       const std::vector<std::size_t>& dmu_eval, const std::vector<std::size_t>& dmu_ref) {
  std::visit(
      [&](auto& o) {
        o.dmu_eval = dmu_eval;
        o.dmu_ref = dmu_ref;
      },
      opt);
  if (name == "basic") return model_basic(data, as<BasicOptions>(opt, name));
  if (name == "fdh") return model_fdh(data, as<BasicOptions>(opt, name));
  if (name == "supereff") return model_supereff(data, as<BasicOptions>(opt, name));
  if (name == "rdm") return model_rdm(data, as<RdmOptions>(opt, name));
  if (name == "multiplier") return model_multiplier(data, as<MultiplierOptions>(opt, name));
  if (name == "nonradial") return model_nonradial(data, as<NonradialOptions>(opt, name));
  if (name == "deaps") return model_deaps(data, as<DeapsOptions>(opt, name));
  if (name == "additive") return model_additive(data, as<AdditiveOptions>(opt, name));
  if (name == "profit") return model_profit(data, as<ProfitOptions>(opt, name));
  if (name == "sbmeff") return model_sbmeff(data, as<SbmOptions>(opt, name));
  if (name == "sbmsupereff") return model_sbmsupereff(data, as<SbmSupereffOptions>(opt, name));
  if (name == "addsupereff") return model_addsupereff(data, as<AddSupereffOptions>(opt, name));
  throw DeaError("kaoliu_modelname: unknown model '" + name + "'");
}

FuzzyDeaResult modelfuzzy_kaoliu(const FuzzyDeaData& f, const KaoliuOptions& opt) {
  const SubmodelOptions sub = opt.submodel_options ? *opt.submodel_options : default_submodel_options(opt.submodel);
  if (opt.alpha.empty()) throw DeaError("alpha: at least one level required");
  for (double a : opt.alpha)
    if (!(a >= 0.0 && a <= 1.0)) throw DeaError("alpha: must lie in [0, 1]");
  FuzzyDeaResult res;
  res.submodel = opt.submodel;
  res.orientation = orientation_of(sub);
  res.data = std::make_shared<const FuzzyDeaData>(f);
  res.dmu_eval = detail::resolve_set(opt.dmu_eval, f.n_dmus(), "dmu_eval");
  res.dmu_ref = detail::resolve_set(opt.dmu_ref, f.n_dmus(), "dmu_ref");

  const auto m = f.n_inputs(), s = f.n_outputs();
  // Undesirable variables improve in the opposite direction, so their
  // favourable end of the interval is swapped.
  std::vector<bool> flip_in(m), flip_out(s);
  for (auto i : f.special().ud_inputs) flip_in[i] = true;
  for (auto r : f.special().ud_outputs) flip_out[r] = true;

  const auto ne = res.dmu_eval.size();
  res.alphacut.resize(opt.alpha.size());
  for (std::size_t a = 0; a < opt.alpha.size(); ++a) {
    res.alphacut[a].alpha = opt.alpha[a];
    res.alphacut[a].worst.resize(ne);
    res.alphacut[a].best.resize(ne);
  }
  std::vector<AlphaCutData> cuts;
  for (double a : opt.alpha) cuts.push_back(alpha_cut(f, a));

  // Parameter errors surface here rather than as NA leaves.
  {
    const auto core = alpha_cut(f, 1.0);
    const DeaData crisp(core.input_lower, core.output_lower, f.dmunames(), f.input_names(),
                        f.output_names(), f.special());
    run_submodel(opt.submodel, crisp, sub, {res.dmu_eval.front()}, res.dmu_ref);
  }

  // Task grid: alpha x DMU x {worst, best}.
  detail::parallel_for(opt.alpha.size() * ne * 2, opt.threads, [&](std::size_t task) {
    const std::size_t a = task / (ne * 2);
    const std::size_t k = (task / 2) % ne;
    const bool worst = task % 2 == 0;
    const auto& c = cuts[a];
    const auto o = static_cast<Eigen::Index>(res.dmu_eval[k]);
    Eigen::MatrixXd X(c.input_lower.rows(), c.input_lower.cols());
    Eigen::MatrixXd Y(c.output_lower.rows(), c.output_lower.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      // The evaluated DMU takes its unfavourable end in the worst scenario.
      const bool high_in = (j == o) == worst;
      for (Eigen::Index i = 0; i < X.rows(); ++i)
        X(i, j) = (high_in != flip_in[static_cast<std::size_t>(i)]) ? c.input_upper(i, j) : c.input_lower(i, j);
      for (Eigen::Index r = 0; r < Y.rows(); ++r)
        Y(r, j) = (high_in != flip_out[static_cast<std::size_t>(r)]) ? c.output_lower(r, j) : c.output_upper(r, j);
    }
    const DeaData scenario(X, Y, f.dmunames(), f.input_names(), f.output_names(), f.special());
    DmuResult out;
    try {
      auto r = run_submodel(opt.submodel, scenario, sub, {res.dmu_eval[k]}, res.dmu_ref);
      out = std::move(r.dmus.at(0));
    } catch (const DeaError& e) {
      out = detail::failed(DmuStatus::numerical, m, s, static_cast<Eigen::Index>(res.dmu_ref.size()), e.what());
    }
    (worst ? res.alphacut[a].worst : res.alphacut[a].best)[k] = std::move(out);
  });
  return res;
}

}  // namespace deakit
