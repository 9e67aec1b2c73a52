// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exit status is
// nonzero when any gating criterion fails; criterion 8 never gates.

#include "deakit/deakit.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace deakit;
using namespace deakit::testing;
namespace fs = std::filesystem;

// Pinned tolerances.
constexpr double kPaperTol = 1e-4;
constexpr double kOracleTol = 1e-6;
constexpr double kDualityRelTol = 1e-6;
constexpr double kPropertyTol = 1e-6;
constexpr double kIdentityTol = 1e-9;
constexpr double kCrossDiagTol = 1e-7;
constexpr double kConcaveSeconds = 1.0;
constexpr double kNonconcaveSeconds = 2.0;
constexpr double kBootstrapSeconds = 10.0;
constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr int kCorpusSize = 100;

enum class Verdict { pass, fail, skip };

struct Outcome {
  Verdict verdict = Verdict::pass;
  std::string detail;
};

/// Collects failures of one criterion; the first few are reported.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) msgs_ += (msgs_.empty() ? "" : "; ") + what;
  }

  void near(double got, double want, double tol, const std::string& what) {
    const double err = std::abs(got - want);
    if (std::isfinite(err)) max_err_ = std::max(max_err_, err);
    std::ostringstream os;
    os << what << " got " << got << " want " << want;
    expect(err <= tol, os.str());
  }

  Outcome outcome(const std::string& extra = {}) const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (max_err_ > 0) os << ", max abs err " << max_err_;
    if (!extra.empty()) os << ", " << extra;
    if (failures_) os << "; " << failures_ << " failed: " << msgs_;
    return {failures_ ? Verdict::fail : Verdict::pass, os.str()};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  double max_err_ = 0.0;
  std::string msgs_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

BasicOptions basic(Orientation o, RtsSpec rts) {
  BasicOptions opt;
  opt.orientation = o;
  opt.rts = rts;
  return opt;
}

bool relative_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// ---------------------------------------------------------------------------

Outcome concave_metafrontier() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = model_basic(meta(), basic(Orientation::input, RtsSpec::vrs()));
  const double secs = seconds_since(t0);
  const auto& want = meta_concave();
  for (std::size_t j = 0; j < want.size(); ++j)
    c.near(r.dmus[j].efficiency, want[j], kPaperTol, r.dmu_label(j));
  c.expect(secs < kConcaveSeconds, "runtime " + fmt_seconds(secs));
  return c.outcome(fmt_seconds(secs));
}

Outcome nonconcave_metafrontier() {
  Check c;
  const auto data = meta();
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = metafrontier(data, parse_grouping(meta_groups(), data.n_dmus()),
                              basic(Orientation::input, RtsSpec::vrs()));
  const double secs = seconds_since(t0);
  const auto& want = meta_nonconcave();
  c.expect(r.nonconcave.size() == static_cast<Eigen::Index>(want.size()), "size");
  for (std::size_t j = 0; j < want.size() && j < static_cast<std::size_t>(r.nonconcave.size()); ++j)
    c.near(r.nonconcave(static_cast<Eigen::Index>(j)), want[j], kPaperTol, r.dmunames[j]);
  // Some group frontiers cannot evaluate some DMUs (input-oriented VRS is
  // infeasible when the DMU's output exceeds the group's maximum); those NA
  // entries must be dropped by the minimum rather than propagated.
  c.expect((r.group_scores.array().isNaN()).any(), "expected NA group scores on META");
  c.expect(!r.nonconcave.array().isNaN().any(), "NA leaked into the non-concave scores");
  c.expect(secs < kNonconcaveSeconds, "runtime " + fmt_seconds(secs));
  return c.outcome(fmt_seconds(secs));
}

Outcome m1_oracles() {
  Check c;
  const auto d = m1();
  const Eigen::MatrixXd& X = d.input();
  const Eigen::MatrixXd& Y = d.output();
  const auto all = all_columns(4);
  constexpr int A = 0, B = 1, D = 3;

  // Closed forms first, then the brute-force programs, then the library.
  const double ratio_max = 1.0;
  const std::vector<double> ccr{1, 0.5, 0.8, 0.25}, bcc{1, 0.5, 1, 0.25};
  for (int j = 0; j < 4; ++j) {
    c.near((Y(0, j) / X(0, j)) / ratio_max, ccr[static_cast<std::size_t>(j)], kOracleTol, "ratio oracle");
    c.near(oracle_radial_io(X, Y, j, all, OracleRts::crs), ccr[static_cast<std::size_t>(j)], kOracleTol,
           "brute CCR");
    c.near(oracle_radial_io(X, Y, j, all, OracleRts::vrs), bcc[static_cast<std::size_t>(j)], kOracleTol,
           "brute BCC");
  }
  c.near(oracle_radial_oo(X, Y, B, all, OracleRts::crs), 2.0, kOracleTol, "brute eta_B");
  c.near(oracle_fdh_io(X, Y, B), 0.5, kOracleTol, "brute FDH B");
  c.near(oracle_additive(X, Y, X.col(B), Y.col(B), all, OracleRts::crs), 2.0, kOracleTol, "brute additive B");
  c.near(oracle_sbm_crs(X, Y, B, all), 0.5, kOracleTol, "brute SBM B");
  c.near(oracle_radial_io(X, Y, A, {1, 2, 3}, OracleRts::crs), 1.25, kOracleTol, "brute super A");
  c.near(oracle_ssbm_io(X, Y, A, {1, 2, 3}, OracleRts::crs), 1.25, kOracleTol, "brute SSBM A");
  c.near(oracle_addmin(X, Y, D, OracleRts::vrs), 5.0, kOracleTol, "brute addmin D");
  c.near(oracle_cost_efficiency(X, Y, B, Eigen::VectorXd::Ones(1), OracleRts::crs), 0.5, kOracleTol,
         "brute cost B");

  const auto crs = model_basic(d, basic(Orientation::input, RtsSpec::crs()));
  const auto vrs = model_basic(d, basic(Orientation::input, RtsSpec::vrs()));
  for (std::size_t j = 0; j < 4; ++j) {
    c.near(crs.dmus[j].efficiency, ccr[j], kOracleTol, "CCR io " + crs.dmu_label(j));
    c.near(vrs.dmus[j].efficiency, bcc[j], kOracleTol, "BCC io " + vrs.dmu_label(j));
  }
  c.near(model_basic(d, basic(Orientation::output, RtsSpec::crs())).dmus[B].efficiency, 2.0, kOracleTol,
         "CCR oo eta_B");
  c.near(model_fdh(d, basic(Orientation::input, RtsSpec::crs())).dmus[B].efficiency, 0.5, kOracleTol,
         "FDH io B");
  AdditiveOptions add;
  c.near(model_additive(d, add).dmus[B].efficiency, 2.0, kOracleTol, "additive CRS B");
  SbmOptions sbm;
  c.near(model_sbmeff(d, sbm).dmus[B].efficiency, 0.5, kOracleTol, "SBM CRS B");
  c.near(model_supereff(d, basic(Orientation::input, RtsSpec::crs())).dmus[A].efficiency, 1.25, kOracleTol,
         "supereff A");
  SbmSupereffOptions ssbm;
  ssbm.orientation = Orientation::input;
  c.near(model_sbmsupereff(d, ssbm).dmus[A].efficiency, 1.25, kOracleTol, "SSBM io A");
  AddminOptions am;
  am.rts = RtsSpec::vrs();
  c.near(model_addmin(d, am).dmus[D].efficiency, 5.0, kOracleTol, "addmin VRS D");
  ProfitOptions cost;
  cost.price_input = 1.0;
  c.near(model_profit(d, cost).dmus[B].efficiency, 0.5, kOracleTol, "cost B");
  return c.outcome();
}

Outcome duality() {
  Check c;
  std::vector<DeaData> sets{m1(), meta()};
  for (auto& d : random_corpus(kCorpusSeed, kCorpusSize)) sets.push_back(std::move(d));
  const std::vector<RtsSpec> regimes{RtsSpec::crs(), RtsSpec::vrs(), RtsSpec::nirs(), RtsSpec::ndrs()};
  int programs = 0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (auto o : {Orientation::input, Orientation::output}) {
      for (const auto& rts : regimes) {
        auto bo = basic(o, rts);
        bo.maxslack = false;
        const auto env = model_basic(sets[k], bo);
        MultiplierOptions mo;
        mo.orientation = o;
        mo.rts = rts;
        const auto mul = model_multiplier(sets[k], mo);
        for (std::size_t j = 0; j < env.dmus.size(); ++j) {
          const double a = env.dmus[j].efficiency, b = mul.dmus[j].efficiency;
          ++programs;
          std::ostringstream os;
          os << "set " << k << " " << to_string(o) << " " << to_string(rts.kind) << " dmu " << j << ": " << a
             << " vs " << b;
          c.expect(relative_close(a, b, kDualityRelTol), os.str());
        }
      }
    }
  }
  return c.outcome(std::to_string(programs) + " primal/dual pairs");
}

Outcome properties() {
  Check c;
  const auto corpus = random_corpus(kCorpusSeed + 1, kCorpusSize);
  std::mt19937_64 rng(kCorpusSeed + 2);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  const double tol = kPropertyTol;
  auto tag = [](const char* what, std::size_t k, std::size_t j) {
    return std::string(what) + " set " + std::to_string(k) + " dmu " + std::to_string(j);
  };

  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& d = corpus[k];
    const auto n = d.n_dmus();
    const auto crs = scores(model_basic(d, basic(Orientation::input, RtsSpec::crs())));
    const auto nirs = scores(model_basic(d, basic(Orientation::input, RtsSpec::nirs())));
    const auto vrs = scores(model_basic(d, basic(Orientation::input, RtsSpec::vrs())));
    const auto fdh = scores(model_fdh(d, basic(Orientation::input, RtsSpec::vrs())));
    for (std::size_t j = 0; j < n; ++j) {
      c.expect(crs[j] <= nirs[j] + tol && nirs[j] <= vrs[j] + tol, tag("rts monotonicity", k, j));
      c.expect(vrs[j] <= fdh[j] + tol, tag("FDH >= VRS", k, j));
    }

    // Unit invariance under row scaling.
    Eigen::MatrixXd xs = d.input(), ys = d.output();
    for (Eigen::Index i = 0; i < xs.rows(); ++i) xs.row(i) *= scale(rng);
    for (Eigen::Index r = 0; r < ys.rows(); ++r) ys.row(r) *= scale(rng);
    const DeaData scaled(xs, ys);
    const auto vrs_s = scores(model_basic(scaled, basic(Orientation::input, RtsSpec::vrs())));
    SbmOptions sbm;
    const auto rho = scores(model_sbmeff(d, sbm));
    const auto rho_s = scores(model_sbmeff(scaled, sbm));
    for (std::size_t j = 0; j < n; ++j) {
      c.expect(relative_close(vrs[j], vrs_s[j], tol), tag("radial unit invariance", k, j));
      c.expect(relative_close(rho[j], rho_s[j], tol), tag("SBM unit invariance", k, j));
    }

    // Additive VRS translation invariance.
    Eigen::MatrixXd xt = d.input(), yt = d.output();
    for (Eigen::Index i = 0; i < xt.rows(); ++i) xt.row(i).array() += 10.0 * (static_cast<double>(i) + 1);
    for (Eigen::Index r = 0; r < yt.rows(); ++r) yt.row(r).array() += 5.0;
    AdditiveOptions ao;
    ao.rts = RtsSpec::vrs();
    const auto w = scores(model_additive(d, ao));
    const auto wt = scores(model_additive(DeaData(xt, yt), ao));
    for (std::size_t j = 0; j < n; ++j)
      c.expect(relative_close(w[j], wt[j], tol), tag("additive translation invariance", k, j));

    // Oriented SBM bounds the non-oriented score; kaizen only raises it.
    SbmOptions io = sbm, oo = sbm, kz = sbm;
    io.orientation = Orientation::input;
    oo.orientation = Orientation::output;
    kz.kaizen = true;
    const auto rho_i = scores(model_sbmeff(d, io));
    const auto rho_o = scores(model_sbmeff(d, oo));
    const auto rho_k = scores(model_sbmeff(d, kz));
    for (std::size_t j = 0; j < n; ++j) {
      c.expect(rho_i[j] >= rho[j] - tol && rho_o[j] >= rho[j] - tol, tag("oriented SBM >= SBM", k, j));
      c.expect(rho_k[j] >= rho[j] - tol, tag("kaizen >= SBM", k, j));
    }

    // Super-efficiency.
    const auto sup = model_supereff(d, basic(Orientation::input, RtsSpec::crs()));
    for (std::size_t j = 0; j < n; ++j) {
      if (crs[j] >= 1.0 - tol) c.expect(sup.dmus[j].efficiency >= 1.0 - tol, tag("super >= 1", k, j));
      else c.expect(std::abs(sup.dmus[j].efficiency - crs[j]) <= tol, tag("super = plain", k, j));
    }

    // Cross-efficiency diagonal.
    CrossOptions co;
    co.M2 = co.M3 = false;
    const auto cr = cross_efficiency(d, co);
    for (std::size_t j = 0; j < n; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      c.expect(std::abs(cr.arbitrary.cross_eff(jj, jj) - cr.efficiency(jj)) <= kCrossDiagTol,
               tag("cross diagonal", k, j));
    }
  }

  // One input, one output: cross-efficiency equals the CCR score.
  std::mt19937_64 r11(kCorpusSeed + 3);
  for (int k = 0; k < 20; ++k) {
    const auto d = random_instance(r11, 3 + k % 10, 1, 1);
    const auto ccr = scores(model_basic(d, basic(Orientation::input, RtsSpec::crs())));
    const auto cr = cross_efficiency(d);
    for (std::size_t j = 0; j < d.n_dmus(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      c.expect(std::abs(cr.arbitrary.e(jj) - ccr[j]) <= tol, tag("1x1 cross e = CCR", static_cast<std::size_t>(k), j));
      for (const auto* m : {&*cr.m2_agg, &*cr.m2_ben, &*cr.m3_agg, &*cr.m3_ben})
        c.expect(std::abs(m->e(jj) - ccr[j]) <= tol, tag("1x1 cross e (II/III) = CCR", static_cast<std::size_t>(k), j));
    }
  }

  // Kao-Liu nesting and Worst <= Best.
  std::mt19937_64 rf(kCorpusSeed + 4);
  std::uniform_real_distribution<double> spread(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const auto base = random_instance(rf, 4 + k % 6, 1 + k % 2, 1 + (k / 2) % 2);
    auto fuzz = [&](const Eigen::MatrixXd& m) {
      FuzzyMatrix f;
      f.mL = m;
      f.mR = m;
      f.dL = m;
      f.dR = m;
      for (Eigen::Index i = 0; i < m.size(); ++i) {
        f.mR(i) = m(i) + spread(rf);
        f.dL(i) = 0.5 * spread(rf);
        f.dR(i) = spread(rf);
      }
      return f;
    };
    const FuzzyDeaData fd(fuzz(base.input()), fuzz(base.output()));
    KaoliuOptions ko;
    ko.alpha = alpha_grid(5);
    const auto fr = modelfuzzy_kaoliu(fd, ko);
    for (std::size_t a = 0; a < fr.alphacut.size(); ++a)
      for (std::size_t j = 0; j < fr.dmu_eval.size(); ++j) {
        const double wa = fr.alphacut[a].worst[j].efficiency, ba = fr.alphacut[a].best[j].efficiency;
        c.expect(wa <= ba + tol, tag("worst <= best", static_cast<std::size_t>(k), j));
        if (a + 1 < fr.alphacut.size()) {
          const double wb = fr.alphacut[a + 1].worst[j].efficiency, bb = fr.alphacut[a + 1].best[j].efficiency;
          c.expect(wa <= wb + tol && bb <= ba + tol, tag("alpha nesting", static_cast<std::size_t>(k), j));
        }
      }
  }

  // Malmquist identities and the identical-period panel.
  std::mt19937_64 rm(kCorpusSeed + 5);
  // Infeasible cross-period VRS programs give NA factors (the rd index
  // itself uses CRS distances only and stays finite), so the identities are
  // compared where both sides are defined.
  auto rel = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (std::isfinite(a(i)) && std::isfinite(b(i))) worst = std::max(worst, std::abs(a(i) - b(i)) / std::max(1.0, std::abs(b(i))));
    }
    return worst;
  };
  for (int k = 0; k < 20; ++k) {
    const int n = 3 + k % 6, m = 1 + k % 2, s = 1 + (k / 2) % 2;
    std::vector<DeaData> periods;
    for (int t = 0; t < 3; ++t) periods.push_back(random_instance(rm, n, m, s));
    const MalmquistSeries panel(periods);
    for (auto o : {Orientation::input, Orientation::output})
      for (auto type1 : {FrontierType::contemporary, FrontierType::sequential}) {
        MalmquistOptions mo;
        mo.orientation = o;
        mo.type1 = type1;
        const auto crs = malmquist_index(panel, mo);
        c.expect(rel(crs.indices.at("mi"), (crs.indices.at("tc").array() * crs.indices.at("ec").array()).matrix()) <=
                     kIdentityTol,
                 "mi = tc*ec");
        mo.rts = RtsKind::vrs;
        const auto v = malmquist_index(panel, mo);
        const auto& I = v.indices;
        c.expect(rel(I.at("mi"), (I.at("tc").array() * I.at("pech").array() * I.at("sech").array()).matrix()) <=
                     kIdentityTol,
                 "mi = tc*pech*sech (fgnz)");
        for (auto type2 : {MalmquistType::rd, MalmquistType::gl}) {
          mo.type2 = type2;
          const auto& J = malmquist_index(panel, mo).indices;
          c.expect(rel(J.at("mi"), (J.at("tc").array() * J.at("pech").array() * J.at("sech").array()).matrix()) <=
                       kIdentityTol,
                   "mi = tc*pech*sech (" + std::string(to_string(type2)) + ")");
        }
        for (auto rts : {RtsKind::crs, RtsKind::vrs}) {
          mo.type2 = MalmquistType::bias;
          mo.rts = rts;
          mo.tc_vrs = rts == RtsKind::vrs;
          const auto& J = malmquist_index(panel, mo).indices;
          c.expect(rel(J.at("tc"),
                       (J.at("matech").array() * J.at("obtech").array() * J.at("ibtech").array()).matrix()) <=
                       kIdentityTol,
                   "tc = matech*obtech*ibtech");
        }
      }
    const MalmquistSeries same({periods[0], periods[0], periods[0]});
    for (auto o : {Orientation::input, Orientation::output})
      for (auto rts : {RtsKind::crs, RtsKind::vrs})
        for (auto type1 : {FrontierType::contemporary, FrontierType::sequential, FrontierType::global})
          for (auto type2 : {MalmquistType::fgnz, MalmquistType::rd, MalmquistType::gl, MalmquistType::bias}) {
            if (rts == RtsKind::crs && (type2 == MalmquistType::rd || type2 == MalmquistType::gl)) continue;
            MalmquistOptions mo;
            mo.orientation = o;
            mo.rts = rts;
            mo.type1 = type1;
            mo.type2 = type2;
            for (const auto& [name, M] : malmquist_index(same, mo).indices)
              c.expect((M.array() - 1.0).abs().maxCoeff() <= kIdentityTol, "identical panel " + name + " != 1");
          }
  }
  return c.outcome();
}

template <class T>
bool same_ints(const std::vector<T>& a, const std::vector<T>& b) {
  return a == b;
}

Outcome brute_force() {
  Check c;
  std::mt19937_64 rng(kCorpusSeed + 6);
  int instances = 0;
  for (int k = 0; k < 40; ++k) {
    const int n = 3 + k % 6, m = 1 + k % 2, s = 1 + (k / 3) % 2;
    const auto d = random_instance(rng, n, m, s);
    const Eigen::MatrixXd& X = d.input();
    const Eigen::MatrixXd& Y = d.output();
    ++instances;
    const auto fdh = scores(model_fdh(d, basic(Orientation::input, RtsSpec::vrs())));
    for (int j = 0; j < n; ++j)
      c.near(fdh[static_cast<std::size_t>(j)], oracle_fdh_io(X, Y, j), kOracleTol, "FDH enumeration");

    for (auto [rts, orts] : {std::pair{RtsSpec::vrs(), OracleRts::vrs}, std::pair{RtsSpec::crs(), OracleRts::crs}}) {
      FrontierOptions fo;
      fo.rts = rts;
      const auto ext = extreme_efficient(d, fo);
      const auto want_ext = oracle_extreme(X, Y, orts);
      std::vector<int> got_ext(ext.begin(), ext.end());
      std::sort(got_ext.begin(), got_ext.end());
      c.expect(got_ext == want_ext, "extreme_efficient set " + std::to_string(k));

      const auto mf = maximal_friends(d, fo);
      std::vector<std::vector<int>> got;
      for (const auto& f : mf) got.emplace_back(f.begin(), f.end());
      c.expect(got == oracle_maximal_friends(X, Y, orts), "maximal_friends set " + std::to_string(k));
    }
  }
  return c.outcome(std::to_string(instances) + " instances");
}

bool bits_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

bool identical(const BootstrapResult& a, const BootstrapResult& b) {
  return std::memcmp(&a.h, &b.h, sizeof(double)) == 0 && bits_equal(a.score, b.score) &&
         bits_equal(a.score_bc, b.score_bc) && bits_equal(a.bias, b.bias) && bits_equal(a.mean, b.mean) &&
         bits_equal(a.variance, b.variance) && bits_equal(a.median, b.median) && bits_equal(a.ci_low, b.ci_low) &&
         bits_equal(a.ci_up, b.ci_up) && a.failures == b.failures &&
         bits_equal(a.estimates_bootstrap, b.estimates_bootstrap);
}

Outcome bootstrap_contract() {
  Check c;
  const auto d = meta();
  BootstrapOptions opt;
  opt.rts = RtsSpec::vrs();
  opt.B = 100;
  opt.seed = 12345;
  opt.threads = 1;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r1 = bootstrap_basic(d, opt);
  const double secs = seconds_since(t0);
  opt.threads = 8;
  const auto r8 = bootstrap_basic(d, opt);
  c.expect(identical(r1, r8), "1 vs 8 threads differ");
  for (Eigen::Index j = 0; j < r1.score.size(); ++j) {
    const double want = r1.score(j) - r1.bias(j);
    c.expect(std::memcmp(&want, &r1.score_bc(j), sizeof(double)) == 0, "score_bc != score - bias");
    c.expect(r1.ci_low(j) <= r1.ci_up(j), "CI ordering");
  }
  for (auto o : {Orientation::input, Orientation::output}) {
    BootstrapOptions oc = opt;
    oc.orientation = o;
    oc.rts = RtsSpec::crs();
    oc.B = 50;
    const auto a = bootstrap_basic(d, oc);
    for (Eigen::Index j = 0; j < a.score.size(); ++j) {
      const double want = a.score(j) - a.bias(j);
      c.expect(std::memcmp(&want, &a.score_bc(j), sizeof(double)) == 0, "score_bc != score - bias");
      c.expect(a.ci_low(j) <= a.ci_up(j), "CI ordering");
    }
  }
  c.expect(secs < kBootstrapSeconds, "runtime " + fmt_seconds(secs));
  return c.outcome("B=100 META " + fmt_seconds(secs));
}

// ---------------------------------------------------------------------------
// Optional reproductions on externally transcribed datasets.

fs::path optional_dir() {
  if (const char* env = std::getenv("DEAKIT_OPTIONAL_DATA")) return env;
  return fs::path(DEAKIT_TEST_DATA_DIR) / "optional";
}

struct OptionalCase {
  std::string file;
  std::size_t ni, no;
  std::function<void(const Table&, const DeadataSpec&, Check&)> run;
  SpecialVariables special = {};
};

void compare_head(Check& c, const std::vector<double>& got, const std::vector<double>& want, const std::string& what) {
  c.expect(got.size() >= want.size(), what + ": too few DMUs");
  for (std::size_t j = 0; j < want.size() && j < got.size(); ++j)
    c.near(got[j], want[j], kPaperTol, what + " #" + std::to_string(j + 1));
}

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Outcome optional_reproductions() {
  const std::vector<OptionalCase> cases{
      {"tone2001.csv", 2, 2,
       [](const Table& t, const DeadataSpec& s, Check& c) {
         const auto d = make_deadata(t, s);
         compare_head(c, scores(model_sbmeff(d)), {0.79798, 0.56818, 1, 0.66667, 1}, "SBM");
         SbmOptions kz;
         kz.kaizen = true;
         compare_head(c, scores(model_sbmeff(d, kz)), {0.86014, 0.73427, 1, 0.66667, 1}, "SBM-Max");
       }},
      {"ruggiero2007.csv", 2, 1,
       [](const Table& t, DeadataSpec s, Check& c) {
         s.special.nd_inputs = {1};
         compare_head(c, scores(model_basic(make_deadata(t, s))),
                      {0.72594, 0.88099, 0.95681, 0.85917, 0.97576, 0.35795}, "CCR with ND input");
       }},
      {"hua_bian_2007.csv", 2, 3,
       [](const Table& t, DeadataSpec s, Check& c) {
         s.special.ud_outputs = {2};
         auto o = basic(Orientation::output, RtsSpec::vrs());
         o.vtrans.outputs = {1500};
         compare_head(c, scores(model_basic(make_deadata(t, s), o)), {1, 1, 1.17726, 1.06856, 1, 1},
                      "BCC oo undesirable");
       }},
      {"power_plants.csv", 4, 2,
       [](const Table& t, const DeadataSpec& s, Check& c) {
         const auto d = make_deadata(t, s);
         compare_head(c, scores(model_supereff(d)), {1.02825, 2.41667, 1.31250, 1.62500, 2.40257, 1.06279},
                      "radial super");
         const std::vector<double> ssbm{1.01162, 1.70833, 1.07812, 1.15625, 1.79881, 1.01981};
         SbmSupereffOptions so;
         so.orientation = Orientation::input;
         compare_head(c, scores(model_sbmsupereff(d, so)), ssbm, "SSBM io");
         AddSupereffOptions ao;
         ao.orientation = Orientation::input;
         compare_head(c, scores(model_addsupereff(d, ao)), ssbm, "additive super io");
       }},
      {"golany_roll_1989.csv", 3, 2,
       [](const Table& t, const DeadataSpec& s, Check& c) {
         const auto r = cross_efficiency(make_deadata(t, s));
         compare_head(c, to_vec(r.m2_ben->e),
                      {0.5856330, 0.7494068, 0.5686789, 0.8233164, 0.4818662, 0.5902805, 0.6236033, 0.5179766,
                       0.3942743, 0.7588777, 0.9170085, 0.9853480, 0.9902515},
                      "M2 benevolent e");
       }},
      {"lim_zhu_2015.csv", 1, 5,
       [](const Table& t, const DeadataSpec& s, Check& c) {
         CrossOptions co;
         co.rts = RtsSpec::vrs();
         co.correction = true;
         const auto r = cross_efficiency(make_deadata(t, s), co);
         compare_head(c, to_vec(r.arbitrary.e),
                      {0.7073056, 0.6138268, 0.1847451, 0.4605659, 0.4957667, 0.5759273}, "arbitrary e");
         compare_head(c, to_vec(r.m2_agg->e),
                      {0.7247253, 0.6388864, 0.1825081, 0.4472565, 0.5004328, 0.5738613}, "M2 aggressive e");
         compare_head(c, to_vec(r.m2_ben->e),
                      {0.7484397, 0.6486081, 0.1977408, 0.4975789, 0.5305743, 0.6249486}, "M2 benevolent e");
       }},
  };
  const auto dir = optional_dir();
  Check c;
  std::vector<std::string> ran, missing;
  for (const auto& oc : cases) {
    const auto path = dir / oc.file;
    if (!fs::exists(path)) {
      missing.push_back(oc.file);
      continue;
    }
    DeadataSpec spec;
    spec.ni = oc.ni;
    spec.no = oc.no;
    try {
      oc.run(read_csv_file(path.string()), spec, c);
    } catch (const std::exception& e) {
      c.expect(false, oc.file + ": " + e.what());
    }
    ran.push_back(oc.file);
  }
  if (ran.empty()) return {Verdict::skip, "no datasets under " + dir.string()};
  std::string extra = "ran";
  for (const auto& f : ran) extra += " " + f;
  if (!missing.empty()) extra += "; missing " + std::to_string(missing.size());
  return c.outcome(extra);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
    bool gating;
  };
  const Criterion criteria[] = {
      {1, "concave metafrontier (META, BCC io)", concave_metafrontier, true},
      {2, "non-concave metafrontier (META, 3 groups)", nonconcave_metafrontier, true},
      {3, "M1 oracle suite", m1_oracles, true},
      {4, "envelopment/multiplier duality", duality, true},
      {5, "property suites", properties, true},
      {6, "brute-force equivalence (n <= 8)", brute_force, true},
      {7, "bootstrap contract", bootstrap_contract, true},
      {8, "optional dataset reproductions", optional_reproductions, false},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {Verdict::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "SKIP";
    std::printf("%s  %d  %s  [%s]\n", tag, cr.id, cr.name, o.detail.c_str());
    std::fflush(stdout);
    if (o.verdict == Verdict::fail && cr.gating) ++failed;
  }
  return failed ? 1 : 0;
}
