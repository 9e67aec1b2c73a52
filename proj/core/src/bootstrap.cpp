#include "deakit/bootstrap.hpp"

#include "deakit/radial.hpp"
#include "internal/common.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace deakit {

std::string_view to_string(BandwidthRule r) {
  switch (r) {
    case BandwidthRule::fixed: return "fixed";
    case BandwidthRule::h1: return "h1";
    case BandwidthRule::h2: return "h2";
    case BandwidthRule::h3: return "h3";
    case BandwidthRule::h4: return "h4";
  }
  return "?";
}

BandwidthRule parse_bandwidth_rule(std::string_view s) {
  if (s == "fixed") return BandwidthRule::fixed;
  if (s == "h1") return BandwidthRule::h1;
  if (s == "h2") return BandwidthRule::h2;
  if (s == "h3") return BandwidthRule::h3;
  if (s == "h4") return BandwidthRule::h4;
  throw DeaError("h: expected a number or one of h1, h2, h3, h4, got '" + std::string(s) + "'");
}

namespace {

/// Linear-interpolation sample quantile (the common "type 7" definition).
double quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return s / static_cast<double>(v.size() - 1);
}

double iqr_of(const std::vector<double>& v) { return quantile(v, 0.75) - quantile(v, 0.25); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Portable draws on top of mt19937_64; the standard distributions are
/// implementation-defined, so they are not used here.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index) : gen_(splitmix64(splitmix64(seed) ^ splitmix64(index + 1))) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t n) {
    return std::min(static_cast<std::size_t>(uniform() * static_cast<double>(n)), n - 1);
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    has_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Radial score of (x, y) against the columns of (X, Y).
double radial_distance(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y, bool io, const RtsSpec& rts) {
  const auto n = X.cols();
  LinearProgram lp(io ? Direction::minimize : Direction::maximize, 0);
  const auto phi = static_cast<Eigen::Index>(lp.add_var(io ? "theta" : "eta", 1.0, VarBound::free()));
  const auto l0 = lp.n_vars();
  for (Eigen::Index j = 0; j < n; ++j) lp.add_var("lambda" + std::to_string(j + 1));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    auto row = detail::zero_row(lp);
    detail::put(row, l0, X.row(i));
    if (io) row(phi) = -x(i);
    lp.add_row(std::move(row), Sense::le, io ? 0.0 : x(i));
  }
  for (Eigen::Index r = 0; r < Y.rows(); ++r) {
    auto row = detail::zero_row(lp);
    detail::put(row, l0, Y.row(r));
    if (!io) row(phi) = -y(r);
    lp.add_row(std::move(row), Sense::ge, io ? y(r) : 0.0);
  }
  detail::add_rts_rows(lp, rts, l0, n);
  const auto sol = solve(lp);
  return sol.optimal() ? sol.objective : NA;
}

}  // namespace

double bandwidth(const std::vector<double>& scores, const Bandwidth& h) {
  double out = h.value;
  if (h.rule != BandwidthRule::fixed) {
    const auto n = scores.size();
    if (n < 2) throw DeaError("h: data-driven bandwidth rules need at least 2 scores");
    std::vector<double> reflected = scores;
    for (double v : scores) reflected.push_back(2.0 - v);
    const double sd_r = std::sqrt(variance_of(reflected));
    const double base = std::min(sd_r, iqr_of(reflected) / 1.349) * std::pow(2.0 * static_cast<double>(n), -0.2);
    switch (h.rule) {
      case BandwidthRule::h1: out = 1.06 * base; break;
      case BandwidthRule::h2: out = 0.9 * base; break;
      case BandwidthRule::h3:
        out = sd_r > 0.0 ? 1.06 * base * std::pow(2.0, 0.2) * std::sqrt(variance_of(scores)) / sd_r : 0.0;
        break;
      case BandwidthRule::h4:
        out = 0.9 * std::min(std::sqrt(variance_of(scores)), iqr_of(scores) / 1.34) *
              std::pow(static_cast<double>(n), -0.2);
        break;
      case BandwidthRule::fixed: break;
    }
  }
  if (!(out > 0.0) || !std::isfinite(out))
    throw DeaError("h: bandwidth rule " + std::string(to_string(h.rule)) + " gives a nonpositive bandwidth");
  return out;
}

BootstrapResult bootstrap_basic(const DeaData& data, const BootstrapOptions& opt) {
  if (opt.orientation != Orientation::input && opt.orientation != Orientation::output)
    throw DeaError("bootstrap: orientation must be io or oo");
  if (opt.B < 1) throw DeaError("B: must be at least 1");
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw DeaError("alpha: must lie in (0, 1)");
  if (data.special().any()) throw DeaError("bootstrap: nc/nd/ud variables are not supported");
  opt.rts.validate();
  const bool io = opt.orientation == Orientation::input;
  const auto n = static_cast<Eigen::Index>(data.n_dmus());

  BasicOptions bo;
  bo.orientation = opt.orientation;
  bo.rts = opt.rts;
  bo.maxslack = false;
  const auto base = model_basic(data, bo);

  BootstrapResult res;
  res.options = opt;
  res.data = detail::share(data);
  res.score.resize(n);
  // Resampling works on scores in (0, 1]; output scores are inverted.
  Eigen::VectorXd delta(n);
  std::vector<double> sample;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double e = base.dmus[static_cast<std::size_t>(j)].efficiency;
    res.score(j) = e;
    delta(j) = is_na(e) || e <= 0.0 ? NA : (io ? e : 1.0 / e);
    if (!is_na(delta(j))) sample.push_back(delta(j));
  }
  if (sample.empty()) throw DeaError("bootstrap: no DMU has a valid score");
  if (sample.size() < static_cast<std::size_t>(n))
    res.notes.emplace_back("DMUs without a valid score keep their observed data in every replication");
  res.h = bandwidth(sample, opt.h);
  const double h = res.h;
  const double var = variance_of(sample);
  const double shrink = var > 0.0 ? 1.0 / std::sqrt(1.0 + h * h / var) : 0.0;

  const Eigen::MatrixXd& X = data.input();
  const Eigen::MatrixXd& Y = data.output();
  res.estimates_bootstrap = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(opt.B), n, NA);
  detail::parallel_for(opt.B, opt.threads, [&](std::size_t b) {
    Stream rng(opt.seed, b);
    const auto nv = sample.size();
    std::vector<double> beta(nv), smooth(nv);
    for (std::size_t k = 0; k < nv; ++k) {
      beta[k] = sample[rng.index(nv)];
      smooth[k] = beta[k] + h * rng.normal();
    }
    const double beta_bar = mean_of(beta);
    Eigen::MatrixXd Xs = X, Ys = Y;
    std::size_t k = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (is_na(delta(j))) continue;
      double t = beta_bar + shrink * (smooth[k++] - beta_bar);
      if (t > 1.0) t = 2.0 - t;
      if (!(t > 0.0)) return;  // whole replication counted as failed
      if (io) Xs.col(j) *= delta(j) / t;
      else Ys.col(j) *= t / delta(j);
    }
    const auto row = static_cast<Eigen::Index>(b);
    for (Eigen::Index o = 0; o < n; ++o)
      res.estimates_bootstrap(row, o) = radial_distance(Xs, Ys, X.col(o), Y.col(o), io, opt.rts);
  });

  res.score_bc = res.bias = res.mean = res.variance = res.median = res.ci_low = res.ci_up =
      Eigen::VectorXd::Constant(n, NA);
  res.failures.assign(static_cast<std::size_t>(n), 0);
  for (Eigen::Index o = 0; o < n; ++o) {
    std::vector<double> est;
    for (Eigen::Index b = 0; b < res.estimates_bootstrap.rows(); ++b) {
      const double v = res.estimates_bootstrap(b, o);
      if (is_na(v)) ++res.failures[static_cast<std::size_t>(o)];
      else est.push_back(v);
    }
    if (est.empty() || is_na(res.score(o))) continue;
    res.mean(o) = mean_of(est);
    res.variance(o) = variance_of(est);
    res.median(o) = quantile(est, 0.5);
    res.bias(o) = res.mean(o) - res.score(o);
    res.score_bc(o) = res.score(o) - res.bias(o);
    std::vector<double> dev(est.size());
    for (std::size_t b = 0; b < est.size(); ++b) dev[b] = est[b] - res.score(o);
    res.ci_low(o) = res.score(o) - quantile(dev, 1.0 - opt.alpha / 2.0);
    res.ci_up(o) = res.score(o) - quantile(dev, opt.alpha / 2.0);
  }
  return res;
}

}  // namespace deakit
