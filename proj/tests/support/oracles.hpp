#pragma once

// Reference implementations used to check the library. They share no code
// with it: linear programs are solved by enumerating basic solutions, and
// combinatorial results by exhaustive search.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace deakit::testing {

/// LP over x >= 0 solved by enumerating every column subset that can form a
/// basis. Only meant for a handful of rows and columns. Bounded problems only.
class BruteLp {
 public:
  enum class Sense { le, eq, ge };

  explicit BruteLp(bool maximize = false) : maximize_(maximize) {}

  int add_var(double obj = 0.0) {
    obj_.push_back(obj);
    for (auto& r : rows_) r.push_back(0.0);
    return static_cast<int>(obj_.size()) - 1;
  }

  void add_row(const std::vector<std::pair<int, double>>& terms, Sense sense, double rhs) {
    std::vector<double> row(obj_.size(), 0.0);
    for (auto [j, a] : terms) row[static_cast<std::size_t>(j)] += a;
    rows_.push_back(std::move(row));
    senses_.push_back(sense);
    rhs_.push_back(rhs);
  }

  struct Solution {
    double objective;
    Eigen::VectorXd x;
  };

  /// Best basic feasible solution, or nullopt when none exists.
  std::optional<Solution> solve(double tol = 1e-9) const {
    const int nv = static_cast<int>(obj_.size());
    const int nr = static_cast<int>(rows_.size());
    int nslack = 0;
    for (auto s : senses_) nslack += s != Sense::eq;
    const int nc = nv + nslack;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nr, nc);
    Eigen::VectorXd b(nr), c = Eigen::VectorXd::Zero(nc);
    for (int j = 0; j < nv; ++j) c(j) = obj_[static_cast<std::size_t>(j)];
    int sc = nv;
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < nv; ++j) A(i, j) = rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      b(i) = rhs_[static_cast<std::size_t>(i)];
      const auto s = senses_[static_cast<std::size_t>(i)];
      if (s == Sense::le) A(i, sc++) = 1.0;
      if (s == Sense::ge) A(i, sc++) = -1.0;
    }
    std::optional<Solution> best;
    std::vector<int> pick;
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    std::function<void(int)> rec = [&](int start) {
      if (!pick.empty() || b.cwiseAbs().maxCoeff() <= tol) {
        Eigen::MatrixXd As(nr, static_cast<Eigen::Index>(pick.size()));
        for (std::size_t k = 0; k < pick.size(); ++k) As.col(static_cast<Eigen::Index>(k)) = A.col(pick[k]);
        Eigen::VectorXd xs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pick.size()));
        bool ok = true;
        if (!pick.empty()) {
          Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
          if (qr.rank() < static_cast<Eigen::Index>(pick.size())) ok = false;
          else xs = qr.solve(b);
        }
        if (ok && (As * xs - b).cwiseAbs().maxCoeff() <= tol * scale * 10 && (xs.size() == 0 || xs.minCoeff() >= -tol)) {
          Eigen::VectorXd x = Eigen::VectorXd::Zero(nc);
          for (std::size_t k = 0; k < pick.size(); ++k) x(pick[k]) = std::max(0.0, xs(static_cast<Eigen::Index>(k)));
          const double z = c.dot(x);
          if (!best || (maximize_ ? z > best->objective : z < best->objective)) best = Solution{z, x.head(nv)};
        } else if (!ok) {
          return;  // dependent columns: no superset is a basis either
        }
      }
      if (static_cast<int>(pick.size()) == nr) return;
      for (int j = start; j < nc; ++j) {
        pick.push_back(j);
        rec(j + 1);
        pick.pop_back();
      }
    };
    rec(0);
    return best;
  }

 private:
  bool maximize_;
  std::vector<double> obj_;
  std::vector<std::vector<double>> rows_;
  std::vector<Sense> senses_;
  std::vector<double> rhs_;
};

enum class OracleRts { crs, vrs, nirs };

namespace oracle_detail {

inline void add_rts(BruteLp& lp, const std::vector<int>& lam, OracleRts rts) {
  if (rts == OracleRts::crs) return;
  std::vector<std::pair<int, double>> t;
  for (int v : lam) t.emplace_back(v, 1.0);
  lp.add_row(t, rts == OracleRts::vrs ? BruteLp::Sense::eq : BruteLp::Sense::le, 1.0);
}

inline std::vector<int> lambdas(BruteLp& lp, const std::vector<int>& ref) {
  std::vector<int> v;
  for (std::size_t k = 0; k < ref.size(); ++k) v.push_back(lp.add_var());
  return v;
}

inline double value(const std::optional<BruteLp::Solution>& s) {
  return s ? s->objective : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace oracle_detail

/// Input-oriented radial score of column o against the columns in ref.
inline double oracle_radial_io(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int o,
                               const std::vector<int>& ref, OracleRts rts) {
  BruteLp lp(false);
  const int th = lp.add_var(1.0);
  const auto lam = oracle_detail::lambdas(lp, ref);
  for (int i = 0; i < X.rows(); ++i) {
    std::vector<std::pair<int, double>> t{{th, -X(i, o)}};
    for (std::size_t k = 0; k < ref.size(); ++k) t.emplace_back(lam[k], X(i, ref[k]));
    lp.add_row(t, BruteLp::Sense::le, 0.0);
  }
  for (int r = 0; r < Y.rows(); ++r) {
    std::vector<std::pair<int, double>> t;
    for (std::size_t k = 0; k < ref.size(); ++k) t.emplace_back(lam[k], Y(r, ref[k]));
    lp.add_row(t, BruteLp::Sense::ge, Y(r, o));
  }
  oracle_detail::add_rts(lp, lam, rts);
  return oracle_detail::value(lp.solve());
}

/// Output-oriented radial expansion factor eta.
inline double oracle_radial_oo(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int o,
                               const std::vector<int>& ref, OracleRts rts) {
  BruteLp lp(true);
  const int eta = lp.add_var(1.0);
  const auto lam = oracle_detail::lambdas(lp, ref);
  for (int i = 0; i < X.rows(); ++i) {
    std::vector<std::pair<int, double>> t;
    for (std::size_t k = 0; k < ref.size(); ++k) t.emplace_back(lam[k], X(i, ref[k]));
    lp.add_row(t, BruteLp::Sense::le, X(i, o));
  }
  for (int r = 0; r < Y.rows(); ++r) {
    std::vector<std::pair<int, double>> t{{eta, -Y(r, o)}};
    for (std::size_t k = 0; k < ref.size(); ++k) t.emplace_back(lam[k], Y(r, ref[k]));
    lp.add_row(t, BruteLp::Sense::ge, 0.0);
  }
  oracle_detail::add_rts(lp, lam, rts);
  return oracle_detail::value(lp.solve());
}

/// Unit-weight additive objective of the point (x, y) against ref.
inline double oracle_additive(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y, const std::vector<int>& ref, OracleRts rts) {
  BruteLp lp(true);
  const auto lam = oracle_detail::lambdas(lp, ref);
  for (int i = 0; i < X.rows(); ++i) {
    std::vector<std::pair<int, double>> t{{lp.add_var(1.0), 1.0}};
    for (std::size_t k = 0; k < ref.size(); ++k) t.emplace_back(lam[k], X(i, ref[k]));
    lp.add_row(t, BruteLp::Sense::eq, x(i));
  }
  for (int r = 0; r < Y.rows(); ++r) {
    std::vector<std::pair<int, double>> t{{lp.add_var(1.0), -1.0}};
    for (std::size_t k = 0; k < ref.size(); ++k) t.emplace_back(lam[k], Y(r, ref[k]));
    lp.add_row(t, BruteLp::Sense::eq, y(r));
  }
  oracle_detail::add_rts(lp, lam, rts);
  return oracle_detail::value(lp.solve());
}

/// Non-oriented CRS slacks-based score through the Charnes-Cooper transform.
inline double oracle_sbm_crs(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int o,
                             const std::vector<int>& ref) {
  const double m = static_cast<double>(X.rows()), s = static_cast<double>(Y.rows());
  BruteLp lp(false);
  const int t = lp.add_var(1.0);
  const auto lam = oracle_detail::lambdas(lp, ref);
  std::vector<std::pair<int, double>> norm{{t, 1.0}};
  for (int i = 0; i < X.rows(); ++i) {
    const int sm = lp.add_var(-1.0 / (m * X(i, o)));
    std::vector<std::pair<int, double>> row{{sm, 1.0}, {t, -X(i, o)}};
    for (std::size_t k = 0; k < ref.size(); ++k) row.emplace_back(lam[k], X(i, ref[k]));
    lp.add_row(row, BruteLp::Sense::eq, 0.0);
  }
  for (int r = 0; r < Y.rows(); ++r) {
    const int sp = lp.add_var();
    norm.emplace_back(sp, 1.0 / (s * Y(r, o)));
    std::vector<std::pair<int, double>> row{{sp, -1.0}, {t, -Y(r, o)}};
    for (std::size_t k = 0; k < ref.size(); ++k) row.emplace_back(lam[k], Y(r, ref[k]));
    lp.add_row(row, BruteLp::Sense::eq, 0.0);
  }
  lp.add_row(norm, BruteLp::Sense::eq, 1.0);
  return oracle_detail::value(lp.solve());
}

/// Input-oriented slacks-based super-efficiency: o is excluded from ref.
inline double oracle_ssbm_io(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int o,
                             const std::vector<int>& ref, OracleRts rts) {
  const double m = static_cast<double>(X.rows());
  BruteLp lp(false);
  const auto lam = oracle_detail::lambdas(lp, ref);
  for (int i = 0; i < X.rows(); ++i) {
    const int tm = lp.add_var(1.0 / (m * X(i, o)));
    std::vector<std::pair<int, double>> row{{tm, -1.0}};
    for (std::size_t k = 0; k < ref.size(); ++k) row.emplace_back(lam[k], X(i, ref[k]));
    lp.add_row(row, BruteLp::Sense::le, X(i, o));
  }
  for (int r = 0; r < Y.rows(); ++r) {
    std::vector<std::pair<int, double>> row;
    for (std::size_t k = 0; k < ref.size(); ++k) row.emplace_back(lam[k], Y(r, ref[k]));
    lp.add_row(row, BruteLp::Sense::ge, Y(r, o));
  }
  oracle_detail::add_rts(lp, lam, rts);
  return 1.0 + oracle_detail::value(lp.solve());
}

/// Minimum cost c.x of producing at least y_o, divided by c.x_o.
inline double oracle_cost_efficiency(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int o,
                                     const Eigen::VectorXd& c, OracleRts rts) {
  BruteLp lp(false);
  std::vector<int> ref;
  for (int j = 0; j < X.cols(); ++j) ref.push_back(j);
  std::vector<int> xv;
  for (int i = 0; i < X.rows(); ++i) xv.push_back(lp.add_var(c(i)));
  const auto lam = oracle_detail::lambdas(lp, ref);
  for (int i = 0; i < X.rows(); ++i) {
    std::vector<std::pair<int, double>> row{{xv[static_cast<std::size_t>(i)], -1.0}};
    for (std::size_t k = 0; k < ref.size(); ++k) row.emplace_back(lam[k], X(i, ref[k]));
    lp.add_row(row, BruteLp::Sense::le, 0.0);
  }
  for (int r = 0; r < Y.rows(); ++r) {
    std::vector<std::pair<int, double>> row;
    for (std::size_t k = 0; k < ref.size(); ++k) row.emplace_back(lam[k], Y(r, ref[k]));
    lp.add_row(row, BruteLp::Sense::ge, Y(r, o));
  }
  oracle_detail::add_rts(lp, lam, rts);
  return oracle_detail::value(lp.solve()) / c.dot(X.col(o));
}

/// Input-oriented FDH score by exhaustive search over binary intensity
/// vectors with exactly one active reference.
inline double oracle_fdh_io(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int o) {
  const int n = static_cast<int>(X.cols());
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != 1) continue;
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) lam(j) = 1.0;
    const Eigen::VectorXd xr = X * lam, yr = Y * lam;
    if (((yr - Y.col(o)).array() < 0).any()) continue;
    best = std::min(best, (xr.array() / X.col(o).array()).maxCoeff());
  }
  return best;
}

inline std::vector<int> all_columns(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = j;
  return v;
}

/// Pareto-efficient columns: zero additive objective against every column.
inline std::vector<int> oracle_efficient(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, OracleRts rts,
                                         double tol = 1e-7) {
  std::vector<int> out;
  const auto ref = all_columns(static_cast<int>(X.cols()));
  for (int j = 0; j < X.cols(); ++j)
    if (oracle_additive(X, Y, X.col(j), Y.col(j), ref, rts) <= tol) out.push_back(j);
  return out;
}

/// Efficient columns that are not a conic (crs) or convex (vrs) combination
/// of the other efficient columns.
inline std::vector<int> oracle_extreme(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, OracleRts rts) {
  const auto eff = oracle_efficient(X, Y, rts);
  std::vector<int> out;
  for (int j : eff) {
    std::vector<int> others;
    for (int k : eff)
      if (k != j) others.push_back(k);
    BruteLp lp(false);
    const auto lam = oracle_detail::lambdas(lp, others);
    for (int i = 0; i < X.rows(); ++i) {
      std::vector<std::pair<int, double>> row;
      for (std::size_t k = 0; k < others.size(); ++k) row.emplace_back(lam[k], X(i, others[k]));
      lp.add_row(row, BruteLp::Sense::eq, X(i, j));
    }
    for (int r = 0; r < Y.rows(); ++r) {
      std::vector<std::pair<int, double>> row;
      for (std::size_t k = 0; k < others.size(); ++k) row.emplace_back(lam[k], Y(r, others[k]));
      lp.add_row(row, BruteLp::Sense::eq, Y(r, j));
    }
    oracle_detail::add_rts(lp, lam, rts);
    if (others.empty() || !lp.solve()) out.push_back(j);
  }
  return out;
}

/// Maximal subsets of efficient columns whose centroid is efficient, by
/// testing every subset. Sorted by size descending, then lexicographically.
inline std::vector<std::vector<int>> oracle_maximal_friends(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                                            OracleRts rts, double tol = 1e-7) {
  const auto eff = oracle_efficient(X, Y, rts);
  const auto ref = all_columns(static_cast<int>(X.cols()));
  const int k = static_cast<int>(eff.size());
  std::vector<unsigned> friendly;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Eigen::VectorXd xc = Eigen::VectorXd::Zero(X.rows()), yc = Eigen::VectorXd::Zero(Y.rows());
    const int cnt = __builtin_popcount(mask);
    for (int b = 0; b < k; ++b)
      if (mask & (1u << b)) {
        xc += X.col(eff[static_cast<std::size_t>(b)]) / cnt;
        yc += Y.col(eff[static_cast<std::size_t>(b)]) / cnt;
      }
    if (oracle_additive(X, Y, xc, yc, ref, rts) <= tol) friendly.push_back(mask);
  }
  std::vector<std::vector<int>> out;
  for (unsigned a : friendly) {
    const bool dominated =
        std::any_of(friendly.begin(), friendly.end(), [&](unsigned b) { return b != a && (a & b) == a; });
    if (dominated) continue;
    std::vector<int> set;
    for (int b = 0; b < k; ++b)
      if (a & (1u << b)) set.push_back(eff[static_cast<std::size_t>(b)]);
    out.push_back(set);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  return out;
}

/// Unit-weight additive-Min objective: the smallest total slack to any
/// point on one of the maximal-friends facets that dominates (x_o, y_o).
inline double oracle_addmin(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int o, OracleRts rts) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& facet : oracle_maximal_friends(X, Y, rts)) {
    BruteLp lp(false);
    const auto lam = oracle_detail::lambdas(lp, facet);
    for (int i = 0; i < X.rows(); ++i) {
      std::vector<std::pair<int, double>> row{{lp.add_var(1.0), 1.0}};
      for (std::size_t k = 0; k < facet.size(); ++k) row.emplace_back(lam[k], X(i, facet[k]));
      lp.add_row(row, BruteLp::Sense::eq, X(i, o));
    }
    for (int r = 0; r < Y.rows(); ++r) {
      std::vector<std::pair<int, double>> row{{lp.add_var(1.0), -1.0}};
      for (std::size_t k = 0; k < facet.size(); ++k) row.emplace_back(lam[k], Y(r, facet[k]));
      lp.add_row(row, BruteLp::Sense::eq, Y(r, o));
    }
    oracle_detail::add_rts(lp, lam, rts);
    if (const auto s = lp.solve()) best = std::min(best, s->objective);
  }
  return best;
}

}  // namespace deakit::testing
