#include "deakit/lp.hpp"

#include "deakit/types.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace deakit {

LinearProgram::LinearProgram(Direction dir, std::size_t n_vars)
    : direction(dir),
      objective(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_vars))),
      bounds(n_vars),
      var_names(n_vars) {
  for (std::size_t j = 0; j < n_vars; ++j) var_names[j] = "x" + std::to_string(j + 1);
}

std::size_t LinearProgram::add_var(std::string name, double obj, VarBound bound) {
  const auto j = n_vars();
  objective.conservativeResize(static_cast<Eigen::Index>(j + 1));
  objective(static_cast<Eigen::Index>(j)) = obj;
  for (auto& r : rows) {
    r.coef.conservativeResize(static_cast<Eigen::Index>(j + 1));
    r.coef(static_cast<Eigen::Index>(j)) = 0.0;
  }
  bounds.push_back(bound);
  var_names.push_back(std::move(name));
  return j;
}

void LinearProgram::add_row(Eigen::VectorXd coef, Sense sense, double rhs, std::string name) {
  rows.push_back({std::move(coef), sense, rhs, std::move(name)});
}

void LinearProgram::validate() const {
  const auto n = objective.size();
  if (bounds.size() != n_vars()) throw DeaError("lp: bounds length differs from objective");
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].coef.size() != n)
      throw DeaError("lp: row " + std::to_string(i + 1) + " has the wrong length");
  for (const auto& b : bounds)
    if (b.lo > b.hi || std::isnan(b.lo) || std::isnan(b.hi) || b.lo == kInf || b.hi == -kInf)
      throw DeaError("lp: invalid variable bounds");
}

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Original variable j expressed through the standard-form columns:
// x_j = offset + sign * z[col] (- z[col + 1] when split).
struct VarMap {
  enum Kind { shift, reflect, split, fixed } kind = shift;
  Eigen::Index col = -1;
  double offset = 0.0;
};

struct StandardForm {
  RowMatrix A;             // rows x (structural columns)
  Eigen::VectorXd b;
  std::vector<Sense> sense;
  Eigen::VectorXd c;       // minimisation costs of structural columns
  double c0 = 0.0;         // constant objective term
  std::vector<VarMap> map;
  Eigen::Index n_struct = 0;
};

StandardForm to_standard(const LinearProgram& lp) {
  StandardForm sf;
  const auto n = static_cast<Eigen::Index>(lp.n_vars());
  sf.map.resize(lp.n_vars());
  Eigen::Index cols = 0;
  std::vector<std::pair<Eigen::Index, double>> upper_rows;  // column, bound
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& bd = lp.bounds[static_cast<std::size_t>(j)];
    auto& vm = sf.map[static_cast<std::size_t>(j)];
    if (std::isfinite(bd.lo) && std::isfinite(bd.hi) && bd.lo == bd.hi) {
      vm = {VarMap::fixed, -1, bd.lo};
    } else if (std::isfinite(bd.lo)) {
      vm = {VarMap::shift, cols++, bd.lo};
      if (std::isfinite(bd.hi)) upper_rows.emplace_back(vm.col, bd.hi - bd.lo);
    } else if (std::isfinite(bd.hi)) {
      vm = {VarMap::reflect, cols++, bd.hi};
    } else {
      vm = {VarMap::split, cols, 0.0};
      cols += 2;
    }
  }
  sf.n_struct = cols;
  const auto m = static_cast<Eigen::Index>(lp.rows.size() + upper_rows.size());
  sf.A = RowMatrix::Zero(m, cols);
  sf.b = Eigen::VectorXd::Zero(m);
  sf.sense.resize(static_cast<std::size_t>(m));
  sf.c = Eigen::VectorXd::Zero(cols);

  const double dir = lp.direction == Direction::maximize ? -1.0 : 1.0;
  auto place = [&](auto&& put, Eigen::Index j, double a, double& constant) {
    const auto& vm = sf.map[static_cast<std::size_t>(j)];
    switch (vm.kind) {
      case VarMap::fixed: constant += a * vm.offset; break;
      case VarMap::shift: put(vm.col, a); constant += a * vm.offset; break;
      case VarMap::reflect: put(vm.col, -a); constant += a * vm.offset; break;
      case VarMap::split: put(vm.col, a); put(vm.col + 1, -a); break;
    }
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = dir * lp.objective(j);
    if (a == 0.0) continue;
    place([&](Eigen::Index k, double v) { sf.c(k) += v; }, j, a, sf.c0);
  }
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    const auto r = static_cast<Eigen::Index>(i);
    double constant = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = row.coef(j);
      if (a == 0.0) continue;
      place([&](Eigen::Index k, double v) { sf.A(r, k) += v; }, j, a, constant);
    }
    sf.b(r) = row.rhs - constant;
    sf.sense[i] = row.sense;
  }
  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(lp.rows.size() + k);
    sf.A(r, upper_rows[k].first) = 1.0;
    sf.b(r) = upper_rows[k].second;
    sf.sense[static_cast<std::size_t>(r)] = Sense::le;
  }
  return sf;
}

class Tableau {
 public:
  Tableau(RowMatrix t, std::vector<Eigen::Index> basis, const SolverOptions& opt)
      : T_(std::move(t)), basis_(std::move(basis)), opt_(opt) {}

  Eigen::Index rows() const { return T_.rows(); }
  Eigen::Index cols() const { return T_.cols() - 1; }
  double rhs(Eigen::Index i) const { return T_(i, T_.cols() - 1); }
  double& at(Eigen::Index i, Eigen::Index j) { return T_(i, j); }
  const std::vector<Eigen::Index>& basis() const { return basis_; }

  /// Minimises cost over columns with allowed[j]; returns the final status.
  LpStatus optimise(const Eigen::VectorXd& cost, const std::vector<bool>& allowed,
                    std::size_t& iterations) {
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iterations >= opt_.max_iterations) return LpStatus::iteration_limit;
      const Eigen::VectorXd d = reduced_costs(cost);
      Eigen::Index enter = -1;
      double best = -opt_.optimality_tol;
      for (Eigen::Index j = 0; j < cols(); ++j) {
        if (!allowed[static_cast<std::size_t>(j)] || d(j) >= best) continue;
        enter = j;
        if (bland) break;
        best = d(j);
      }
      if (enter < 0) return LpStatus::optimal;

      Eigen::Index leave = -1;
      double ratio = kInf;
      for (Eigen::Index i = 0; i < rows(); ++i) {
        const double a = T_(i, enter);
        if (a <= opt_.pivot_tol * 100.0) continue;
        const double q = std::max(rhs(i), 0.0) / a;
        if (leave < 0 || q < ratio - 1e-12) {
          leave = i;
          ratio = q;
        } else if (q <= ratio + 1e-12 && basis_[static_cast<std::size_t>(i)] <
                                             basis_[static_cast<std::size_t>(leave)]) {
          leave = i;  // ties go to the lowest basic index
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      if (ratio <= opt_.feasibility_tol) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
      ++iterations;
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const double p = T_(r, c);
    T_.row(r) /= p;
    T_(r, c) = 1.0;
    for (Eigen::Index i = 0; i < T_.rows(); ++i) {
      if (i == r) continue;
      const double f = T_(i, c);
      if (f == 0.0) continue;
      T_.row(i) -= f * T_.row(r);
      T_(i, c) = 0.0;
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  void remove_row(Eigen::Index r) {
    const auto last = T_.rows() - 1;
    for (Eigen::Index i = r; i < last; ++i) T_.row(i) = T_.row(i + 1);
    T_.conservativeResize(last, Eigen::NoChange);
    basis_.erase(basis_.begin() + r);
  }

  double value(const Eigen::VectorXd& cost) const {
    double v = 0.0;
    for (Eigen::Index i = 0; i < rows(); ++i) v += cost(basis_[static_cast<std::size_t>(i)]) * rhs(i);
    return v;
  }

 private:
  Eigen::VectorXd reduced_costs(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd d = cost;
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const double cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0.0) d -= cb * T_.row(i).head(cols()).transpose();
    }
    for (auto j : basis_) d(j) = 0.0;
    return d;
  }

  RowMatrix T_;
  std::vector<Eigen::Index> basis_;
  SolverOptions opt_;
};

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolverOptions& opt) {
  lp.validate();
  StandardForm sf = to_standard(lp);
  LpSolution sol;

  // Drop empty rows (checking them), scale the rest, and make rhs >= 0.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < sf.A.rows(); ++i) {
    const double scale = sf.A.row(i).cwiseAbs().maxCoeff();
    const auto s = sf.sense[static_cast<std::size_t>(i)];
    if (scale == 0.0) {
      const double b = sf.b(i);
      const double tol = opt.feasibility_tol;
      const bool ok = (s == Sense::eq && std::abs(b) <= tol) || (s == Sense::le && b >= -tol) ||
                      (s == Sense::ge && b <= tol);
      if (!ok) {
        sol.status = LpStatus::infeasible;
        return sol;
      }
      continue;
    }
    sf.A.row(i) /= scale;
    sf.b(i) /= scale;
    if (sf.b(i) < 0.0) {
      sf.A.row(i) *= -1.0;
      sf.b(i) *= -1.0;
      if (s == Sense::le) sf.sense[static_cast<std::size_t>(i)] = Sense::ge;
      else if (s == Sense::ge) sf.sense[static_cast<std::size_t>(i)] = Sense::le;
    }
    keep.push_back(i);
  }

  const auto m = static_cast<Eigen::Index>(keep.size());
  const auto ns = sf.n_struct;
  Eigen::Index n_slack = 0, n_art = 0;
  for (auto i : keep) {
    const auto s = sf.sense[static_cast<std::size_t>(i)];
    if (s != Sense::eq) ++n_slack;
    if (s != Sense::le) ++n_art;
  }
  const Eigen::Index n_cols = ns + n_slack + n_art;
  RowMatrix T = RowMatrix::Zero(m, n_cols + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  Eigen::Index next_slack = ns, next_art = ns + n_slack;
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto i = keep[static_cast<std::size_t>(r)];
    T.row(r).head(ns) = sf.A.row(i);
    T(r, n_cols) = sf.b(i);
    switch (sf.sense[static_cast<std::size_t>(i)]) {
      case Sense::le:
        T(r, next_slack) = 1.0;
        basis[static_cast<std::size_t>(r)] = next_slack++;
        break;
      case Sense::ge:
        T(r, next_slack++) = -1.0;
        T(r, next_art) = 1.0;
        basis[static_cast<std::size_t>(r)] = next_art++;
        break;
      case Sense::eq:
        T(r, next_art) = 1.0;
        basis[static_cast<std::size_t>(r)] = next_art++;
        break;
    }
  }
  // Columns of the standard matrix before any pivoting, for refinement.
  const RowMatrix A0 = T.leftCols(n_cols);
  const Eigen::VectorXd b0 = T.col(n_cols);

  Tableau tab(std::move(T), std::move(basis), opt);
  const Eigen::Index first_art = ns + n_slack;
  std::vector<bool> allowed(static_cast<std::size_t>(n_cols), true);

  if (n_art > 0) {
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n_cols);
    c1.tail(n_art).setOnes();
    const auto st = tab.optimise(c1, allowed, sol.iterations);
    if (st == LpStatus::iteration_limit) {
      sol.status = st;
      return sol;
    }
    const double bnorm = b0.size() ? b0.cwiseAbs().maxCoeff() : 0.0;
    if (tab.value(c1) > 1e-9 * (1.0 + bnorm)) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    // Drive artificials out of the basis; rows where that fails are redundant.
    for (Eigen::Index r = tab.rows() - 1; r >= 0; --r) {
      if (tab.basis()[static_cast<std::size_t>(r)] < first_art) continue;
      Eigen::Index best = -1;
      double big = 1e-9;
      for (Eigen::Index j = 0; j < first_art; ++j) {
        if (std::abs(tab.at(r, j)) > big) {
          big = std::abs(tab.at(r, j));
          best = j;
        }
      }
      if (best >= 0) tab.pivot(r, best);
      else tab.remove_row(r);
    }
    for (Eigen::Index j = first_art; j < n_cols; ++j) allowed[static_cast<std::size_t>(j)] = false;
  }

  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n_cols);
  c2.head(ns) = sf.c;
  const auto st = tab.optimise(c2, allowed, sol.iterations);
  if (st != LpStatus::optimal) {
    sol.status = st;
    return sol;
  }

  // Basic values from the tableau, then one refinement solve against the
  // unpivoted columns to shed accumulated round-off.
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n_cols);
  const auto& B = tab.basis();
  for (Eigen::Index r = 0; r < tab.rows(); ++r) z(B[static_cast<std::size_t>(r)]) = std::max(tab.rhs(r), 0.0);
  if (tab.rows() == m && m > 0) {
    Eigen::MatrixXd Bm(m, m);
    for (Eigen::Index r = 0; r < m; ++r) Bm.col(r) = A0.col(B[static_cast<std::size_t>(r)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(Bm);
    const Eigen::VectorXd xb = lu.solve(b0);
    if (xb.allFinite() && (Bm * xb - b0).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + b0.cwiseAbs().maxCoeff()) &&
        xb.minCoeff() >= -1e-9) {
      for (Eigen::Index r = 0; r < m; ++r) z(B[static_cast<std::size_t>(r)]) = std::max(xb(r), 0.0);
    }
  }

  const auto n = static_cast<Eigen::Index>(lp.n_vars());
  sol.x.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& vm = sf.map[static_cast<std::size_t>(j)];
    switch (vm.kind) {
      case VarMap::fixed: sol.x(j) = vm.offset; break;
      case VarMap::shift: sol.x(j) = vm.offset + z(vm.col); break;
      case VarMap::reflect: sol.x(j) = vm.offset - z(vm.col); break;
      case VarMap::split: sol.x(j) = z(vm.col) - z(vm.col + 1); break;
    }
  }
  sol.objective = lp.objective.dot(sol.x);
  sol.status = LpStatus::optimal;
  return sol;
}

void dump(std::ostream& out, const LinearProgram& lp) {
  auto term_list = [&](const Eigen::VectorXd& coef) {
    std::ostringstream s;
    s << std::setprecision(10);
    bool first = true;
    for (Eigen::Index j = 0; j < coef.size(); ++j) {
      const double a = coef(j);
      if (a == 0.0) continue;
      if (first) s << (a < 0 ? "-" : "");
      else s << (a < 0 ? " - " : " + ");
      const double mag = std::abs(a);
      if (mag != 1.0) s << mag << " ";
      s << lp.var_names[static_cast<std::size_t>(j)];
      first = false;
    }
    if (first) s << "0";
    return s.str();
  };
  out << (lp.direction == Direction::minimize ? "minimize: " : "maximize: ")
      << term_list(lp.objective) << "\n";
  out << "subject to:\n";
  for (const auto& r : lp.rows) {
    if (!r.name.empty()) out << "  " << r.name << ": ";
    else out << "  ";
    out << term_list(r.coef) << (r.sense == Sense::le ? " <= " : r.sense == Sense::ge ? " >= " : " = ")
        << std::setprecision(10) << r.rhs << "\n";
  }
  out << "bounds:\n";
  for (std::size_t j = 0; j < lp.bounds.size(); ++j) {
    const auto& b = lp.bounds[j];
    if (b.lo == 0.0 && b.hi == kInf) continue;
    out << "  " << lp.var_names[j] << " ";
    if (b.lo == -kInf && b.hi == kInf) out << "free";
    else if (b.lo == b.hi) out << "= " << b.lo;
    else out << "in [" << b.lo << ", " << b.hi << "]";
    out << "\n";
  }
}

std::string dump(const LinearProgram& lp) {
  std::ostringstream s;
  dump(s, lp);
  return s.str();
}

}  // namespace deakit
