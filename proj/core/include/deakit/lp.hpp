#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace deakit {

enum class Sense { le, eq, ge };
enum class Direction { minimize, maximize };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// lo <= x <= hi. The default is the nonnegative orthant.
struct VarBound {
  double lo = 0.0;
  double hi = kInf;

  static VarBound nonnegative() { return {0.0, kInf}; }
  static VarBound free() { return {-kInf, kInf}; }
  static VarBound boxed(double lo, double hi) { return {lo, hi}; }
  static VarBound fixed(double v) { return {v, v}; }
};

struct Constraint {
  Eigen::VectorXd coef;
  Sense sense = Sense::ge;
  double rhs = 0.0;
  std::string name;
};

class LinearProgram {
 public:
  LinearProgram() = default;
  LinearProgram(Direction dir, std::size_t n_vars);

  /// Adds a variable and returns its index.
  std::size_t add_var(std::string name, double obj = 0.0, VarBound bound = {});

  void add_row(Eigen::VectorXd coef, Sense sense, double rhs, std::string name = {});

  Direction direction = Direction::minimize;
  Eigen::VectorXd objective;
  std::vector<Constraint> rows;
  std::vector<VarBound> bounds;
  std::vector<std::string> var_names;

  std::size_t n_vars() const { return static_cast<std::size_t>(objective.size()); }
  std::size_t n_rows() const { return rows.size(); }

  /// Throws DeaError when rows and bounds disagree with the objective length.
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

std::string_view to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
  std::size_t iterations = 0;

  bool optimal() const { return status == LpStatus::optimal; }
};

struct SolverOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  std::size_t max_iterations = 50000;
};

/// Dense two-phase primal simplex. Deterministic for identical input bits.
LpSolution solve(const LinearProgram& lp, const SolverOptions& opt = {});

/// Human-readable dump: objective line then one constraint per line.
void dump(std::ostream& out, const LinearProgram& lp);
std::string dump(const LinearProgram& lp);

}  // namespace deakit
