#include "doctest.h"

#include "deakit/lp.hpp"
#include "deakit/types.hpp"

using namespace deakit;

TEST_CASE("lp: one-variable minimisation") {
  LinearProgram lp(Direction::minimize, 0);
  const auto t = lp.add_var("theta", 1.0);
  Eigen::VectorXd row(1);
  row(0) = 2.0;
  lp.add_row(row, Sense::ge, 1.0);
  const auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.x(static_cast<Eigen::Index>(t)) == doctest::Approx(0.5));
  CHECK(sol.objective == doctest::Approx(0.5));
}

TEST_CASE("lp: unbounded and infeasible programs") {
  LinearProgram up(Direction::maximize, 0);
  up.add_var("x", 1.0);
  CHECK(solve(up).status == LpStatus::unbounded);

  LinearProgram inf(Direction::minimize, 0);
  inf.add_var("x", 0.0);
  inf.add_row(Eigen::VectorXd::Ones(1), Sense::ge, 1.0);
  inf.add_row(Eigen::VectorXd::Ones(1), Sense::le, 0.0);
  CHECK(solve(inf).status == LpStatus::infeasible);
}

TEST_CASE("lp: free and boxed variables, equality rows") {
  // min x - y  s.t.  x + y = 4, -3 <= x <= 10, y free, y <= 6 via row
  LinearProgram lp(Direction::minimize, 0);
  lp.add_var("x", 1.0, VarBound::boxed(-3.0, 10.0));
  lp.add_var("y", -1.0, VarBound::free());
  Eigen::VectorXd a(2), b(2);
  a << 1, 1;
  b << 0, 1;
  lp.add_row(a, Sense::eq, 4.0);
  lp.add_row(b, Sense::le, 6.0);
  const auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.x(0) == doctest::Approx(-2.0));
  CHECK(sol.x(1) == doctest::Approx(6.0));
  CHECK(sol.objective == doctest::Approx(-8.0));
}

TEST_CASE("lp: classic two-variable maximisation") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
  LinearProgram lp(Direction::maximize, 0);
  lp.add_var("x", 3.0);
  lp.add_var("y", 5.0);
  Eigen::VectorXd r1(2), r2(2), r3(2);
  r1 << 1, 0;
  r2 << 0, 2;
  r3 << 3, 2;
  lp.add_row(r1, Sense::le, 4);
  lp.add_row(r2, Sense::le, 12);
  lp.add_row(r3, Sense::le, 18);
  const auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(36.0));
  CHECK(sol.x(0) == doctest::Approx(2.0));
  CHECK(sol.x(1) == doctest::Approx(6.0));
}

TEST_CASE("lp: degenerate program terminates") {
  // Several redundant constraints through the optimum.
  LinearProgram lp(Direction::maximize, 0);
  lp.add_var("x", 1.0);
  lp.add_var("y", 1.0);
  for (int k = 1; k <= 6; ++k) {
    Eigen::VectorXd r(2);
    r << k, 1;
    lp.add_row(r, Sense::le, k);
    r << 1, k;
    lp.add_row(r, Sense::le, k);
  }
  const auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("lp: dump lists objective and rows") {
  LinearProgram lp(Direction::minimize, 0);
  lp.add_var("theta", 1.0);
  lp.add_row(Eigen::VectorXd::Constant(1, 2.0), Sense::ge, 1.0, "c1");
  const auto text = dump(lp);
  CHECK(text.find("theta") != std::string::npos);
  CHECK(text.find(">=") != std::string::npos);
}

TEST_CASE("lp: inconsistent dimensions are rejected") {
  LinearProgram lp(Direction::minimize, 0);
  lp.add_var("x", 1.0);
  lp.rows.push_back({Eigen::VectorXd::Ones(3), Sense::ge, 1.0, ""});
  CHECK_THROWS_AS(lp.validate(), DeaError);
}
