// Sanity checks of the reference implementations themselves against hand
// solutions, so that agreement with the library means something.

#include "doctest.h"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace deakit::testing;

TEST_CASE("oracle: brute LP on a textbook problem") {
  BruteLp lp(true);
  const int x = lp.add_var(3.0), y = lp.add_var(5.0);
  lp.add_row({{x, 1.0}}, BruteLp::Sense::le, 4);
  lp.add_row({{y, 2.0}}, BruteLp::Sense::le, 12);
  lp.add_row({{x, 3.0}, {y, 2.0}}, BruteLp::Sense::le, 18);
  const auto s = lp.solve();
  REQUIRE(s);
  CHECK(s->objective == doctest::Approx(36.0));
  CHECK(s->x(0) == doctest::Approx(2.0));

  BruteLp inf(false);
  const int z = inf.add_var(1.0);
  inf.add_row({{z, 1.0}}, BruteLp::Sense::ge, 2);
  inf.add_row({{z, 1.0}}, BruteLp::Sense::le, 1);
  CHECK(!inf.solve());
}

TEST_CASE("oracle: M1 hand values") {
  const auto d = m1();
  const auto& X = d.input();
  const auto& Y = d.output();
  const auto all = all_columns(4);
  CHECK(oracle_radial_io(X, Y, 2, all, OracleRts::crs) == doctest::Approx(0.8));
  CHECK(oracle_radial_io(X, Y, 2, all, OracleRts::vrs) == doctest::Approx(1.0));
  CHECK(oracle_additive(X, Y, X.col(3), Y.col(3), all, OracleRts::vrs) == doctest::Approx(6.0));
  CHECK(oracle_efficient(X, Y, OracleRts::vrs) == std::vector<int>{0, 2});
  CHECK(oracle_extreme(X, Y, OracleRts::vrs) == std::vector<int>{0, 2});
  CHECK(oracle_maximal_friends(X, Y, OracleRts::vrs) == std::vector<std::vector<int>>{{0, 2}});
  CHECK(oracle_addmin(X, Y, 3, OracleRts::vrs) == doctest::Approx(5.0));
  CHECK(oracle_fdh_io(X, Y, 3) == doctest::Approx(0.25));
}
