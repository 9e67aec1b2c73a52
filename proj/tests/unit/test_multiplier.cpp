#include "doctest.h"

#include "deakit/multiplier.hpp"
#include "deakit/radial.hpp"
#include "support/fixtures.hpp"

using namespace deakit;
using namespace deakit::testing;

TEST_CASE("multiplier: M1 CRS equals envelopment scores") {
  const auto r = model_multiplier(m1());
  const std::vector<double> want{1, 0.5, 0.8, 0.25};
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(r.dmus[j].efficiency == doctest::Approx(want[j]));
    REQUIRE(r.dmus[j].multipliers);
  }
  CHECK(r.facets.multipliers);
}

TEST_CASE("multiplier: single DMU normalises to 1 / x") {
  Eigen::MatrixXd x(1, 1), y(1, 1);
  x << 4;
  y << 7;
  const auto r = model_multiplier(DeaData(x, y));
  CHECK(r.dmus[0].efficiency == doctest::Approx(1.0));
  CHECK(r.dmus[0].multipliers->input(0) == doctest::Approx(0.25));
}

TEST_CASE("multiplier: duality holds for every rts and orientation") {
  for (const auto& d : random_corpus(3, 15)) {
    for (auto o : {Orientation::input, Orientation::output})
      for (auto rts : {RtsSpec::crs(), RtsSpec::vrs(), RtsSpec::nirs(), RtsSpec::ndrs(), RtsSpec::grs(0.8, 1.2)}) {
        BasicOptions b;
        b.orientation = o;
        b.rts = rts;
        MultiplierOptions m;
        m.orientation = o;
        m.rts = rts;
        const auto e = model_basic(d, b);
        const auto u = model_multiplier(d, m);
        for (std::size_t j = 0; j < d.n_dmus(); ++j)
          CHECK(u.dmus[j].efficiency == doctest::Approx(e.dmus[j].efficiency).epsilon(1e-7));
      }
  }
}

TEST_CASE("multiplier: large epsilon gives NA") {
  MultiplierOptions m;
  m.epsilon = 10.0;
  const auto r = model_multiplier(m1(), m);
  CHECK(is_na(r.dmus[1].efficiency));
  CHECK(r.dmus[1].status == DmuStatus::infeasible);
}
