#include "doctest.h"

#include "deakit/malmquist.hpp"
#include "deakit/radial.hpp"
#include "support/fixtures.hpp"

using namespace deakit;
using namespace deakit::testing;

TEST_CASE("malmquist: cross-period distance") {
  const auto s = m2();
  const Eigen::VectorXd x = s[1].input().col(0), y = s[1].output().col(0);
  CHECK(malmquist_distance(s, {0}, {0, 1}, x, y, Orientation::input, RtsKind::crs) == doctest::Approx(1.25));
}

TEST_CASE("malmquist: own-period distance equals the basic model") {
  const auto s = m2();
  for (auto rts : {RtsKind::crs, RtsKind::vrs}) {
    BasicOptions b;
    b.rts = rts == RtsKind::crs ? RtsSpec::crs() : RtsSpec::vrs();
    for (std::size_t t = 0; t < 2; ++t) {
      const auto r = model_basic(s[t], b);
      for (Eigen::Index j = 0; j < 2; ++j)
        CHECK(malmquist_distance(s, {t}, {0, 1}, s[t].input().col(j), s[t].output().col(j), Orientation::input,
                                 rts) == doctest::Approx(r.dmus[static_cast<std::size_t>(j)].efficiency));
    }
  }
}

TEST_CASE("malmquist: M2 FGNZ decomposition") {
  const auto r = malmquist_index(m2());
  const auto& I = r.indices;
  CHECK(I.at("mi")(0, 0) == doctest::Approx(1.25));
  CHECK(I.at("ec")(0, 0) == doctest::Approx(1.0));
  CHECK(I.at("tc")(0, 0) == doctest::Approx(1.25));
  CHECK(I.at("mi")(1, 0) == doctest::Approx(1.5));
  CHECK(I.at("ec")(1, 0) == doctest::Approx(1.2));
  CHECK(I.at("tc")(1, 0) == doctest::Approx(1.25));
}

TEST_CASE("malmquist: biased technical change identity on M2") {
  MalmquistOptions o;
  o.type2 = MalmquistType::bias;
  const auto& I = malmquist_index(m2(), o).indices;
  for (Eigen::Index j = 0; j < 2; ++j)
    CHECK(std::abs(I.at("matech")(j, 0) * I.at("obtech")(j, 0) * I.at("ibtech")(j, 0) - I.at("tc")(j, 0)) <= 1e-9);
}

TEST_CASE("malmquist: identical periods give unit indices") {
  const auto base = m2()[0];
  const MalmquistSeries s({base, base});
  for (auto rts : {RtsKind::crs, RtsKind::vrs})
    for (auto t1 : {FrontierType::contemporary, FrontierType::sequential, FrontierType::global}) {
      MalmquistOptions o;
      o.rts = rts;
      o.type1 = t1;
      for (const auto& [name, m] : malmquist_index(s, o).indices)
        for (Eigen::Index i = 0; i < m.size(); ++i) CHECK(m(i) == doctest::Approx(1.0));
    }
}

TEST_CASE("malmquist: option validation") {
  MalmquistOptions o;
  o.type2 = MalmquistType::rd;
  CHECK_THROWS_AS(malmquist_index(m2(), o), DeaError);
  o.rts = RtsKind::vrs;
  CHECK_NOTHROW(malmquist_index(m2(), o));
  CHECK_THROWS_AS(parse_frontier_type("x"), DeaError);
  CHECK(parse_malmquist_type("gl") == MalmquistType::gl);
}
