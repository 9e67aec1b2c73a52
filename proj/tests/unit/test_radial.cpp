#include "doctest.h"

#include "deakit/radial.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace deakit;
using namespace deakit::testing;

namespace {

BasicOptions opts(Orientation o, RtsSpec rts) {
  BasicOptions b;
  b.orientation = o;
  b.rts = rts;
  return b;
}

}  // namespace

TEST_CASE("radial: META BCC input scores") {
  const auto r = model_basic(meta(), opts(Orientation::input, RtsSpec::vrs()));
  CHECK(r.dmus[0].efficiency == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.dmus[1].efficiency == doctest::Approx(0.84957).epsilon(1e-4));
  CHECK(r.dmus[2].efficiency == doctest::Approx(0.56461).epsilon(1e-4));
  CHECK(r.dmus[3].efficiency == doctest::Approx(0.43103).epsilon(1e-4));
  CHECK(r.dmus[22].efficiency == doctest::Approx(0.22580).epsilon(1e-4));
}

TEST_CASE("radial: evaluation against another group's frontier") {
  auto o = opts(Orientation::input, RtsSpec::vrs());
  for (std::size_t j = 0; j < 8; ++j) o.dmu_eval.push_back(j);
  for (std::size_t j = 8; j < 14; ++j) o.dmu_ref.push_back(j);
  const auto r = model_basic(meta(), o);
  CHECK(r.dmus[2].efficiency == doctest::Approx(0.8));
}

TEST_CASE("radial: M1 CRS input and output") {
  const auto io = model_basic(m1(), opts(Orientation::input, RtsSpec::crs()));
  const std::vector<double> want{1, 0.5, 0.8, 0.25};
  for (std::size_t j = 0; j < 4; ++j) CHECK(io.dmus[j].efficiency == doctest::Approx(want[j]));
  const auto oo = model_basic(m1(), opts(Orientation::output, RtsSpec::crs()));
  CHECK(oo.dmus[1].efficiency == doctest::Approx(2.0));
  CHECK(io.dmus[0].classification == Classification::efficient);
  CHECK(io.dmus[1].classification == Classification::inefficient);
}

TEST_CASE("radial: scores agree with the brute-force oracle on random data") {
  for (const auto& d : random_corpus(7, 10, 7, 2)) {
    const auto all = all_columns(static_cast<int>(d.n_dmus()));
    for (auto [rts, orts] : {std::pair{RtsSpec::crs(), OracleRts::crs}, std::pair{RtsSpec::vrs(), OracleRts::vrs},
                             std::pair{RtsSpec::nirs(), OracleRts::nirs}}) {
      const auto io = model_basic(d, opts(Orientation::input, rts));
      const auto oo = model_basic(d, opts(Orientation::output, rts));
      for (int j = 0; j < static_cast<int>(d.n_dmus()); ++j) {
        CHECK(io.dmus[static_cast<std::size_t>(j)].efficiency ==
              doctest::Approx(oracle_radial_io(d.input(), d.output(), j, all, orts)).epsilon(1e-7));
        CHECK(oo.dmus[static_cast<std::size_t>(j)].efficiency ==
              doctest::Approx(oracle_radial_oo(d.input(), d.output(), j, all, orts)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("radial: non-discretionary input caps the projection") {
  Eigen::MatrixXd x(2, 2), y(1, 2);
  x << 2, 4, 10, 5;
  y << 2, 2;
  SpecialVariables sv;
  sv.nd_inputs = {1};
  const DeaData d(x, y, {"A", "B"}, {}, {}, sv);
  const auto r = model_basic(d, opts(Orientation::input, RtsSpec::crs()));
  CHECK(r.dmus[1].efficiency == doctest::Approx(1.0));
}

TEST_CASE("radial: max-slack stage and targets") {
  const auto r = model_basic(m1(), opts(Orientation::input, RtsSpec::vrs()));
  // D is projected radially to x = 2 at y = 2, i.e. onto A.
  CHECK(r.dmus[3].target_input(0) == doctest::Approx(2.0));
  CHECK(r.dmus[3].target_output(0) == doctest::Approx(2.0));
  CHECK(r.dmus[3].lambda(0) == doctest::Approx(1.0));
  CHECK(r.facets.lambdas);
  CHECK(r.facets.slacks);
}

TEST_CASE("radial: returnlp builds unsolved first-stage programs") {
  const auto lps = model_basic_lp(m1(), opts(Orientation::input, RtsSpec::vrs()));
  REQUIRE(lps.size() == 4);
  CHECK(lps[0].n_vars() == 5);
}

TEST_CASE("radial: FDH") {
  const auto r = model_fdh(m1(), opts(Orientation::input, RtsSpec::crs()));
  CHECK(r.dmus[1].efficiency == doctest::Approx(0.5));
  auto self = opts(Orientation::input, RtsSpec::crs());
  self.dmu_eval = {2};
  self.dmu_ref = {2};
  CHECK(model_fdh(m1(), self).dmus[0].efficiency == doctest::Approx(1.0));
  const auto f = model_fdh(meta(), opts(Orientation::input, RtsSpec::crs()));
  const auto v = model_basic(meta(), opts(Orientation::input, RtsSpec::vrs()));
  for (std::size_t j = 0; j < 23; ++j) CHECK(f.dmus[j].efficiency >= v.dmus[j].efficiency - 1e-9);
  for (const auto& d : random_corpus(11, 10, 8, 2)) {
    const auto fr = model_fdh(d, opts(Orientation::input, RtsSpec::crs()));
    for (int j = 0; j < static_cast<int>(d.n_dmus()); ++j)
      CHECK(fr.dmus[static_cast<std::size_t>(j)].efficiency ==
            doctest::Approx(oracle_fdh_io(d.input(), d.output(), j)));
  }
}

TEST_CASE("radial: directional model") {
  Eigen::MatrixXd x(1, 2), y(1, 2);
  x << 2, 4;
  y << 2, 2;
  const DeaData d(x, y, {"A", "B"});
  auto o = opts(Orientation::directional, RtsSpec::crs());
  o.dir_input = 2.0;
  o.dir_output = 0.0;
  const auto r = model_basic(d, o);
  CHECK(r.dmus[1].efficiency == doctest::Approx(1.0));
  CHECK(r.dmus[1].target_input(0) == doctest::Approx(2.0));
}

TEST_CASE("radial: range directional model") {
  // A sits at every input minimum and output maximum: zero direction.
  Eigen::MatrixXd x(1, 3), y(1, 3);
  x << 1, 2, 3;
  y << 3, 2, 1;
  const DeaData d(x, y);
  RdmOptions o;
  const auto r = model_rdm(d, o);
  CHECK(r.dmus[0].efficiency == doctest::Approx(0.0));
  CHECK(r.dmus[2].efficiency > 0.0);
  RdmOptions inv;
  inv.irdm = true;
  CHECK_NOTHROW(model_rdm(d, inv));
}

TEST_CASE("radial: invalid options") {
  auto o = opts(Orientation::input, RtsSpec::crs());
  o.dmu_eval = {10};
  CHECK_THROWS_AS(model_basic(m1(), o), DeaError);
  CHECK_THROWS_AS(parse_rts("bogus"), DeaError);
  CHECK_THROWS_AS(RtsSpec::grs(1.2, 0.8), DeaError);
}
