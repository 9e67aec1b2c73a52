#include "doctest.h"

#include "deakit/bootstrap.hpp"
#include "support/fixtures.hpp"

#include <cstring>

using namespace deakit;
using namespace deakit::testing;

TEST_CASE("bootstrap: bandwidth rules") {
  CHECK(bandwidth({0.5, 0.7, 1.0}, Bandwidth{}) == 0.014);
  const std::vector<double> s{0.3, 0.45, 0.5, 0.62, 0.7, 0.81, 0.9, 1.0, 1.0, 0.55};
  const double h1 = bandwidth(s, {BandwidthRule::h1, 0});
  const double h2 = bandwidth(s, {BandwidthRule::h2, 0});
  CHECK(h2 / h1 == doctest::Approx(0.9 / 1.06));
  CHECK(bandwidth(s, {BandwidthRule::h3, 0}) > 0.0);
  CHECK(bandwidth(s, {BandwidthRule::h4, 0}) > 0.0);
  CHECK_THROWS_AS(bandwidth({1.0, 1.0, 1.0}, {BandwidthRule::h1, 0}), DeaError);
  CHECK(parse_bandwidth_rule("h2") == BandwidthRule::h2);
}

TEST_CASE("bootstrap: single replication") {
  BootstrapOptions o;
  o.B = 1;
  const auto r = bootstrap_basic(m1(), o);
  CHECK(r.estimates_bootstrap.rows() == 1);
  CHECK(r.estimates_bootstrap.cols() == 4);
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(r.ci_low(j) == r.ci_up(j));
}

TEST_CASE("bootstrap: same seed, same bits") {
  BootstrapOptions o;
  o.B = 30;
  o.seed = 99;
  const auto a = bootstrap_basic(meta(), o);
  const auto b = bootstrap_basic(meta(), o);
  CHECK(std::memcmp(a.estimates_bootstrap.data(), b.estimates_bootstrap.data(),
                    sizeof(double) * static_cast<std::size_t>(a.estimates_bootstrap.size())) == 0);
  o.seed = 100;
  const auto c = bootstrap_basic(meta(), o);
  CHECK(!(c.estimates_bootstrap.array() == a.estimates_bootstrap.array()).all());
}

TEST_CASE("bootstrap: META VRS input scores are bias corrected downwards") {
  BootstrapOptions o;
  o.rts = RtsSpec::vrs();
  o.B = 100;
  o.seed = 7;
  const auto r = bootstrap_basic(meta(), o);
  for (Eigen::Index j = 0; j < r.score.size(); ++j) {
    CHECK(r.score_bc(j) < r.score(j));
    CHECK(r.ci_up(j) <= 1.0 + 1e-9);
    CHECK(r.ci_low(j) <= r.ci_up(j));
  }
}

TEST_CASE("bootstrap: invalid options") {
  BootstrapOptions o;
  o.B = 0;
  CHECK_THROWS_AS(bootstrap_basic(m1(), o), DeaError);
  BootstrapOptions a;
  a.alpha = 1.5;
  CHECK_THROWS_AS(bootstrap_basic(m1(), a), DeaError);
}
