#include "doctest.h"

#include "deakit/cross.hpp"
#include "deakit/multiplier.hpp"
#include "support/fixtures.hpp"

using namespace deakit;
using namespace deakit::testing;

TEST_CASE("cross: M1 rows are identical") {
  const auto r = cross_efficiency(m1());
  const std::vector<double> want{1, 0.5, 0.8, 0.25};
  for (const auto* m : {&r.arbitrary, &*r.m2_agg, &*r.m2_ben, &*r.m3_agg, &*r.m3_ben}) {
    for (Eigen::Index o = 0; o < 4; ++o)
      for (Eigen::Index k = 0; k < 4; ++k)
        CHECK(m->cross_eff(o, k) == doctest::Approx(want[static_cast<std::size_t>(k)]));
    for (Eigen::Index k = 0; k < 4; ++k) {
      CHECK(m->e(k) == doctest::Approx(want[static_cast<std::size_t>(k)]));
      CHECK(m->maverick(k) == doctest::Approx(0.0));
    }
  }
  CrossOptions noself;
  noself.selfapp = false;
  const auto s = cross_efficiency(m1(), noself);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(s.arbitrary.e(k) == doctest::Approx(want[static_cast<std::size_t>(k)]));
}

TEST_CASE("cross: single DMU") {
  const auto r = cross_efficiency(DeaData(Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1)));
  CHECK(r.arbitrary.cross_eff(0, 0) == doctest::Approx(1.0));
  CHECK(r.arbitrary.e(0) == doctest::Approx(1.0));
  CHECK(r.arbitrary.A(0) == doctest::Approx(1.0));
  CHECK(r.arbitrary.maverick(0) == doctest::Approx(0.0));
}

TEST_CASE("cross: diagonal and aggregates") {
  for (const auto& d : random_corpus(41, 10)) {
    const auto r = cross_efficiency(d);
    const auto n = static_cast<Eigen::Index>(d.n_dmus());
    for (const auto* m : {&r.arbitrary, &*r.m2_agg, &*r.m2_ben, &*r.m3_agg, &*r.m3_ben})
      for (Eigen::Index k = 0; k < n; ++k) CHECK(m->cross_eff(k, k) == doctest::Approx(r.efficiency(k)).epsilon(1e-7));
    CrossMethod without = r.arbitrary;
    cross_aggregates(without, false);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double lhs = r.arbitrary.e(k);
      const double rhs = (static_cast<double>(n - 1) * without.e(k) + r.arbitrary.cross_eff(k, k)) / static_cast<double>(n);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
      CHECK(r.arbitrary.maverick(k) == doctest::Approx((r.arbitrary.cross_eff(k, k) - r.arbitrary.e(k)) / r.arbitrary.e(k)));
    }
  }
}

TEST_CASE("cross: benevolent scores dominate aggressive ones on average") {
  for (const auto& d : random_corpus(42, 5)) {
    const auto r = cross_efficiency(d);
    CHECK(r.m2_ben->e.sum() >= r.m2_agg->e.sum() - 1e-9);
    CHECK(r.m3_ben->e.sum() >= r.m3_agg->e.sum() - 1e-9);
  }
}

TEST_CASE("cross: correction keeps scores nonnegative") {
  CrossOptions o;
  o.rts = RtsSpec::vrs();
  o.correction = true;
  for (const auto& d : random_corpus(43, 10)) {
    const auto r = cross_efficiency(d, o);
    for (const auto* m : {&r.arbitrary, &*r.m2_agg, &*r.m2_ben, &*r.m3_agg, &*r.m3_ben})
      for (Eigen::Index i = 0; i < m->cross_eff.size(); ++i)
        if (!is_na(m->cross_eff(i))) CHECK(m->cross_eff(i) >= -1e-9);
  }
}
