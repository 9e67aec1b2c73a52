#pragma once

#include "deakit/deakit.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace deakit::testing {

/// A(2,2), B(4,2), C(5,4), D(8,2): one input, one output.
inline DeaData m1() {
  Eigen::MatrixXd x(1, 4), y(1, 4);
  x << 2, 4, 5, 8;
  y << 2, 2, 4, 2;
  return DeaData(x, y, {"A", "B", "C", "D"});
}

inline const std::vector<double>& meta_x() {
  static const std::vector<double> v{2,    3,    5,     4.64, 6.4,   11,    9.4,   8.4,
                                     5.4,  4,    5.44,  5.7,  8.26,  6.76,  9,     10,
                                     12,   10.76, 12.98, 13.56, 10.4, 11.64, 10.68};
  return v;
}

inline const std::vector<double>& meta_y() {
  static const std::vector<double> v{1,    3,    4,    0.69, 2.41, 2,    3.37, 1.41,
                                     9.81, 8.29, 6.57, 8.69, 8.63, 7.63, 9,    11,
                                     12,   9.73, 9.27, 6.83, 7.25, 4.27, 2.5};
  return v;
}

/// The 23-DMU single input, single output metafrontier dataset (A..W).
inline DeaData meta() {
  const auto n = static_cast<Eigen::Index>(meta_x().size());
  Eigen::MatrixXd x(1, n), y(1, n);
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < n; ++j) {
    x(0, j) = meta_x()[static_cast<std::size_t>(j)];
    y(0, j) = meta_y()[static_cast<std::size_t>(j)];
    names.emplace_back(1, static_cast<char>('A' + j));
  }
  return DeaData(x, y, names);
}

/// Concave metafrontier (BCC io against all DMUs), A..W.
inline const std::vector<double>& meta_concave() {
  static const std::vector<double> v{1.00000, 0.84957, 0.56461, 0.43103, 0.37294, 0.20676,
                                     0.28194, 0.25149, 1.00000, 1.00000, 0.64855, 0.76639,
                                     0.52217, 0.56493, 0.51711, 0.89863, 1.00000, 0.49501,
                                     0.37771, 0.26545, 0.35718, 0.24889, 0.22580};
  return v;
}

/// Non-concave metafrontier (minimum over the three group frontiers), A..W.
inline const std::vector<double>& meta_nonconcave() {
  static const std::vector<double> v{1.00000, 1.00000, 0.80000, 0.43103, 0.42266, 0.22727,
                                     0.39787, 0.26250, 1.00000, 1.00000, 0.73529, 0.76639,
                                     0.52217, 0.59172, 0.51711, 1.00000, 1.00000, 0.49501,
                                     0.37771, 0.29499, 0.38462, 0.34364, 0.25749};
  return v;
}

inline const char* meta_groups() { return "G1=1-8;G2=9-14;G3=15-23"; }

/// Two periods of two DMUs: t1 A(2,2), B(4,2); t2 A(2,2.5), B(4,3).
inline MalmquistSeries m2() {
  Eigen::MatrixXd x(1, 2), y1(1, 2), y2(1, 2);
  x << 2, 4;
  y1 << 2, 2;
  y2 << 2.5, 3;
  return MalmquistSeries({DeaData(x, y1, {"A", "B"}), DeaData(x, y2, {"A", "B"})}, {"t1", "t2"});
}

/// A: x fuzzy (2,2,1,1), y = 2; B: x fuzzy (4,4,1,1), y = 2.
inline FuzzyDeaData m3() {
  FuzzyMatrix in;
  in.mL = Eigen::MatrixXd(1, 2);
  in.mL << 2, 4;
  in.mR = in.mL;
  in.dL = Eigen::MatrixXd::Ones(1, 2);
  in.dR = Eigen::MatrixXd::Ones(1, 2);
  Eigen::MatrixXd y(1, 2);
  y << 2, 2;
  return FuzzyDeaData(in, FuzzyMatrix::crisp(y), {"A", "B"});
}

/// Random strictly positive instance with entries in [1, 10].
inline DeaData random_instance(std::mt19937_64& rng, int n, int m, int s) {
  std::uniform_real_distribution<double> u(1.0, 10.0);
  Eigen::MatrixXd x(m, n), y(s, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) x(i, j) = u(rng);
    for (int r = 0; r < s; ++r) y(r, j) = u(rng);
  }
  return DeaData(x, y);
}

/// Corpus of random instances with n <= nmax and m, s <= dmax.
inline std::vector<DeaData> random_corpus(std::uint64_t seed, int count, int nmax = 12, int dmax = 3) {
  std::mt19937_64 rng(seed);
  std::vector<DeaData> out;
  for (int k = 0; k < count; ++k) {
    std::uniform_int_distribution<int> nd(3, nmax), dd(1, dmax);
    const int n = nd(rng), m = dd(rng), s = dd(rng);
    out.push_back(random_instance(rng, n, m, s));
  }
  return out;
}

inline std::vector<double> scores(const DeaResult& r) {
  std::vector<double> v;
  for (const auto& d : r.dmus) v.push_back(d.efficiency);
  return v;
}

}  // namespace deakit::testing
