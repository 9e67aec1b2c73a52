#pragma once

#include "deakit/data.hpp"
#include "deakit/lp.hpp"
#include "deakit/result.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace deakit::detail {

/// Empty => 0..n-1; otherwise checks range and duplicates.
std::vector<std::size_t> resolve_set(const std::vector<std::size_t>& given, std::size_t n,
                                     const char* what);

bool contains(const std::vector<std::size_t>& v, std::size_t i);

/// Columns of X and Y restricted to a reference set.
struct RefBlock {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;
  Eigen::Index n() const { return X.cols(); }
};

RefBlock ref_block(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                   const std::vector<std::size_t>& ref);

/// Adds one nonnegative intensity per reference DMU, returns the first index.
std::size_t add_lambdas(LinearProgram& lp, const DeaData& data, const std::vector<std::size_t>& ref);

/// Sum-of-intensity bounds implied by the returns-to-scale regime.
void add_rts_rows(LinearProgram& lp, const RtsSpec& rts, std::size_t l0, Eigen::Index nref);

inline Eigen::VectorXd zero_row(const LinearProgram& lp) {
  return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lp.n_vars()));
}

/// Copies a row block segment into positions [l0, l0 + len).
inline void put(Eigen::VectorXd& row, std::size_t l0, const Eigen::RowVectorXd& values,
                double scale = 1.0) {
  row.segment(static_cast<Eigen::Index>(l0), values.size()) = scale * values.transpose();
}

/// Fills lambda and targets (X lambda, Y lambda).
void set_projection(DmuResult& r, const RefBlock& ref, const Eigen::VectorXd& lambda);

DmuStatus dmu_status(LpStatus s);

/// Sizes every per-DMU vector with NA and records the failure.
DmuResult failed(DmuStatus status, std::size_t m, std::size_t s, Eigen::Index nref,
                 std::string flag = {});

Classification classify(double score, double ideal, double slack_objective);

std::vector<std::size_t> indices_of_kind(const DeaData& d, bool input, VarKind kind);

/// Runs fn(k) for k in [0, n) on up to `threads` workers; results must be
/// written to pre-sized slots so the outcome is thread-count independent.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

std::shared_ptr<const DeaData> share(const DeaData& d);

}  // namespace deakit::detail
