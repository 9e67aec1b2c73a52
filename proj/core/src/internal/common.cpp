#include "internal/common.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace deakit {

std::string DeaResult::dmu_label(std::size_t eval_pos) const {
  return data->dmunames().at(dmu_eval.at(eval_pos));
}

std::string DeaResult::ref_label(std::size_t ref_pos) const {
  return data->dmunames().at(dmu_ref.at(ref_pos));
}

}  // namespace deakit

namespace deakit::detail {

std::vector<std::size_t> resolve_set(const std::vector<std::size_t>& given, std::size_t n,
                                     const char* what) {
  if (given.empty()) {
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    return all;
  }
  std::set<std::size_t> seen;
  for (auto j : given) {
    if (j >= n)
      throw DeaError(std::string(what) + ": DMU index " + std::to_string(j + 1) +
                     " out of range [1, " + std::to_string(n) + "]");
    if (!seen.insert(j).second)
      throw DeaError(std::string(what) + ": DMU index " + std::to_string(j + 1) + " repeated");
  }
  return given;
}

bool contains(const std::vector<std::size_t>& v, std::size_t i) {
  return std::find(v.begin(), v.end(), i) != v.end();
}

RefBlock ref_block(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                   const std::vector<std::size_t>& ref) {
  RefBlock b{Eigen::MatrixXd(X.rows(), static_cast<Eigen::Index>(ref.size())),
             Eigen::MatrixXd(Y.rows(), static_cast<Eigen::Index>(ref.size()))};
  for (std::size_t k = 0; k < ref.size(); ++k) {
    b.X.col(static_cast<Eigen::Index>(k)) = X.col(static_cast<Eigen::Index>(ref[k]));
    b.Y.col(static_cast<Eigen::Index>(k)) = Y.col(static_cast<Eigen::Index>(ref[k]));
  }
  return b;
}

std::size_t add_lambdas(LinearProgram& lp, const DeaData& data, const std::vector<std::size_t>& ref) {
  const auto l0 = lp.n_vars();
  for (auto j : ref) lp.add_var("lambda_" + data.dmunames()[j]);
  return l0;
}

void add_rts_rows(LinearProgram& lp, const RtsSpec& rts, std::size_t l0, Eigen::Index nref) {
  const auto lo = rts.lower();
  const auto hi = rts.upper();
  if (!lo && !hi) return;
  Eigen::VectorXd row = zero_row(lp);
  row.segment(static_cast<Eigen::Index>(l0), nref).setOnes();
  if (lo && hi && *lo == *hi) {
    lp.add_row(row, Sense::eq, *lo, "rts");
    return;
  }
  if (lo && *lo > 0.0) lp.add_row(row, Sense::ge, *lo, "rts_lower");
  if (hi) lp.add_row(row, Sense::le, *hi, "rts_upper");
}

void set_projection(DmuResult& r, const RefBlock& ref, const Eigen::VectorXd& lambda) {
  r.lambda = lambda;
  for (Eigen::Index k = 0; k < r.lambda.size(); ++k)
    if (r.lambda(k) < 0.0 && r.lambda(k) > -1e-9) r.lambda(k) = 0.0;
  r.target_input = ref.X * r.lambda;
  r.target_output = ref.Y * r.lambda;
}

DmuStatus dmu_status(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return DmuStatus::optimal;
    case LpStatus::infeasible: return DmuStatus::infeasible;
    case LpStatus::unbounded: return DmuStatus::unbounded;
    case LpStatus::iteration_limit: return DmuStatus::numerical;
  }
  return DmuStatus::numerical;
}

DmuResult failed(DmuStatus status, std::size_t m, std::size_t s, Eigen::Index nref,
                 std::string flag) {
  DmuResult r;
  r.status = status;
  r.efficiency = NA;
  r.lambda = Eigen::VectorXd::Constant(nref, NA);
  r.slack_input = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), NA);
  r.target_input = r.slack_input;
  r.slack_output = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(s), NA);
  r.target_output = r.slack_output;
  if (!flag.empty()) r.flags.push_back(std::move(flag));
  return r;
}

Classification classify(double score, double ideal, double slack_objective) {
  if (is_na(score)) return Classification::unknown;
  if (std::abs(score - ideal) > kEfficiencyTol) return Classification::inefficient;
  if (is_na(slack_objective)) return Classification::unknown;
  return slack_objective <= kEfficiencyTol ? Classification::efficient
                                           : Classification::weakly_efficient;
}

std::vector<std::size_t> indices_of_kind(const DeaData& d, bool input, VarKind kind) {
  std::vector<std::size_t> out;
  const auto n = input ? d.n_inputs() : d.n_outputs();
  for (std::size_t k = 0; k < n; ++k)
    if ((input ? d.input_kind(k) : d.output_kind(k)) == kind) out.push_back(k);
  return out;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto count = std::min<std::size_t>(threads, n);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::shared_ptr<const DeaData> share(const DeaData& d) { return std::make_shared<const DeaData>(d); }

}  // namespace deakit::detail
