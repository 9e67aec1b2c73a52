#include "deakit/metafrontier.hpp"

#include "internal/common.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace deakit {

void Grouping::validate(std::size_t n_dmus) const {
  if (members.empty()) throw DeaError("groups: at least one group required");
  if (names.size() != members.size()) throw DeaError("groups: one name per group required");
  std::vector<bool> seen(n_dmus, false);
  for (std::size_t g = 0; g < members.size(); ++g) {
    if (members[g].empty()) throw DeaError("groups: group '" + names[g] + "' is empty");
    for (auto j : members[g]) {
      if (j >= n_dmus) throw DeaError("groups: index out of range in group '" + names[g] + "'");
      if (seen[j]) throw DeaError("groups: DMU " + std::to_string(j + 1) + " belongs to more than one group");
      seen[j] = true;
    }
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t to_index(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v == 0)
    throw DeaError("groups: bad DMU index '" + std::string(s) + "'");
  return v - 1;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (std::size_t pos; (pos = s.find(sep)) != std::string_view::npos; s.remove_prefix(pos + 1))
    out.push_back(s.substr(0, pos));
  out.push_back(s);
  return out;
}

}  // namespace

Grouping parse_grouping(std::string_view spec, std::size_t n_dmus) {
  Grouping g;
  for (auto part : split(spec, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw DeaError("groups: expected NAME=RANGES, got '" + std::string(part) + "'");
    g.names.emplace_back(trim(part.substr(0, eq)));
    std::vector<std::size_t> members;
    for (auto item : split(part.substr(eq + 1), ',')) {
      const auto dash = item.find('-');
      if (dash == std::string_view::npos) {
        members.push_back(to_index(item));
        continue;
      }
      const auto a = to_index(item.substr(0, dash)), b = to_index(item.substr(dash + 1));
      if (b < a) throw DeaError("groups: descending range '" + std::string(item) + "'");
      for (auto j = a; j <= b; ++j) members.push_back(j);
    }
    g.members.push_back(std::move(members));
  }
  g.validate(n_dmus);
  return g;
}

MetafrontierResult metafrontier(const DeaData& data, const Grouping& grouping, const BasicOptions& opt,
                                unsigned threads) {
  grouping.validate(data.n_dmus());
  MetafrontierResult res;
  res.grouping = grouping;
  for (const auto& g : grouping.members) res.dmus.insert(res.dmus.end(), g.begin(), g.end());
  for (auto j : res.dmus) res.dmunames.push_back(data.dmunames()[j]);
  const auto k = grouping.size();
  const auto nd = static_cast<Eigen::Index>(res.dmus.size());
  res.group_scores = Eigen::MatrixXd::Constant(nd, static_cast<Eigen::Index>(k), NA);

  std::vector<Eigen::Index> offset(k, 0);
  for (std::size_t g = 1; g < k; ++g)
    offset[g] = offset[g - 1] + static_cast<Eigen::Index>(grouping.members[g - 1].size());

  // Task k*k is the concave run against all DMUs.
  std::vector<DeaResult> runs(k * k + 1);
  detail::parallel_for(k * k + 1, threads, [&](std::size_t task) {
    BasicOptions o = opt;
    if (task == k * k) {
      o.dmu_eval = res.dmus;
      o.dmu_ref.clear();
    } else {
      o.dmu_eval = grouping.members[task / k];
      o.dmu_ref = grouping.members[task % k];
    }
    runs[task] = model_basic(data, o);
  });
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t r = 0; r < k; ++r) {
      const auto& run = runs[e * k + r];
      for (std::size_t q = 0; q < run.dmus.size(); ++q)
        res.group_scores(offset[e] + static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(r)) =
            run.dmus[q].efficiency;
    }
  res.nonconcave = Eigen::VectorXd::Constant(nd, NA);
  res.concave.resize(nd);
  for (Eigen::Index i = 0; i < nd; ++i) {
    for (Eigen::Index r = 0; r < res.group_scores.cols(); ++r) {
      const double v = res.group_scores(i, r);
      if (!is_na(v) && (is_na(res.nonconcave(i)) || v < res.nonconcave(i))) res.nonconcave(i) = v;
    }
    res.concave(i) = runs[k * k].dmus[static_cast<std::size_t>(i)].efficiency;
  }
  return res;
}

}  // namespace deakit
