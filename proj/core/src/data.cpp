#include "deakit/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace deakit {

namespace {

std::vector<std::string> auto_names(std::vector<std::string> names, std::size_t n,
                                    const std::string& prefix, const char* what) {
  if (names.empty()) {
    names.reserve(n);
    for (std::size_t j = 0; j < n; ++j) names.push_back(prefix + std::to_string(j + 1));
    return names;
  }
  if (names.size() != n)
    throw DeaError(std::string(what) + ": expected " + std::to_string(n) + " names, got " +
                   std::to_string(names.size()));
  return names;
}

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& s : names)
    if (!seen.insert(s).second)
      throw DeaError(std::string(what) + ": duplicate label '" + s + "'");
}

void check_indices(const std::vector<std::size_t>& idx, std::size_t bound, const char* what) {
  for (auto i : idx)
    if (i >= bound)
      throw DeaError(std::string(what) + ": index " + std::to_string(i + 1) + " out of range [1, " +
                     std::to_string(bound) + "]");
}

void check_special(const SpecialVariables& sv, std::size_t m, std::size_t s) {
  check_indices(sv.nc_inputs, m, "nc_inputs");
  check_indices(sv.nd_inputs, m, "nd_inputs");
  check_indices(sv.ud_inputs, m, "ud_inputs");
  check_indices(sv.nc_outputs, s, "nc_outputs");
  check_indices(sv.nd_outputs, s, "nd_outputs");
  check_indices(sv.ud_outputs, s, "ud_outputs");
  auto one_flag = [](std::size_t bound, const char* side,
                     std::initializer_list<const std::vector<std::size_t>*> sets) {
    std::vector<int> count(bound, 0);
    for (const auto* set : sets) {
      std::set<std::size_t> uniq(set->begin(), set->end());
      for (auto i : uniq) ++count[i];
    }
    for (std::size_t i = 0; i < bound; ++i)
      if (count[i] > 1)
        throw DeaError(std::string(side) + " " + std::to_string(i + 1) +
                       " carries more than one special flag (nc/nd/ud)");
  };
  one_flag(m, "input", {&sv.nc_inputs, &sv.nd_inputs, &sv.ud_inputs});
  one_flag(s, "output", {&sv.nc_outputs, &sv.nd_outputs, &sv.ud_outputs});
}

void magnitude_diagnostics(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                           std::vector<std::string>& diag) {
  double maxabs = 0.0;
  double minabs = std::numeric_limits<double>::infinity();
  bool nonpositive = false;
  for (const auto* mat : {&x, &y}) {
    for (Eigen::Index k = 0; k < mat->size(); ++k) {
      const double v = mat->data()[k];
      if (v <= 0.0) nonpositive = true;
      if (v != 0.0) {
        maxabs = std::max(maxabs, std::abs(v));
        minabs = std::min(minabs, std::abs(v));
      }
    }
  }
  if (nonpositive) diag.emplace_back("There are data with nonpositive values");
  if (maxabs > 0.0 && maxabs / minabs > 1e5)
    diag.emplace_back("There are data with very different orders of magnitude");
}

void check_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw DeaError(std::string(what) + ": entries must be finite numbers");
}

}  // namespace

bool SpecialVariables::any() const {
  return !nc_inputs.empty() || !nc_outputs.empty() || !nd_inputs.empty() ||
         !nd_outputs.empty() || has_undesirable();
}

DeaData::DeaData(Eigen::MatrixXd input, Eigen::MatrixXd output, std::vector<std::string> dmunames,
                 std::vector<std::string> input_names, std::vector<std::string> output_names,
                 SpecialVariables special)
    : input_(std::move(input)), output_(std::move(output)), special_(std::move(special)) {
  if (input_.rows() < 1) throw DeaError("input: at least one input row is required");
  if (output_.rows() < 1) throw DeaError("output: at least one output row is required");
  if (input_.cols() < 1) throw DeaError("input: at least one DMU is required");
  if (input_.cols() != output_.cols())
    throw DeaError("output: number of DMUs (" + std::to_string(output_.cols()) +
                   ") differs from input (" + std::to_string(input_.cols()) + ")");
  check_finite(input_, "input");
  check_finite(output_, "output");
  dmunames_ = auto_names(std::move(dmunames), n_dmus(), "DMU", "dmunames");
  input_names_ = auto_names(std::move(input_names), n_inputs(), "Input", "input names");
  output_names_ = auto_names(std::move(output_names), n_outputs(), "Output", "output names");
  check_unique(dmunames_, "dmunames");
  check_special(special_, n_inputs(), n_outputs());
  magnitude_diagnostics(input_, output_, diagnostics_);
}

VarKind DeaData::input_kind(std::size_t i) const {
  auto has = [i](const std::vector<std::size_t>& v) {
    return std::find(v.begin(), v.end(), i) != v.end();
  };
  if (has(special_.nc_inputs)) return VarKind::non_controllable;
  if (has(special_.nd_inputs)) return VarKind::non_discretionary;
  if (has(special_.ud_inputs)) return VarKind::undesirable;
  return VarKind::discretionary;
}

VarKind DeaData::output_kind(std::size_t r) const {
  auto has = [r](const std::vector<std::size_t>& v) {
    return std::find(v.begin(), v.end(), r) != v.end();
  };
  if (has(special_.nc_outputs)) return VarKind::non_controllable;
  if (has(special_.nd_outputs)) return VarKind::non_discretionary;
  if (has(special_.ud_outputs)) return VarKind::undesirable;
  return VarKind::discretionary;
}

std::optional<std::size_t> DeaData::find_dmu(std::string_view name) const {
  for (std::size_t j = 0; j < dmunames_.size(); ++j)
    if (dmunames_[j] == name) return j;
  return std::nullopt;
}

FuzzyMatrix FuzzyMatrix::crisp(const Eigen::MatrixXd& m) {
  return {m, m, Eigen::MatrixXd::Zero(m.rows(), m.cols()),
          Eigen::MatrixXd::Zero(m.rows(), m.cols())};
}

namespace {

void check_fuzzy(const FuzzyMatrix& f, const char* side) {
  const std::string s(side);
  for (const auto* m : {&f.mR, &f.dL, &f.dR})
    if (m->rows() != f.mL.rows() || m->cols() != f.mL.cols())
      throw DeaError(s + ": mL, mR, dL and dR must share one shape");
  check_finite(f.mL, side);
  check_finite(f.mR, side);
  check_finite(f.dL, side);
  check_finite(f.dR, side);
  if ((f.mL.array() > f.mR.array()).any()) throw DeaError(s + ": mL must not exceed mR");
  if ((f.dL.array() < 0.0).any() || (f.dR.array() < 0.0).any())
    throw DeaError(s + ": spreads dL and dR must be nonnegative");
}

}  // namespace

FuzzyDeaData::FuzzyDeaData(FuzzyMatrix input, FuzzyMatrix output,
                           std::vector<std::string> dmunames, std::vector<std::string> input_names,
                           std::vector<std::string> output_names, SpecialVariables special)
    : input_(std::move(input)), output_(std::move(output)), special_(std::move(special)) {
  if (input_.rows() < 1) throw DeaError("input: at least one input row is required");
  if (output_.rows() < 1) throw DeaError("output: at least one output row is required");
  if (input_.cols() < 1) throw DeaError("input: at least one DMU is required");
  if (input_.cols() != output_.cols())
    throw DeaError("output: number of DMUs differs from input");
  check_fuzzy(input_, "input");
  check_fuzzy(output_, "output");
  dmunames_ = auto_names(std::move(dmunames), n_dmus(), "DMU", "dmunames");
  input_names_ = auto_names(std::move(input_names), n_inputs(), "Input", "input names");
  output_names_ = auto_names(std::move(output_names), n_outputs(), "Output", "output names");
  check_unique(dmunames_, "dmunames");
  check_special(special_, n_inputs(), n_outputs());
}

MalmquistSeries::MalmquistSeries(std::vector<DeaData> periods,
                                 std::vector<std::string> period_names)
    : periods_(std::move(periods)) {
  if (periods_.size() < 2) throw DeaError("malmquist: at least two periods are required");
  const auto& first = periods_.front();
  for (std::size_t t = 1; t < periods_.size(); ++t) {
    const auto& p = periods_[t];
    if (p.n_inputs() != first.n_inputs() || p.n_outputs() != first.n_outputs())
      throw DeaError("malmquist: period " + std::to_string(t + 1) + " has different dimensions");
    if (p.dmunames() != first.dmunames())
      throw DeaError("malmquist: period " + std::to_string(t + 1) + " has different DMU labels");
  }
  period_names_ = auto_names(std::move(period_names), periods_.size(), "Period", "period names");
}

// ---------------------------------------------------------------------------
// CSV

Table read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  char c;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get(c);
      end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) throw DeaError("csv: unterminated quoted field");
  if (!field.empty() || !record.empty()) end_record();
  if (records.empty()) throw DeaError("csv: empty table (a header row is required)");

  Table t;
  t.header = std::move(records.front());
  if (!t.header.empty() && t.header[0].rfind("\xEF\xBB\xBF", 0) == 0) t.header[0].erase(0, 3);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size())
      throw DeaError("csv: row " + std::to_string(r + 1) + " has " +
                     std::to_string(records[r].size()) + " fields, header has " +
                     std::to_string(t.header.size()));
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

Table read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_csv(in);
}

void write_csv(std::ostream& out, const Table& table) {
  auto put = [&out](const std::vector<std::string>& rec) {
    for (std::size_t k = 0; k < rec.size(); ++k) {
      if (k) out << ',';
      const auto& f = rec[k];
      if (f.find_first_of(",\"\r\n") != std::string::npos) {
        out << '"';
        for (char c : f) {
          if (c == '"') out << '"';
          out << c;
        }
        out << '"';
      } else {
        out << f;
      }
    }
    out << '\n';
  };
  put(table.header);
  for (const auto& r : table.rows) put(r);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_index(std::string_view s, std::size_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

double parse_number(std::string_view cell, std::string_view where) {
  auto s = trim(cell);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw DeaError(std::string(where) + ": non-numeric value '" + std::string(cell) + "'");
  return v;
}

std::vector<ColumnRef> parse_column_list(std::string_view spec) {
  std::vector<ColumnRef> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto next = spec.find(',', pos);
    if (next == std::string_view::npos) next = spec.size();
    auto tok = trim(spec.substr(pos, next - pos));
    pos = next + 1;
    if (tok.empty()) continue;
    std::size_t a = 0, b = 0;
    const auto dash = tok.find('-');
    if (dash != std::string_view::npos && dash > 0 && parse_index(tok.substr(0, dash), a) &&
        parse_index(tok.substr(dash + 1), b)) {
      if (a == 0 || b < a) throw DeaError("column range '" + std::string(tok) + "' is invalid");
      for (auto k = a; k <= b; ++k) out.emplace_back(k);
    } else if (parse_index(tok, a)) {
      if (a == 0) throw DeaError("column positions are 1-based, got 0");
      out.emplace_back(a);
    } else {
      out.emplace_back(std::string(tok));
    }
  }
  return out;
}

std::size_t resolve_column(const Table& t, const ColumnRef& ref) {
  if (const auto* pos = std::get_if<std::size_t>(&ref)) {
    if (*pos < 1 || *pos > t.n_cols())
      throw DeaError("column " + std::to_string(*pos) + " does not exist (table has " +
                     std::to_string(t.n_cols()) + " columns)");
    return *pos - 1;
  }
  const auto& name = std::get<std::string>(ref);
  for (std::size_t k = 0; k < t.header.size(); ++k)
    if (t.header[k] == name) return k;
  throw DeaError("column '" + name + "' not found in header");
}

namespace {

/// 0-based column of the DMU labels, or npos when position 0 was passed.
std::size_t dmu_col(const Table& t, const ColumnRef& ref) {
  if (const auto* pos = std::get_if<std::size_t>(&ref); pos && *pos == 0)
    return std::string::npos;
  return resolve_column(t, ref);
}

std::vector<std::size_t> resolve_all(const Table& t, const std::vector<ColumnRef>& refs) {
  std::vector<std::size_t> out;
  out.reserve(refs.size());
  for (const auto& r : refs) out.push_back(resolve_column(t, r));
  return out;
}

Eigen::MatrixXd read_block(const Table& t, const std::vector<std::size_t>& cols,
                           const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(cols.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_number(t.rows[rows[j]][cols[i]], "row " + std::to_string(rows[j] + 2) +
                                                     ", column '" + t.header[cols[i]] + "'");
  return m;
}

std::vector<std::string> pick(const std::vector<std::string>& v, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto k : idx) out.push_back(v[k]);
  return out;
}

std::vector<std::size_t> all_rows(const Table& t) {
  std::vector<std::size_t> r(t.n_rows());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = k;
  return r;
}

std::vector<std::string> labels(const Table& t, std::size_t col,
                                const std::vector<std::size_t>& rows) {
  if (col == std::string::npos) return {};
  std::vector<std::string> out;
  for (auto r : rows) out.emplace_back(trim(t.rows[r][col]));
  return out;
}

void check_disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                    std::size_t dmu) {
  std::set<std::size_t> sa(a.begin(), a.end());
  for (auto k : b)
    if (sa.count(k)) throw DeaError("column " + std::to_string(k + 1) + " selected as both input and output");
  if (sa.size() != a.size()) throw DeaError("inputs: a column is selected twice");
  std::set<std::size_t> sb(b.begin(), b.end());
  if (sb.size() != b.size()) throw DeaError("outputs: a column is selected twice");
  if (sa.count(dmu) || sb.count(dmu))
    throw DeaError("the DMU label column cannot also be an input or output");
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> io_columns(
    const Table& t, std::size_t dmu, const std::vector<ColumnRef>& inputs,
    const std::vector<ColumnRef>& outputs, std::size_t ni, std::size_t no) {
  std::vector<std::size_t> in, out;
  if (!inputs.empty() || !outputs.empty()) {
    if (inputs.empty()) throw DeaError("inputs: no input columns given");
    if (outputs.empty()) throw DeaError("outputs: no output columns given");
    in = resolve_all(t, inputs);
    out = resolve_all(t, outputs);
  } else {
    if (ni == 0) throw DeaError("ni: number of inputs must be positive");
    if (no == 0) throw DeaError("no: number of outputs must be positive");
    const std::size_t start = dmu == std::string::npos ? 0 : dmu + 1;
    if (start + ni + no > t.n_cols())
      throw DeaError("ni/no: " + std::to_string(ni + no) + " data columns requested after column " +
                     std::to_string(start) + " but the table has " + std::to_string(t.n_cols()));
    for (std::size_t k = 0; k < ni; ++k) in.push_back(start + k);
    for (std::size_t k = 0; k < no; ++k) out.push_back(start + ni + k);
  }
  check_disjoint(in, out, dmu);
  return {in, out};
}

}  // namespace

DeaData make_deadata(const Table& table, const DeadataSpec& spec) {
  if (table.n_rows() == 0) throw DeaError("data: the table has no DMU rows");
  const auto dmu = dmu_col(table, spec.dmu_column);
  auto [in, out] = io_columns(table, dmu, spec.inputs, spec.outputs, spec.ni, spec.no);
  const auto rows = all_rows(table);
  return DeaData(read_block(table, in, rows), read_block(table, out, rows), labels(table, dmu, rows),
                 pick(table.header, in), pick(table.header, out), spec.special);
}

namespace {

FuzzyMatrix read_fuzzy_side(const Table& t, const FuzzyColumns& c, const char* side,
                            std::vector<std::string>& names, std::vector<std::size_t>& used) {
  const std::size_t k = c.mL.size();
  const std::string s(side);
  if (k == 0) throw DeaError(s + ".mL: at least one column is required");
  auto check_len = [&](std::size_t len, const char* what) {
    if (len != 0 && len != k)
      throw DeaError(s + "." + what + ": expected " + std::to_string(k) + " entries");
  };
  check_len(c.mR.size(), "mR");
  check_len(c.dL.size(), "dL");
  check_len(c.dR.size(), "dR");
  const auto rows = all_rows(t);
  const auto n = static_cast<Eigen::Index>(rows.size());
  FuzzyMatrix f{Eigen::MatrixXd(k, n), Eigen::MatrixXd(k, n), Eigen::MatrixXd::Zero(k, n),
                Eigen::MatrixXd::Zero(k, n)};
  auto column = [&](const ColumnRef& ref) {
    const auto col = resolve_column(t, ref);
    used.push_back(col);
    return read_block(t, {col}, rows).row(0).eval();
  };
  auto opt = [](const std::vector<std::optional<ColumnRef>>& v, std::size_t i) {
    return i < v.size() ? v[i] : std::nullopt;
  };
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    names.push_back(t.header[resolve_column(t, c.mL[i])]);
    f.mL.row(r) = column(c.mL[i]);
    const auto mr = opt(c.mR, i);
    f.mR.row(r) = mr ? column(*mr) : f.mL.row(r).eval();
    const auto dl = opt(c.dL, i);
    const auto dr = opt(c.dR, i);
    if (dl) f.dL.row(r) = column(*dl);
    if (dr) f.dR.row(r) = column(*dr);
    // A lone left spread describes a symmetric number.
    if (dl && !dr) f.dR.row(r) = f.dL.row(r);
    if (dr && !dl) f.dL.row(r) = f.dR.row(r);
  }
  return f;
}

}  // namespace

FuzzyDeaData make_deadata_fuzzy(const Table& table, const FuzzyDeadataSpec& spec) {
  if (table.n_rows() == 0) throw DeaError("data: the table has no DMU rows");
  const auto dmu = dmu_col(table, spec.dmu_column);
  std::vector<std::string> in_names, out_names;
  std::vector<std::size_t> in_used, out_used;
  auto fin = read_fuzzy_side(table, spec.inputs, "inputs", in_names, in_used);
  auto fout = read_fuzzy_side(table, spec.outputs, "outputs", out_names, out_used);
  std::set<std::size_t> a(in_used.begin(), in_used.end());
  for (auto k : out_used)
    if (a.count(k)) throw DeaError("column " + std::to_string(k + 1) + " selected as both input and output");
  return FuzzyDeaData(std::move(fin), std::move(fout), labels(table, dmu, all_rows(table)),
                      std::move(in_names), std::move(out_names), spec.special);
}

MalmquistSeries make_malmquist(const Table& table, const MalmquistSpec& spec) {
  if (table.n_rows() == 0) throw DeaError("data: the table has no DMU rows");
  const auto dmu = dmu_col(table, spec.dmu_column);
  std::vector<DeaData> periods;
  std::vector<std::string> period_names;

  if (spec.period_column) {
    const auto pcol = resolve_column(table, *spec.period_column);
    if (pcol == dmu) throw DeaError("period column cannot be the DMU column");
    auto [in, out] = io_columns(table, dmu, spec.inputs, spec.outputs, spec.ni, spec.no);
    if (std::count(in.begin(), in.end(), pcol) || std::count(out.begin(), out.end(), pcol))
      throw DeaError("period column cannot be an input or output");
    // Distinct period values, numerically ordered when they are all numbers.
    std::vector<std::string> keys;
    for (const auto& r : table.rows) {
      std::string k(trim(r[pcol]));
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
    bool numeric = true;
    for (const auto& k : keys) {
      double v;
      auto [p, ec] = std::from_chars(k.data(), k.data() + k.size(), v);
      numeric = numeric && ec == std::errc() && p == k.data() + k.size();
    }
    if (numeric)
      std::stable_sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
        return parse_number(a, "period") < parse_number(b, "period");
      });
    else
      std::sort(keys.begin(), keys.end());

    std::vector<std::string> order;
    for (const auto& key : keys) {
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < table.n_rows(); ++r)
        if (trim(table.rows[r][pcol]) == key) rows.push_back(r);
      auto names = labels(table, dmu, rows);
      if (names.empty())
        for (std::size_t j = 0; j < rows.size(); ++j) names.push_back("DMU" + std::to_string(j + 1));
      if (order.empty()) {
        order = names;
      } else {
        std::map<std::string, std::size_t> where;
        for (std::size_t j = 0; j < names.size(); ++j) where[names[j]] = rows[j];
        for (const auto& nm : order)
          if (!where.count(nm))
            throw DeaError("malmquist: DMU '" + nm + "' is missing from period " + key);
        if (where.size() != order.size())
          throw DeaError("malmquist: period " + key + " has DMUs absent from the first period");
        for (std::size_t j = 0; j < order.size(); ++j) rows[j] = where[order[j]];
        names = order;
      }
      periods.emplace_back(read_block(table, in, rows), read_block(table, out, rows), names,
                           pick(table.header, in), pick(table.header, out), spec.special);
      period_names.push_back(key);
    }
  } else {
    if (spec.nper < 2) throw DeaError("nper: at least two periods are required");
    if (spec.ni == 0 || spec.no == 0) throw DeaError("ni/no: must be positive for the wide layout");
    const std::size_t start = dmu == std::string::npos ? 0 : dmu + 1;
    const std::size_t width = spec.ni + spec.no;
    if (table.n_cols() - start != spec.nper * width)
      throw DeaError("nper: " + std::to_string(table.n_cols() - start) +
                     " data columns do not split into " + std::to_string(spec.nper) +
                     " blocks of " + std::to_string(width));
    const auto rows = all_rows(table);
    for (std::size_t p = 0; p < spec.nper; ++p) {
      std::vector<std::size_t> in, out;
      for (std::size_t k = 0; k < spec.ni; ++k) in.push_back(start + p * width + k);
      for (std::size_t k = 0; k < spec.no; ++k) out.push_back(start + p * width + spec.ni + k);
      periods.emplace_back(read_block(table, in, rows), read_block(table, out, rows),
                           labels(table, dmu, rows), pick(table.header, in),
                           pick(table.header, out), spec.special);
    }
  }
  return MalmquistSeries(std::move(periods), std::move(period_names));
}

// ---------------------------------------------------------------------------
// Undesirable variables

namespace {

Eigen::VectorXd resolve_translation(const std::vector<double>& given,
                                    const std::vector<std::size_t>& flagged,
                                    const Eigen::VectorXd& row_max, const char* what) {
  const auto k = flagged.size();
  if (k == 0) {
    if (!given.empty())
      throw DeaError(std::string(what) + ": translation given but no variable is flagged undesirable");
    return {};
  }
  if (given.size() > 1 && given.size() != k)
    throw DeaError(std::string(what) + ": expected 1 or " + std::to_string(k) + " values, got " +
                   std::to_string(given.size()));
  Eigen::VectorXd v(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    double g = given.empty() ? NA : given[given.size() == 1 ? 0 : i];
    v(static_cast<Eigen::Index>(i)) = is_na(g) ? row_max(static_cast<Eigen::Index>(i)) + 1.0 : g;
  }
  return v;
}

Eigen::VectorXd flagged_max(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i])).maxCoeff();
  return out;
}

}  // namespace

Translated<DeaData> undesirable_transform(const DeaData& data, const Translation& vtrans) {
  const auto& sv = data.special();
  const auto vi = resolve_translation(vtrans.inputs, sv.ud_inputs,
                                      flagged_max(data.input(), sv.ud_inputs), "vtrans_i");
  const auto vo = resolve_translation(vtrans.outputs, sv.ud_outputs,
                                      flagged_max(data.output(), sv.ud_outputs), "vtrans_o");
  if (!sv.has_undesirable()) return {data, vi, vo, {}};
  Eigen::MatrixXd x = data.input();
  Eigen::MatrixXd y = data.output();
  std::vector<std::string> diag;
  for (std::size_t i = 0; i < sv.ud_inputs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(sv.ud_inputs[i]);
    x.row(r) = (-x.row(r).array() + vi(static_cast<Eigen::Index>(i))).matrix();
    if ((x.row(r).array() <= 0.0).any())
      diag.push_back("translated undesirable input " + std::to_string(r + 1) + " has nonpositive entries");
  }
  for (std::size_t i = 0; i < sv.ud_outputs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(sv.ud_outputs[i]);
    y.row(r) = (-y.row(r).array() + vo(static_cast<Eigen::Index>(i))).matrix();
    if ((y.row(r).array() <= 0.0).any())
      diag.push_back("translated undesirable output " + std::to_string(r + 1) + " has nonpositive entries");
  }
  SpecialVariables cleared = sv;
  cleared.ud_inputs.clear();
  cleared.ud_outputs.clear();
  return {DeaData(std::move(x), std::move(y), data.dmunames(), data.input_names(),
                  data.output_names(), std::move(cleared)),
          vi, vo, std::move(diag)};
}

namespace {

void reflect_rows(FuzzyMatrix& f, const std::vector<std::size_t>& rows, const Eigen::VectorXd& v) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(rows[i]);
    const double u = v(static_cast<Eigen::Index>(i));
    Eigen::RowVectorXd mL = f.mL.row(r), mR = f.mR.row(r), dL = f.dL.row(r), dR = f.dR.row(r);
    f.mL.row(r) = (u - mR.array()).matrix();
    f.mR.row(r) = (u - mL.array()).matrix();
    f.dL.row(r) = dR;
    f.dR.row(r) = dL;
  }
}

Eigen::VectorXd fuzzy_support_max(const FuzzyMatrix& f, const std::vector<std::size_t>& rows) {
  return flagged_max(f.mR + f.dR, rows);
}

}  // namespace

Translated<FuzzyDeaData> undesirable_transform(const FuzzyDeaData& data, const Translation& vtrans) {
  const auto& sv = data.special();
  const auto vi = resolve_translation(vtrans.inputs, sv.ud_inputs,
                                      fuzzy_support_max(data.input(), sv.ud_inputs), "vtrans_i");
  const auto vo = resolve_translation(vtrans.outputs, sv.ud_outputs,
                                      fuzzy_support_max(data.output(), sv.ud_outputs), "vtrans_o");
  if (!sv.has_undesirable()) return {data, vi, vo, {}};
  FuzzyMatrix in = data.input();
  FuzzyMatrix out = data.output();
  reflect_rows(in, sv.ud_inputs, vi);
  reflect_rows(out, sv.ud_outputs, vo);
  std::vector<std::string> diag;
  if (((in.mL - in.dL).array() <= 0.0).any() || ((out.mL - out.dL).array() <= 0.0).any())
    diag.emplace_back("translated undesirable variables have nonpositive support");
  SpecialVariables cleared = sv;
  cleared.ud_inputs.clear();
  cleared.ud_outputs.clear();
  return {FuzzyDeaData(std::move(in), std::move(out), data.dmunames(), data.input_names(),
                       data.output_names(), std::move(cleared)),
          vi, vo, std::move(diag)};
}

}  // namespace deakit
