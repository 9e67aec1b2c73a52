#pragma once

#include "deakit/types.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace deakit {

/// Indices (0-based) of inputs/outputs carrying a special treatment.
struct SpecialVariables {
  std::vector<std::size_t> nc_inputs;
  std::vector<std::size_t> nc_outputs;
  std::vector<std::size_t> nd_inputs;
  std::vector<std::size_t> nd_outputs;
  std::vector<std::size_t> ud_inputs;
  std::vector<std::size_t> ud_outputs;

  bool any() const;
  bool has_undesirable() const { return !ud_inputs.empty() || !ud_outputs.empty(); }
};

enum class VarKind { discretionary, non_controllable, non_discretionary, undesirable };

/// Crisp DEA dataset. Inputs are m x n, outputs s x n, DMUs are columns.
/// Immutable after construction.
class DeaData {
 public:
  DeaData(Eigen::MatrixXd input, Eigen::MatrixXd output,
          std::vector<std::string> dmunames = {},
          std::vector<std::string> input_names = {},
          std::vector<std::string> output_names = {},
          SpecialVariables special = {});

  const Eigen::MatrixXd& input() const { return input_; }
  const Eigen::MatrixXd& output() const { return output_; }
  const std::vector<std::string>& dmunames() const { return dmunames_; }
  const std::vector<std::string>& input_names() const { return input_names_; }
  const std::vector<std::string>& output_names() const { return output_names_; }
  const SpecialVariables& special() const { return special_; }

  std::size_t n_dmus() const { return static_cast<std::size_t>(input_.cols()); }
  std::size_t n_inputs() const { return static_cast<std::size_t>(input_.rows()); }
  std::size_t n_outputs() const { return static_cast<std::size_t>(output_.rows()); }

  VarKind input_kind(std::size_t i) const;
  VarKind output_kind(std::size_t r) const;

  /// Non-fatal findings (nonpositive data, wide magnitude spread).
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  std::optional<std::size_t> find_dmu(std::string_view name) const;

 private:
  Eigen::MatrixXd input_;
  Eigen::MatrixXd output_;
  std::vector<std::string> dmunames_;
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
  SpecialVariables special_;
  std::vector<std::string> diagnostics_;
};

/// The four trapezoid parameters of every entry of one side.
struct FuzzyMatrix {
  Eigen::MatrixXd mL, mR, dL, dR;

  Eigen::Index rows() const { return mL.rows(); }
  Eigen::Index cols() const { return mL.cols(); }
  static FuzzyMatrix crisp(const Eigen::MatrixXd& m);
};

/// Trapezoidal fuzzy DEA dataset.
class FuzzyDeaData {
 public:
  FuzzyDeaData(FuzzyMatrix input, FuzzyMatrix output,
               std::vector<std::string> dmunames = {},
               std::vector<std::string> input_names = {},
               std::vector<std::string> output_names = {},
               SpecialVariables special = {});

  const FuzzyMatrix& input() const { return input_; }
  const FuzzyMatrix& output() const { return output_; }
  const std::vector<std::string>& dmunames() const { return dmunames_; }
  const std::vector<std::string>& input_names() const { return input_names_; }
  const std::vector<std::string>& output_names() const { return output_names_; }
  const SpecialVariables& special() const { return special_; }

  std::size_t n_dmus() const { return static_cast<std::size_t>(input_.cols()); }
  std::size_t n_inputs() const { return static_cast<std::size_t>(input_.rows()); }
  std::size_t n_outputs() const { return static_cast<std::size_t>(output_.rows()); }

 private:
  FuzzyMatrix input_;
  FuzzyMatrix output_;
  std::vector<std::string> dmunames_;
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
  SpecialVariables special_;
};

/// Panel of T >= 2 periods sharing DMU labels and dimensions.
class MalmquistSeries {
 public:
  MalmquistSeries(std::vector<DeaData> periods, std::vector<std::string> period_names = {});

  const std::vector<DeaData>& periods() const { return periods_; }
  const std::vector<std::string>& period_names() const { return period_names_; }
  std::size_t size() const { return periods_.size(); }
  const DeaData& operator[](std::size_t t) const { return periods_[t]; }

 private:
  std::vector<DeaData> periods_;
  std::vector<std::string> period_names_;
};

// ---------------------------------------------------------------------------
// Tabular ingestion

/// Header plus string cells; the canonical CSV representation.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t n_cols() const { return header.size(); }
  std::size_t n_rows() const { return rows.size(); }
};

/// RFC 4180 style reader: first line is the header, quoted fields allowed.
Table read_csv(std::istream& in);
Table read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const Table& table);

/// A column addressed by 1-based position or by header name.
using ColumnRef = std::variant<std::size_t, std::string>;

/// Parses "3", "Profit" or "2-5" style lists into column refs.
std::vector<ColumnRef> parse_column_list(std::string_view spec);

std::size_t resolve_column(const Table& t, const ColumnRef& ref);

/// Locale-independent double parsing. Throws DeaError naming `where`.
double parse_number(std::string_view cell, std::string_view where);

struct DeadataSpec {
  ColumnRef dmu_column = std::size_t{1};
  /// Explicit columns; when empty, ni/no count columns after the DMU column.
  std::vector<ColumnRef> inputs;
  std::vector<ColumnRef> outputs;
  std::size_t ni = 0;
  std::size_t no = 0;
  SpecialVariables special;
};

DeaData make_deadata(const Table& table, const DeadataSpec& spec);

/// Per-variable column refs; std::nullopt marks an absent parameter.
struct FuzzyColumns {
  std::vector<ColumnRef> mL;
  std::vector<std::optional<ColumnRef>> mR, dL, dR;
};

struct FuzzyDeadataSpec {
  ColumnRef dmu_column = std::size_t{1};
  FuzzyColumns inputs;
  FuzzyColumns outputs;
  SpecialVariables special;
};

FuzzyDeaData make_deadata_fuzzy(const Table& table, const FuzzyDeadataSpec& spec);

struct MalmquistSpec {
  ColumnRef dmu_column = std::size_t{1};
  /// Wide layout: nper blocks of (ni + no) columns after the DMU column.
  std::size_t nper = 0;
  std::size_t ni = 0;
  std::size_t no = 0;
  /// Long layout: a period column plus explicit input/output columns.
  std::optional<ColumnRef> period_column;
  std::vector<ColumnRef> inputs;
  std::vector<ColumnRef> outputs;
  SpecialVariables special;
};

MalmquistSeries make_malmquist(const Table& table, const MalmquistSpec& spec);

// ---------------------------------------------------------------------------
// Undesirable variables

/// Translation values; empty means "max + 1" for every undesirable variable,
/// one entry broadcasts, NaN entries fall back to "max + 1".
struct Translation {
  std::vector<double> inputs;
  std::vector<double> outputs;
};

template <class Data>
struct Translated {
  Data data;
  Eigen::VectorXd vtrans_i;  // one per undesirable input
  Eigen::VectorXd vtrans_o;  // one per undesirable output
  std::vector<std::string> diagnostics;
};

/// Replaces each undesirable row by -value + translation and clears the
/// undesirable flags. No-op when nothing is flagged.
Translated<DeaData> undesirable_transform(const DeaData& data, const Translation& vtrans = {});
Translated<FuzzyDeaData> undesirable_transform(const FuzzyDeaData& data,
                                               const Translation& vtrans = {});

}  // namespace deakit
