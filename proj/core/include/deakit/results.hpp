#pragma once

#include "deakit/bootstrap.hpp"
#include "deakit/cross.hpp"
#include "deakit/data.hpp"
#include "deakit/fuzzy.hpp"
#include "deakit/malmquist.hpp"
#include "deakit/metafrontier.hpp"
#include "deakit/result.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace deakit {

/// Numeric matrix with row and column labels.
struct LabeledMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  Eigen::MatrixXd values;
};

enum class Facet { efficiencies, lambdas, slacks, targets, multipliers };

std::string_view to_string(Facet f);
Facet parse_facet(std::string_view s);

/// Views of one facet, keyed by part name. efficiencies gives "efficiency"
/// (|dmu_eval| x 1, the optimal objectives verbatim) and, for non-radial
/// models, "efficiency_vector"; lambdas gives "lambda" (|dmu_eval| x
/// |dmu_ref|); slacks and targets give "*_input" and "*_output" with DMU
/// rows; multipliers gives "input" (m x |dmu_eval|), "output" (s x
/// |dmu_eval|) and "rts" (2 x |dmu_eval|). Throws when the model does not
/// produce the facet.
std::map<std::string, LabeledMatrix> extract(const DeaResult& result, Facet facet);

enum class Scenario { worst, best };

/// Crisp view of one (alpha level, scenario) slice of a fuzzy run.
DeaResult scenario_result(const FuzzyDeaResult& result, std::size_t alpha_index, Scenario scenario);

std::map<std::string, LabeledMatrix> extract(const FuzzyDeaResult& result, std::size_t alpha_index,
                                             Scenario scenario, Facet facet);

struct Reference {
  std::size_t dmu;  // data index
  double lambda;
};

/// Reference set (lambda > kLambdaTol) of every evaluated DMU that is not
/// classified efficient, keyed by data index.
std::map<std::size_t, std::vector<Reference>> references(const DeaResult& result);

/// Data indices of efficient DMUs (plus weakly efficient ones if asked).
std::vector<std::size_t> eff_dmus(const DeaResult& result, bool weakly = false);

struct ReferenceGraph {
  struct Node {
    std::size_t dmu;
    std::string label;
    Classification classification;
    /// Number of reference sets the DMU appears in.
    std::size_t relevance;
  };
  struct Edge {
    std::size_t from, to;  // data indices
    double lambda;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

ReferenceGraph reference_graph(const DeaResult& result);
std::string reference_graph_dot(const DeaResult& result);

// ---------------------------------------------------------------------------
// Serialization

inline constexpr int kSchemaVersion = 1;

std::string to_json(const DeaResult& r, int indent = 2);
std::string to_json(const CrossEffResult& r, int indent = 2);
std::string to_json(const FuzzyDeaResult& r, int indent = 2);
std::string to_json(const MalmquistResult& r, int indent = 2);
std::string to_json(const BootstrapResult& r, int indent = 2);
std::string to_json(const MetafrontierResult& r, int indent = 2);

/// Inverse of to_json(const DeaResult&); numeric fields come back bit-exact.
DeaResult dea_result_from_json(std::string_view text);

/// A CSV table; dmu_rows marks tables with one row per DMU, which the
/// merged export joins side by side.
struct CsvTable {
  std::string name;
  Table table;
  bool dmu_rows = true;
};

std::vector<CsvTable> csv_tables(const DeaResult& r);
std::vector<CsvTable> csv_tables(const CrossEffResult& r);
std::vector<CsvTable> csv_tables(const FuzzyDeaResult& r);
std::vector<CsvTable> csv_tables(const MalmquistResult& r);
/// The B x n estimates table is included only when asked.
std::vector<CsvTable> csv_tables(const BootstrapResult& r, bool estimates = false);
std::vector<CsvTable> csv_tables(const MetafrontierResult& r);

/// Joins DMU-row tables column-wise; columns get a "<table>." prefix.
Table merge_tables(const std::vector<CsvTable>& tables);

enum class ExportFormat { json, csv };

ExportFormat parse_export_format(std::string_view s);

struct ExportOptions {
  ExportFormat format = ExportFormat::json;
  /// Output file; empty => ResultsDEA<timestamp> in the working directory.
  /// With split, the stem gets a "_<facet>" suffix per file.
  std::string path;
  bool split = false;
};

/// "ResultsDEA" followed by the local time as YYYYmmdd_HH.MM.SS.
std::string default_results_name();

/// Writes the document(s); returns the paths written. Throws IoError.
std::vector<std::string> summary_export(const std::string& json, const std::vector<CsvTable>& tables,
                                        const ExportOptions& opt);

template <class Result>
std::vector<std::string> summary_export(const Result& r, const ExportOptions& opt) {
  return summary_export(to_json(r), csv_tables(r), opt);
}

/// Round-trip number formatting used in CSV cells ("NA" for NaN).
std::string format_number(double v);

}  // namespace deakit
