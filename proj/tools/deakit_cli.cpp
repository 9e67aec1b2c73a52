#include "deakit/deakit.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace deakit;

/// Raised for flag misuse; maps to exit code 2 like library validation errors.
struct UsageError : DeaError {
  using DeaError::DeaError;
};

struct Args {
  std::string data;
  std::string dmu_col = "1";
  std::size_t ni = 0, no = 0;
  std::string inputs, outputs;
  std::string nc_inputs, nc_outputs, nd_inputs, nd_outputs, ud_inputs, ud_outputs;
  std::string model = "basic";
  std::optional<std::string> orientation;
  std::string rts = "crs";
  double L = 1.0, U = 1.0;
  std::string dmu_eval, dmu_ref;
  bool maxslack = true;
  std::string weight_slack_i, weight_slack_o, weight_slack, weight_eff;
  std::string dir_input, dir_output;
  bool restricted_eff = true;
  bool irdm = false;
  double epsilon = 0.0;
  bool kaizen = false;
  std::string price_input, price_output;
  bool restricted_optimal = true;
  bool selfapp = true, correction = false, m2 = true, m3 = true;
  std::string submodel = "basic";
  std::string alpha;
  std::string inputs_mR, inputs_dL, inputs_dR, outputs_mR, outputs_dL, outputs_dR;
  std::size_t nper = 0;
  std::string period_col;
  std::string type1 = "cont", type2 = "fgnz";
  bool tc_vrs = false;
  std::size_t B = 2000;
  double ci_alpha = 0.05;
  std::string h = "0.014";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string groups;
  std::string out;
  std::string format = "json";
  bool split = false;
  bool emit_lp = false;
  bool emit_dot = false;
  bool bootstrap_estimates = false;
  bool quiet = false;
};

std::vector<double> parse_numbers(const std::string& s, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(parse_number(tok, flag));
  return out;
}

/// "" => default; "2" => scalar; "1,2" => per-variable vector.
Broadcast parse_broadcast(const std::string& s, const char* flag, Broadcast fallback = {}) {
  if (s.empty()) return fallback;
  const auto v = parse_numbers(s, flag);
  if (v.size() == 1) return v.front();
  return Broadcast(v);
}

/// 1-based positions or labels, with ranges, resolved against `labels`.
std::vector<std::size_t> parse_members(const std::string& s, const std::vector<std::string>& labels,
                                       const char* flag) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  for (const auto& ref : parse_column_list(s)) {
    if (const auto* pos = std::get_if<std::size_t>(&ref)) {
      if (*pos < 1 || *pos > labels.size())
        throw UsageError(std::string(flag) + ": index " + std::to_string(*pos) + " out of range");
      out.push_back(*pos - 1);
    } else {
      const auto& name = std::get<std::string>(ref);
      const auto it = std::find(labels.begin(), labels.end(), name);
      if (it == labels.end()) throw UsageError(std::string(flag) + ": unknown name '" + name + "'");
      out.push_back(static_cast<std::size_t>(it - labels.begin()));
    }
  }
  return out;
}

std::vector<ColumnRef> columns(const std::string& s) { return s.empty() ? std::vector<ColumnRef>{} : parse_column_list(s); }

ColumnRef single_column(const std::string& s, const char* flag) {
  const auto refs = parse_column_list(s);
  if (refs.size() != 1) throw UsageError(std::string(flag) + ": expected a single column");
  return refs.front();
}

/// Variable names a special-variable list may refer to.
std::vector<std::string> names_of(const Table& t, const std::vector<ColumnRef>& cols, std::size_t first,
                                  std::size_t count) {
  std::vector<std::string> out;
  if (!cols.empty())
    for (const auto& c : cols) out.push_back(t.header[resolve_column(t, c)]);
  else
    for (std::size_t k = 0; k < count && first + k < t.header.size(); ++k) out.push_back(t.header[first + k]);
  return out;
}

SpecialVariables special_of(const Args& a, const std::vector<std::string>& in, const std::vector<std::string>& out) {
  SpecialVariables s;
  s.nc_inputs = parse_members(a.nc_inputs, in, "--nc-inputs");
  s.nc_outputs = parse_members(a.nc_outputs, out, "--nc-outputs");
  s.nd_inputs = parse_members(a.nd_inputs, in, "--nd-inputs");
  s.nd_outputs = parse_members(a.nd_outputs, out, "--nd-outputs");
  s.ud_inputs = parse_members(a.ud_inputs, in, "--ud-inputs");
  s.ud_outputs = parse_members(a.ud_outputs, out, "--ud-outputs");
  return s;
}

DeaData load_crisp(const Args& a, const Table& t) {
  DeadataSpec spec;
  spec.dmu_column = single_column(a.dmu_col, "--dmu-col");
  spec.inputs = columns(a.inputs);
  spec.outputs = columns(a.outputs);
  spec.ni = a.ni;
  spec.no = a.no;
  if (spec.inputs.empty() != spec.outputs.empty())
    throw UsageError("--inputs/--outputs: give both or neither");
  if (spec.inputs.empty() && (a.ni == 0 || a.no == 0))
    throw UsageError("--ni/--no: both are required unless --inputs/--outputs are given");
  const auto dmu = resolve_column(t, spec.dmu_column);
  spec.special = special_of(a, names_of(t, spec.inputs, dmu + 1, a.ni), names_of(t, spec.outputs, dmu + 1 + a.ni, a.no));
  return make_deadata(t, spec);
}

FuzzyDeaData load_fuzzy(const Args& a, const Table& t) {
  if (a.inputs.empty() || a.outputs.empty())
    throw UsageError("--inputs/--outputs: kaoliu needs explicit mL columns");
  FuzzyDeadataSpec spec;
  spec.dmu_column = single_column(a.dmu_col, "--dmu-col");
  auto side = [&](const std::string& mL, const std::string& mR, const std::string& dL, const std::string& dR,
                  const char* what) {
    FuzzyColumns c;
    c.mL = parse_column_list(mL);
    auto opt_list = [&](const std::string& s, const char* flag) {
      std::vector<std::optional<ColumnRef>> v(c.mL.size());
      if (s.empty()) return v;
      const auto refs = parse_column_list(s);
      if (refs.size() != c.mL.size())
        throw UsageError(std::string(flag) + ": expected one column per " + what + " variable");
      for (std::size_t k = 0; k < refs.size(); ++k) v[k] = refs[k];
      return v;
    };
    c.mR = opt_list(mR, what[0] == 'i' ? "--inputs-mR" : "--outputs-mR");
    c.dL = opt_list(dL, what[0] == 'i' ? "--inputs-dL" : "--outputs-dL");
    c.dR = opt_list(dR, what[0] == 'i' ? "--inputs-dR" : "--outputs-dR");
    return c;
  };
  spec.inputs = side(a.inputs, a.inputs_mR, a.inputs_dL, a.inputs_dR, "input");
  spec.outputs = side(a.outputs, a.outputs_mR, a.outputs_dL, a.outputs_dR, "output");
  spec.special = special_of(a, names_of(t, spec.inputs.mL, 0, 0), names_of(t, spec.outputs.mL, 0, 0));
  return make_deadata_fuzzy(t, spec);
}

MalmquistSeries load_panel(const Args& a, const Table& t) {
  MalmquistSpec spec;
  spec.dmu_column = single_column(a.dmu_col, "--dmu-col");
  spec.nper = a.nper;
  spec.ni = a.ni;
  spec.no = a.no;
  if (!a.period_col.empty()) spec.period_column = single_column(a.period_col, "--period-col");
  spec.inputs = columns(a.inputs);
  spec.outputs = columns(a.outputs);
  if (!spec.period_column && a.nper == 0) throw UsageError("--nper/--period-col: one is required for malmquist");
  return make_malmquist(t, spec);
}

Orientation orientation_or(const Args& a, Orientation fallback) {
  return a.orientation ? parse_orientation(*a.orientation) : fallback;
}

RtsSpec rts_of(const Args& a) { return parse_rts(a.rts, a.L, a.U); }

/// Options of every crisp model addressable by name, built from the flags.
SubmodelOptions crisp_options(const Args& a, const std::string& model, const DeaData& d) {
  const auto eval = parse_members(a.dmu_eval, d.dmunames(), "--dmu-eval");
  const auto ref = parse_members(a.dmu_ref, d.dmunames(), "--dmu-ref");
  const auto rts = rts_of(a);
  if (model == "basic" || model == "fdh" || model == "supereff") {
    BasicOptions o;
    o.orientation = orientation_or(a, Orientation::input);
    o.rts = rts;
    o.maxslack = a.maxslack;
    o.weight_slack_i = parse_broadcast(a.weight_slack_i, "--weight-slack-i", 1.0);
    o.weight_slack_o = parse_broadcast(a.weight_slack_o, "--weight-slack-o", 1.0);
    o.dir_input = parse_broadcast(a.dir_input, "--dir-input");
    o.dir_output = parse_broadcast(a.dir_output, "--dir-output");
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "rdm") {
    RdmOptions o;
    o.orientation = orientation_or(a, Orientation::none);
    o.irdm = a.irdm;
    o.maxslack = a.maxslack;
    o.weight_slack_i = parse_broadcast(a.weight_slack_i, "--weight-slack-i", 1.0);
    o.weight_slack_o = parse_broadcast(a.weight_slack_o, "--weight-slack-o", 1.0);
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "multiplier") {
    MultiplierOptions o;
    o.orientation = orientation_or(a, Orientation::input);
    o.rts = rts;
    o.epsilon = a.epsilon;
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "nonradial") {
    NonradialOptions o;
    o.orientation = orientation_or(a, Orientation::input);
    o.rts = rts;
    o.maxslack = a.maxslack;
    o.weight_slack = parse_broadcast(a.weight_slack, "--weight-slack", 1.0);
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "deaps") {
    DeapsOptions o;
    o.orientation = orientation_or(a, Orientation::input);
    o.rts = rts;
    o.maxslack = a.maxslack;
    o.weight_slack = parse_broadcast(a.weight_slack, "--weight-slack", 1.0);
    o.weight_eff = parse_broadcast(a.weight_eff, "--weight-eff", 1.0);
    o.restricted_eff = a.restricted_eff;
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "additive") {
    AdditiveOptions o;
    o.orientation = orientation_or(a, Orientation::none);
    o.rts = rts;
    o.weight_slack_i = parse_broadcast(a.weight_slack_i, "--weight-slack-i", 1.0);
    o.weight_slack_o = parse_broadcast(a.weight_slack_o, "--weight-slack-o", 1.0);
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "profit") {
    ProfitOptions o;
    o.rts = rts;
    o.price_input = parse_broadcast(a.price_input, "--price-input");
    o.price_output = parse_broadcast(a.price_output, "--price-output");
    o.restricted_optimal = a.restricted_optimal;
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "sbmeff") {
    SbmOptions o;
    o.orientation = orientation_or(a, Orientation::none);
    o.rts = rts;
    o.weight_input = parse_broadcast(a.weight_slack_i, "--weight-slack-i", 1.0);
    o.weight_output = parse_broadcast(a.weight_slack_o, "--weight-slack-o", 1.0);
    o.kaizen = a.kaizen;
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "sbmsupereff") {
    SbmSupereffOptions o;
    o.orientation = orientation_or(a, Orientation::none);
    o.rts = rts;
    o.weight_slack_i = parse_broadcast(a.weight_slack_i, "--weight-slack-i", 1.0);
    o.weight_slack_o = parse_broadcast(a.weight_slack_o, "--weight-slack-o", 1.0);
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  if (model == "addsupereff") {
    AddSupereffOptions o;
    o.orientation = orientation_or(a, Orientation::none);
    o.rts = rts;
    o.weight_slack_i = parse_broadcast(a.weight_slack_i, "--weight-slack-i");
    o.weight_slack_o = parse_broadcast(a.weight_slack_o, "--weight-slack-o");
    o.dmu_eval = eval;
    o.dmu_ref = ref;
    return o;
  }
  throw UsageError("--model: '" + model + "' is not a crisp model");
}

AddminOptions addmin_options(const Args& a, const DeaData& d) {
  AddminOptions o;
  o.orientation = orientation_or(a, Orientation::none);
  o.rts = rts_of(a);
  o.weight_slack_i = parse_broadcast(a.weight_slack_i, "--weight-slack-i", 1.0);
  o.weight_slack_o = parse_broadcast(a.weight_slack_o, "--weight-slack-o", 1.0);
  o.dmu_eval = parse_members(a.dmu_eval, d.dmunames(), "--dmu-eval");
  o.dmu_ref = parse_members(a.dmu_ref, d.dmunames(), "--dmu-ref");
  return o;
}

std::vector<LinearProgram> programs_of(const std::string& model, const DeaData& d, const SubmodelOptions& o) {
  if (model == "basic") return model_basic_lp(d, std::get<BasicOptions>(o));
  if (model == "multiplier") return model_multiplier_lp(d, std::get<MultiplierOptions>(o));
  if (model == "deaps") return model_deaps_lp(d, std::get<DeapsOptions>(o));
  if (model == "additive") return model_additive_lp(d, std::get<AdditiveOptions>(o));
  if (model == "sbmeff") return model_sbmeff_lp(d, std::get<SbmOptions>(o));
  throw UsageError("--emit-lp: not available for model '" + model + "'");
}

ExportOptions export_options(const Args& a) {
  ExportOptions e;
  e.format = parse_export_format(a.format);
  e.path = a.out;
  e.split = a.split;
  return e;
}

std::string sibling_path(const Args& a, const std::string& ext) {
  std::filesystem::path p = a.out.empty() ? std::filesystem::path(default_results_name()) : std::filesystem::path(a.out);
  p.replace_extension(ext);
  return p.string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + path + "'");
}

void report(const std::vector<std::string>& paths, bool quiet) {
  if (quiet) return;
  for (const auto& p : paths) std::cout << "wrote " << p << "\n";
}

void print_scores(const DeaResult& r, bool quiet) {
  if (quiet) return;
  const auto& names = r.data->dmunames();
  for (std::size_t k = 0; k < r.dmus.size(); ++k)
    std::cout << names[r.dmu_eval[k]] << "\t" << format_number(r.dmus[k].efficiency) << "\t"
              << to_string(r.dmus[k].classification) << "\n";
}

int run(const Args& a) {
  const Table table = read_csv_file(a.data);
  const auto& m = a.model;

  if (m == "malmquist") {
    const auto series = load_panel(a, table);
    MalmquistOptions o;
    o.orientation = orientation_or(a, Orientation::input);
    const auto rts = rts_of(a);
    if (rts.kind != RtsKind::crs && rts.kind != RtsKind::vrs) throw UsageError("--rts: malmquist accepts crs or vrs");
    o.rts = rts.kind;
    o.type1 = parse_frontier_type(a.type1);
    o.type2 = parse_malmquist_type(a.type2);
    o.tc_vrs = a.tc_vrs;
    o.dmu_eval = parse_members(a.dmu_eval, series[0].dmunames(), "--dmu-eval");
    o.dmu_ref = parse_members(a.dmu_ref, series[0].dmunames(), "--dmu-ref");
    report(summary_export(malmquist_index(series, o), export_options(a)), a.quiet);
    return 0;
  }
  if (m == "kaoliu") {
    const auto f = load_fuzzy(a, table);
    const DeaData core(f.input().mL, f.output().mL, f.dmunames(), f.input_names(), f.output_names(), f.special());
    KaoliuOptions o;
    o.submodel = a.submodel;
    o.submodel_options = crisp_options(a, a.submodel, core);
    if (!a.alpha.empty()) {
      const auto v = parse_numbers(a.alpha, "--alpha");
      // A single integer N > 1 asks for N equispaced levels.
      if (v.size() == 1 && v[0] > 1.0 && v[0] == std::floor(v[0])) o.alpha = alpha_grid(static_cast<std::size_t>(v[0]));
      else o.alpha = v;
    }
    o.dmu_eval = parse_members(a.dmu_eval, core.dmunames(), "--dmu-eval");
    o.dmu_ref = parse_members(a.dmu_ref, core.dmunames(), "--dmu-ref");
    o.threads = a.threads;
    report(summary_export(modelfuzzy_kaoliu(f, o), export_options(a)), a.quiet);
    return 0;
  }

  const DeaData data = load_crisp(a, table);
  if (a.emit_lp) {
    if (m == "addmin" || m == "cross" || m == "bootstrap" || m == "metafrontier" || m == "fdh" || m == "rdm")
      throw UsageError("--emit-lp: not available for model '" + m + "'");
    const auto progs = programs_of(m, data, crisp_options(a, m, data));
    std::ostringstream text;
    for (std::size_t k = 0; k < progs.size(); ++k) {
      text << "# program " << (k + 1) << "\n";
      dump(text, progs[k]);
      text << "\n";
    }
    if (a.out.empty()) std::cout << text.str();
    else {
      write_text(a.out, text.str());
      report({a.out}, a.quiet);
    }
    return 0;
  }
  if (m == "cross") {
    CrossOptions o;
    o.orientation = orientation_or(a, Orientation::input);
    o.rts = rts_of(a);
    o.epsilon = a.epsilon;
    o.selfapp = a.selfapp;
    o.correction = a.correction;
    o.M2 = a.m2;
    o.M3 = a.m3;
    o.dmu_eval = parse_members(a.dmu_eval, data.dmunames(), "--dmu-eval");
    o.dmu_ref = parse_members(a.dmu_ref, data.dmunames(), "--dmu-ref");
    report(summary_export(cross_efficiency(data, o), export_options(a)), a.quiet);
    return 0;
  }
  if (m == "bootstrap") {
    BootstrapOptions o;
    o.orientation = orientation_or(a, Orientation::input);
    o.rts = rts_of(a);
    o.B = a.B;
    o.alpha = a.ci_alpha;
    if (a.h.rfind("h", 0) == 0) o.h.rule = parse_bandwidth_rule(a.h);
    else o.h.value = parse_number(a.h, "--h");
    o.seed = a.seed;
    o.threads = a.threads;
    const auto r = bootstrap_basic(data, o);
    report(summary_export(to_json(r), csv_tables(r, a.bootstrap_estimates), export_options(a)), a.quiet);
    return 0;
  }
  if (m == "metafrontier") {
    if (a.groups.empty()) throw UsageError("--groups: required for metafrontier");
    BasicOptions o = std::get<BasicOptions>(crisp_options(a, "basic", data));
    const auto g = parse_grouping(a.groups, data.n_dmus());
    report(summary_export(metafrontier(data, g, o, a.threads), export_options(a)), a.quiet);
    return 0;
  }
  DeaResult res;
  if (m == "addmin") res = model_addmin(data, addmin_options(a, data));
  else res = run_submodel(m, data, crisp_options(a, m, data), {}, {});
  print_scores(res, a.quiet);
  auto paths = summary_export(res, export_options(a));
  if (a.emit_dot) {
    const auto p = sibling_path(a, ".dot");
    write_text(p, reference_graph_dot(res));
    paths.push_back(p);
  }
  report(paths, a.quiet);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data envelopment analysis models"};
  // --h is the bootstrap bandwidth, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  Args a;
  app.add_option("--data", a.data, "Input CSV with a header row")->required();
  app.add_option("--dmu-col", a.dmu_col, "DMU label column (position or name)");
  app.add_option("--ni", a.ni, "Number of input columns after the DMU column");
  app.add_option("--no", a.no, "Number of output columns after the inputs");
  app.add_option("--inputs", a.inputs, "Input columns, e.g. 2-3 or Assets,Equity");
  app.add_option("--outputs", a.outputs, "Output columns");
  app.add_option("--nc-inputs", a.nc_inputs, "Non-controllable inputs (1-based or names)");
  app.add_option("--nc-outputs", a.nc_outputs, "Non-controllable outputs");
  app.add_option("--nd-inputs", a.nd_inputs, "Non-discretionary inputs");
  app.add_option("--nd-outputs", a.nd_outputs, "Non-discretionary outputs");
  app.add_option("--ud-inputs", a.ud_inputs, "Undesirable inputs");
  app.add_option("--ud-outputs", a.ud_outputs, "Undesirable outputs");
  app.add_option("--model", a.model, "Model name")
      ->check(CLI::IsMember({"basic", "fdh", "rdm", "multiplier", "nonradial", "deaps", "additive", "addmin",
                             "sbmeff", "profit", "supereff", "sbmsupereff", "addsupereff", "cross", "kaoliu",
                             "malmquist", "bootstrap", "metafrontier"}));
  app.add_option("--orientation", a.orientation, "io, oo, dir or no");
  app.add_option("--rts", a.rts, "crs, vrs, nirs, ndrs or grs");
  app.add_option("--L", a.L, "Lower bound on the intensity sum (grs)");
  app.add_option("--U", a.U, "Upper bound on the intensity sum (grs)");
  app.add_option("--dmu-eval", a.dmu_eval, "Evaluated DMUs (1-based positions, ranges or labels)");
  app.add_option("--dmu-ref", a.dmu_ref, "Reference DMUs");
  app.add_option("--maxslack", a.maxslack, "Run the max-slack second stage");
  app.add_option("--weight-slack-i", a.weight_slack_i, "Input slack weights (scalar or list)");
  app.add_option("--weight-slack-o", a.weight_slack_o, "Output slack weights (scalar or list)");
  app.add_option("--weight-slack", a.weight_slack, "Second-stage slack weights of nonradial/deaps");
  app.add_option("--weight-eff", a.weight_eff, "Factor weights of deaps");
  app.add_option("--restricted-eff", a.restricted_eff, "Bound deaps factors");
  app.add_option("--dir-input", a.dir_input, "Directional input vector");
  app.add_option("--dir-output", a.dir_output, "Directional output vector");
  app.add_flag("--irdm", a.irdm, "Inverse range directional model");
  app.add_option("--epsilon", a.epsilon, "Lower bound on multipliers");
  app.add_flag("--kaizen", a.kaizen, "SBM projection onto the closest facet");
  app.add_option("--price-input", a.price_input, "Input prices (profit model)");
  app.add_option("--price-output", a.price_output, "Output prices (profit model)");
  app.add_option("--restricted-optimal", a.restricted_optimal, "Keep x <= x_o and y >= y_o in the profit model");
  app.add_option("--selfapp", a.selfapp, "Include self-appraisal in cross-efficiency means");
  app.add_flag("--correction", a.correction, "Corrected cross-efficiency ratio");
  app.add_option("--M2", a.m2, "Compute method II weights");
  app.add_option("--M3", a.m3, "Compute method III weights");
  app.add_option("--submodel", a.submodel, "Crisp model of the fuzzy analysis");
  app.add_option("--alpha", a.alpha, "Alpha levels (list) or a level count");
  app.add_option("--inputs-mR", a.inputs_mR, "Fuzzy input mR columns");
  app.add_option("--inputs-dL", a.inputs_dL, "Fuzzy input dL columns");
  app.add_option("--inputs-dR", a.inputs_dR, "Fuzzy input dR columns");
  app.add_option("--outputs-mR", a.outputs_mR, "Fuzzy output mR columns");
  app.add_option("--outputs-dL", a.outputs_dL, "Fuzzy output dL columns");
  app.add_option("--outputs-dR", a.outputs_dR, "Fuzzy output dR columns");
  app.add_option("--nper", a.nper, "Periods in a wide panel");
  app.add_option("--period-col", a.period_col, "Period column of a long panel");
  app.add_option("--type1", a.type1, "cont, seq or glob");
  app.add_option("--type2", a.type2, "fgnz, rd, gl or bias");
  app.add_flag("--tc-vrs", a.tc_vrs, "Technical change under vrs (bias decomposition)");
  app.add_option("--B", a.B, "Bootstrap replications");
  app.add_option("--ci-alpha", a.ci_alpha, "Confidence level complement");
  app.add_option("--h", a.h, "Bandwidth: a number or h1, h2, h3, h4");
  app.add_option("--seed", a.seed, "Random seed");
  app.add_option("--threads", a.threads, "Worker threads");
  app.add_option("--groups", a.groups, "Metafrontier groups, e.g. G1=1-8;G2=9-14");
  app.add_option("--out", a.out, "Output path (default ResultsDEA<timestamp>)");
  app.add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--split", a.split, "One file per result facet");
  app.add_flag("--emit-lp", a.emit_lp, "Write the unsolved programs instead of solving");
  app.add_flag("--emit-dot", a.emit_dot, "Also write the reference graph as DOT");
  app.add_flag("--bootstrap-estimates", a.bootstrap_estimates, "Also export the bootstrap estimates (CSV)");
  app.add_flag("--quiet", a.quiet, "Do not print scores and paths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run(a);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DeaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
