#include "deakit/results.hpp"

#include "internal/common.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace deakit {

using Json = nlohmann::ordered_json;

namespace {

Eigen::Index ix(std::size_t k) { return static_cast<Eigen::Index>(k); }

std::vector<std::string> labels_of(const std::vector<std::string>& names, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto j : idx) out.push_back(names[j]);
  return out;
}

bool all_na(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_na(v(i))) return false;
  return true;
}

}  // namespace

std::string_view to_string(Facet f) {
  switch (f) {
    case Facet::efficiencies: return "efficiencies";
    case Facet::lambdas: return "lambdas";
    case Facet::slacks: return "slacks";
    case Facet::targets: return "targets";
    case Facet::multipliers: return "multipliers";
  }
  return "?";
}

Facet parse_facet(std::string_view s) {
  for (auto f : {Facet::efficiencies, Facet::lambdas, Facet::slacks, Facet::targets, Facet::multipliers})
    if (s == to_string(f)) return f;
  throw DeaError("facet: unknown value '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Extraction

std::map<std::string, LabeledMatrix> extract(const DeaResult& r, Facet facet) {
  const auto& d = *r.data;
  const auto rows = labels_of(d.dmunames(), r.dmu_eval);
  const auto ne = ix(r.dmus.size());
  auto stack = [&](auto get, Eigen::Index cols) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Constant(ne, cols, NA);
    for (Eigen::Index k = 0; k < ne; ++k) {
      const Eigen::VectorXd& v = get(r.dmus[static_cast<std::size_t>(k)]);
      if (v.size() == cols) M.row(k) = v.transpose();
    }
    return M;
  };
  auto require = [&](bool present) {
    if (!present)
      throw DeaError("extract: model '" + r.modelname + "' does not produce " + std::string(to_string(facet)));
  };
  std::map<std::string, LabeledMatrix> out;
  switch (facet) {
    case Facet::efficiencies: {
      Eigen::MatrixXd e(ne, 1);
      for (Eigen::Index k = 0; k < ne; ++k) e(k, 0) = r.dmus[static_cast<std::size_t>(k)].efficiency;
      out["efficiency"] = {rows, {"efficiency"}, e};
      Eigen::Index len = 0;
      for (const auto& dm : r.dmus) len = std::max(len, dm.efficiency_vector.size());
      if (len > 0) {
        std::vector<std::string> cols;
        const auto& names = len == ix(d.n_inputs()) && r.orientation != Orientation::output ? d.input_names()
                                                                                           : d.output_names();
        for (Eigen::Index i = 0; i < len; ++i)
          cols.push_back(static_cast<std::size_t>(i) < names.size() ? names[static_cast<std::size_t>(i)]
                                                                   : "factor" + std::to_string(i + 1));
        out["efficiency_vector"] = {rows, cols, stack([](const DmuResult& x) -> const Eigen::VectorXd& {
                                      return x.efficiency_vector;
                                    }, len)};
      }
      break;
    }
    case Facet::lambdas:
      require(r.facets.lambdas);
      out["lambda"] = {rows, labels_of(d.dmunames(), r.dmu_ref),
                       stack([](const DmuResult& x) -> const Eigen::VectorXd& { return x.lambda; },
                             ix(r.dmu_ref.size()))};
      break;
    case Facet::slacks:
      require(r.facets.slacks);
      out["slack_input"] = {rows, d.input_names(),
                            stack([](const DmuResult& x) -> const Eigen::VectorXd& { return x.slack_input; },
                                  ix(d.n_inputs()))};
      out["slack_output"] = {rows, d.output_names(),
                             stack([](const DmuResult& x) -> const Eigen::VectorXd& { return x.slack_output; },
                                   ix(d.n_outputs()))};
      break;
    case Facet::targets:
      require(r.facets.targets);
      out["target_input"] = {rows, d.input_names(),
                             stack([](const DmuResult& x) -> const Eigen::VectorXd& { return x.target_input; },
                                   ix(d.n_inputs()))};
      out["target_output"] = {rows, d.output_names(),
                              stack([](const DmuResult& x) -> const Eigen::VectorXd& { return x.target_output; },
                                    ix(d.n_outputs()))};
      break;
    case Facet::multipliers: {
      require(r.facets.multipliers);
      const auto m = ix(d.n_inputs()), s = ix(d.n_outputs());
      Eigen::MatrixXd v = Eigen::MatrixXd::Constant(m, ne, NA), u = Eigen::MatrixXd::Constant(s, ne, NA),
                      xi = Eigen::MatrixXd::Constant(2, ne, NA);
      for (Eigen::Index k = 0; k < ne; ++k) {
        const auto& mu = r.dmus[static_cast<std::size_t>(k)].multipliers;
        if (!mu) continue;
        if (mu->input.size() == m) v.col(k) = mu->input;
        if (mu->output.size() == s) u.col(k) = mu->output;
        xi(0, k) = mu->rts_lower;
        xi(1, k) = mu->rts_upper;
      }
      out["input"] = {d.input_names(), rows, v};
      out["output"] = {d.output_names(), rows, u};
      out["rts"] = {{"xi_L", "xi_U"}, rows, xi};
      break;
    }
  }
  return out;
}

DeaResult scenario_result(const FuzzyDeaResult& f, std::size_t alpha_index, Scenario scenario) {
  if (alpha_index >= f.alphacut.size())
    throw DeaError("alpha index " + std::to_string(alpha_index) + " out of range (" +
                   std::to_string(f.alphacut.size()) + " levels)");
  const auto& fd = *f.data;
  DeaResult r;
  r.modelname = f.submodel;
  r.orientation = f.orientation;
  r.data = std::make_shared<const DeaData>(fd.input().mL, fd.output().mL, fd.dmunames(), fd.input_names(),
                                           fd.output_names(), fd.special());
  r.dmu_eval = f.dmu_eval;
  r.dmu_ref = f.dmu_ref;
  r.parameters["alpha"] = f.alphacut[alpha_index].alpha;
  r.notes.emplace_back(std::string("scenario ") + (scenario == Scenario::worst ? "worst" : "best"));
  r.dmus = scenario == Scenario::worst ? f.alphacut[alpha_index].worst : f.alphacut[alpha_index].best;
  for (const auto& d : r.dmus) {
    r.facets.lambdas = r.facets.lambdas || (d.lambda.size() > 0 && !all_na(d.lambda));
    r.facets.slacks = r.facets.slacks || (d.slack_input.size() > 0 && !all_na(d.slack_input));
    r.facets.targets = r.facets.targets || (d.target_input.size() > 0 && !all_na(d.target_input));
    r.facets.multipliers = r.facets.multipliers || d.multipliers.has_value();
  }
  return r;
}

std::map<std::string, LabeledMatrix> extract(const FuzzyDeaResult& f, std::size_t alpha_index, Scenario scenario,
                                             Facet facet) {
  return extract(scenario_result(f, alpha_index, scenario), facet);
}

// ---------------------------------------------------------------------------
// Reference sets

std::map<std::size_t, std::vector<Reference>> references(const DeaResult& r) {
  if (!r.facets.lambdas) throw DeaError("references: model '" + r.modelname + "' does not produce lambdas");
  std::map<std::size_t, std::vector<Reference>> out;
  for (std::size_t k = 0; k < r.dmus.size(); ++k) {
    const auto& d = r.dmus[k];
    if (d.classification == Classification::efficient || d.classification == Classification::unknown) continue;
    std::vector<Reference> refs;
    for (Eigen::Index q = 0; q < d.lambda.size(); ++q)
      if (d.lambda(q) > kLambdaTol) refs.push_back({r.dmu_ref[static_cast<std::size_t>(q)], d.lambda(q)});
    if (!refs.empty()) out[r.dmu_eval[k]] = std::move(refs);
  }
  return out;
}

std::vector<std::size_t> eff_dmus(const DeaResult& r, bool weakly) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < r.dmus.size(); ++k) {
    const auto c = r.dmus[k].classification;
    if (c == Classification::efficient || (weakly && c == Classification::weakly_efficient))
      out.push_back(r.dmu_eval[k]);
  }
  return out;
}

ReferenceGraph reference_graph(const DeaResult& r) {
  const auto refs = references(r);
  const auto& names = r.data->dmunames();
  std::map<std::size_t, std::size_t> relevance;
  ReferenceGraph g;
  for (const auto& [from, set] : refs)
    for (const auto& ref : set) {
      ++relevance[ref.dmu];
      g.edges.push_back({from, ref.dmu, ref.lambda});
    }
  std::set<std::size_t> members(r.dmu_eval.begin(), r.dmu_eval.end());
  members.insert(r.dmu_ref.begin(), r.dmu_ref.end());
  std::map<std::size_t, Classification> cls;
  for (std::size_t k = 0; k < r.dmus.size(); ++k) cls[r.dmu_eval[k]] = r.dmus[k].classification;
  for (auto j : members) {
    const auto c = cls.count(j) ? cls[j] : Classification::unknown;
    g.nodes.push_back({j, names[j], c, relevance.count(j) ? relevance[j] : 0});
  }
  return g;
}

std::string format_number(double v) {
  if (is_na(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string reference_graph_dot(const DeaResult& r) {
  const auto g = reference_graph(r);
  std::ostringstream out;
  out << "digraph references {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (const auto& n : g.nodes) {
    const bool eff = n.classification == Classification::efficient;
    out << "  " << dot_quote(n.label) << " [class=" << dot_quote(std::string(to_string(n.classification)))
        << ", relevance=" << n.relevance;
    if (eff) out << ", style=filled, width=" << fixed6(0.5 + 0.25 * static_cast<double>(n.relevance));
    out << "];\n";
  }
  const auto& names = r.data->dmunames();
  for (const auto& e : g.edges)
    out << "  " << dot_quote(names[e.from]) << " -> " << dot_quote(names[e.to]) << " [label=\"" << fixed6(e.lambda)
        << "\", lambda=" << format_number(e.lambda) << "];\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json num(double v) {
  if (is_na(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

double get_num(const Json& j) {
  if (j.is_null()) return NA;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
    throw DeaError("json: unexpected string '" + s + "' in numeric field");
  }
  return j.get<double>();
}

Json vec(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

Eigen::VectorXd get_vec(const Json& j) {
  Eigen::VectorXd v(ix(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(ix(i)) = get_num(j[i]);
  return v;
}

Json mat(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

Eigen::MatrixXd get_mat(const Json& j) {
  if (j.empty()) return {};
  Eigen::MatrixXd m(ix(j.size()), ix(j[0].size()));
  for (std::size_t i = 0; i < j.size(); ++i) m.row(ix(i)) = get_vec(j[i]).transpose();
  return m;
}

/// Per-DMU object keyed by label.
Json by_dmu(const std::vector<std::string>& labels, const Eigen::VectorXd& v) {
  Json o = Json::object();
  for (std::size_t k = 0; k < labels.size(); ++k) o[labels[k]] = num(v(ix(k)));
  return o;
}

Json rows_by_dmu(const std::vector<std::string>& labels, const Eigen::MatrixXd& m) {
  Json o = Json::object();
  for (std::size_t k = 0; k < labels.size(); ++k) o[labels[k]] = vec(m.row(ix(k)).transpose());
  return o;
}

Json rts_json(const RtsSpec& r) {
  return Json{{"kind", std::string(to_string(r.kind))}, {"L", num(r.L)}, {"U", num(r.U)}};
}

RtsSpec get_rts(const Json& j) {
  RtsSpec r = parse_rts(j.at("kind").get<std::string>());
  r.L = get_num(j.at("L"));
  r.U = get_num(j.at("U"));
  return r;
}

Json special_json(const SpecialVariables& s) {
  return Json{{"nc_inputs", s.nc_inputs},   {"nc_outputs", s.nc_outputs}, {"nd_inputs", s.nd_inputs},
              {"nd_outputs", s.nd_outputs}, {"ud_inputs", s.ud_inputs},   {"ud_outputs", s.ud_outputs}};
}

SpecialVariables get_special(const Json& j) {
  SpecialVariables s;
  j.at("nc_inputs").get_to(s.nc_inputs);
  j.at("nc_outputs").get_to(s.nc_outputs);
  j.at("nd_inputs").get_to(s.nd_inputs);
  j.at("nd_outputs").get_to(s.nd_outputs);
  j.at("ud_inputs").get_to(s.ud_inputs);
  j.at("ud_outputs").get_to(s.ud_outputs);
  return s;
}

Json data_json(const DeaData& d) {
  return Json{{"dmunames", d.dmunames()},       {"input_names", d.input_names()},
              {"output_names", d.output_names()}, {"input", mat(d.input())},
              {"output", mat(d.output())},        {"special", special_json(d.special())}};
}

DmuStatus parse_status(const std::string& s) {
  for (auto v : {DmuStatus::optimal, DmuStatus::infeasible, DmuStatus::unbounded, DmuStatus::empty_reference,
                 DmuStatus::degenerate, DmuStatus::numerical})
    if (s == to_string(v)) return v;
  throw DeaError("json: unknown status '" + s + "'");
}

Classification parse_classification(const std::string& s) {
  for (auto v : {Classification::efficient, Classification::weakly_efficient, Classification::inefficient,
                 Classification::unknown})
    if (s == to_string(v)) return v;
  throw DeaError("json: unknown classification '" + s + "'");
}

Json dmu_json(const DmuResult& d) {
  Json o{{"efficiency", num(d.efficiency)},
         {"status", std::string(to_string(d.status))},
         {"classification", std::string(to_string(d.classification))},
         {"lambda", vec(d.lambda)},
         {"slack_input", vec(d.slack_input)},
         {"slack_output", vec(d.slack_output)},
         {"target_input", vec(d.target_input)},
         {"target_output", vec(d.target_output)},
         {"efficiency_vector", vec(d.efficiency_vector)}};
  if (d.multipliers)
    o["multipliers"] = Json{{"input", vec(d.multipliers->input)},
                            {"output", vec(d.multipliers->output)},
                            {"rts_lower", num(d.multipliers->rts_lower)},
                            {"rts_upper", num(d.multipliers->rts_upper)}};
  Json extra = Json::object();
  for (const auto& [k, v] : d.extra) extra[k] = num(v);
  o["extra"] = extra;
  o["flags"] = d.flags;
  return o;
}

DmuResult get_dmu(const Json& j) {
  DmuResult d;
  d.efficiency = get_num(j.at("efficiency"));
  d.status = parse_status(j.at("status").get<std::string>());
  d.classification = parse_classification(j.at("classification").get<std::string>());
  d.lambda = get_vec(j.at("lambda"));
  d.slack_input = get_vec(j.at("slack_input"));
  d.slack_output = get_vec(j.at("slack_output"));
  d.target_input = get_vec(j.at("target_input"));
  d.target_output = get_vec(j.at("target_output"));
  d.efficiency_vector = get_vec(j.at("efficiency_vector"));
  if (j.contains("multipliers")) {
    const auto& m = j["multipliers"];
    d.multipliers = Multipliers{get_vec(m.at("input")), get_vec(m.at("output")), get_num(m.at("rts_lower")),
                                get_num(m.at("rts_upper"))};
  }
  for (const auto& [k, v] : j.at("extra").items()) d.extra[k] = get_num(v);
  j.at("flags").get_to(d.flags);
  return d;
}

Json header(const char* kind) { return Json{{"schema_version", kSchemaVersion}, {"kind", kind}}; }

}  // namespace

std::string to_json(const DeaResult& r, int indent) {
  Json j = header("dea");
  const auto& d = *r.data;
  j["modelname"] = r.modelname;
  j["orientation"] = std::string(to_string(r.orientation));
  j["rts"] = rts_json(r.rts);
  j["maxslack"] = r.maxslack;
  j["facets"] = Json{{"lambdas", r.facets.lambdas},
                     {"slacks", r.facets.slacks},
                     {"targets", r.facets.targets},
                     {"multipliers", r.facets.multipliers}};
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = num(v);
  j["parameters"] = params;
  Json pm = Json::object();
  for (const auto& [k, v] : r.parameter_matrices) pm[k] = mat(v);
  j["parameter_matrices"] = pm;
  j["notes"] = r.notes;
  j["data"] = data_json(d);
  j["dmu_eval"] = labels_of(d.dmunames(), r.dmu_eval);
  j["dmu_ref"] = labels_of(d.dmunames(), r.dmu_ref);
  Json dmus = Json::object();
  for (std::size_t k = 0; k < r.dmus.size(); ++k) dmus[d.dmunames()[r.dmu_eval[k]]] = dmu_json(r.dmus[k]);
  j["dmus"] = dmus;
  return j.dump(indent);
}

DeaResult dea_result_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DeaError(std::string("json: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw DeaError("json: unsupported schema_version");
    if (j.at("kind").get<std::string>() != "dea") throw DeaError("json: not a crisp model result");
    DeaResult r;
    r.modelname = j.at("modelname").get<std::string>();
    r.orientation = parse_orientation(j.at("orientation").get<std::string>());
    r.rts = get_rts(j.at("rts"));
    r.maxslack = j.at("maxslack").get<bool>();
    const auto& f = j.at("facets");
    r.facets = {f.at("lambdas").get<bool>(), f.at("slacks").get<bool>(), f.at("targets").get<bool>(),
                f.at("multipliers").get<bool>()};
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters[k] = get_num(v);
    for (const auto& [k, v] : j.at("parameter_matrices").items()) r.parameter_matrices[k] = get_mat(v);
    j.at("notes").get_to(r.notes);
    const auto& dj = j.at("data");
    auto data = std::make_shared<const DeaData>(
        get_mat(dj.at("input")), get_mat(dj.at("output")), dj.at("dmunames").get<std::vector<std::string>>(),
        dj.at("input_names").get<std::vector<std::string>>(), dj.at("output_names").get<std::vector<std::string>>(),
        get_special(dj.at("special")));
    auto find = [&](const std::string& label) {
      const auto idx = data->find_dmu(label);
      if (!idx) throw DeaError("json: unknown DMU '" + label + "'");
      return *idx;
    };
    for (const auto& l : j.at("dmu_eval")) r.dmu_eval.push_back(find(l.get<std::string>()));
    for (const auto& l : j.at("dmu_ref")) r.dmu_ref.push_back(find(l.get<std::string>()));
    const auto& dmus = j.at("dmus");
    for (auto k : r.dmu_eval) r.dmus.push_back(get_dmu(dmus.at(data->dmunames()[k])));
    r.data = std::move(data);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DeaError(std::string("json: ") + e.what());
  }
}

namespace {

Json cross_method_json(const CrossMethod& m, const std::vector<std::string>& labels) {
  Json flags = Json::object();
  for (std::size_t k = 0; k < labels.size() && k < m.flags.size(); ++k) flags[labels[k]] = m.flags[k];
  return Json{{"multiplier_input", rows_by_dmu(labels, m.multiplier_input)},
              {"multiplier_output", rows_by_dmu(labels, m.multiplier_output)},
              {"multiplier_rts", rows_by_dmu(labels, m.multiplier_rts)},
              {"cross_eff", rows_by_dmu(labels, m.cross_eff)},
              {"e", by_dmu(labels, m.e)},
              {"A", by_dmu(labels, m.A)},
              {"maverick", by_dmu(labels, m.maverick)},
              {"flags", flags}};
}

std::vector<std::pair<std::string, const CrossMethod*>> cross_methods(const CrossEffResult& r) {
  std::vector<std::pair<std::string, const CrossMethod*>> out{{"arbitrary", &r.arbitrary}};
  if (r.m2_agg) out.emplace_back("M2_agg", &*r.m2_agg);
  if (r.m2_ben) out.emplace_back("M2_ben", &*r.m2_ben);
  if (r.m3_agg) out.emplace_back("M3_agg", &*r.m3_agg);
  if (r.m3_ben) out.emplace_back("M3_ben", &*r.m3_ben);
  return out;
}

std::vector<std::string> transitions(const std::vector<std::string>& periods) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t + 1 < periods.size(); ++t) out.push_back(periods[t] + "-" + periods[t + 1]);
  return out;
}

}  // namespace

std::string to_json(const CrossEffResult& r, int indent) {
  Json j = header("cross_efficiency");
  const auto labels = labels_of(r.data->dmunames(), r.dmu_eval);
  j["orientation"] = std::string(to_string(r.orientation));
  j["rts"] = rts_json(r.rts);
  j["epsilon"] = num(r.epsilon);
  j["selfapp"] = r.selfapp;
  j["correction"] = r.correction;
  j["data"] = data_json(*r.data);
  j["dmu_eval"] = labels;
  j["dmu_ref"] = labels_of(r.data->dmunames(), r.dmu_ref);
  j["efficiency"] = by_dmu(labels, r.efficiency);
  Json methods = Json::object();
  for (const auto& [name, m] : cross_methods(r)) methods[name] = cross_method_json(*m, labels);
  j["methods"] = methods;
  return j.dump(indent);
}

std::string to_json(const FuzzyDeaResult& r, int indent) {
  Json j = header("fuzzy_kaoliu");
  const auto labels = labels_of(r.data->dmunames(), r.dmu_eval);
  j["submodel"] = r.submodel;
  j["orientation"] = std::string(to_string(r.orientation));
  j["dmu_eval"] = labels;
  j["dmu_ref"] = labels_of(r.data->dmunames(), r.dmu_ref);
  Json cuts = Json::array();
  for (const auto& c : r.alphacut) {
    Json worst = Json::object(), best = Json::object();
    for (std::size_t k = 0; k < labels.size(); ++k) {
      worst[labels[k]] = dmu_json(c.worst[k]);
      best[labels[k]] = dmu_json(c.best[k]);
    }
    cuts.push_back(Json{{"alpha", num(c.alpha)}, {"worst", worst}, {"best", best}});
  }
  j["alphacut"] = cuts;
  j["notes"] = r.notes;
  return j.dump(indent);
}

std::string to_json(const MalmquistResult& r, int indent) {
  Json j = header("malmquist");
  const auto& o = r.options;
  j["orientation"] = std::string(to_string(o.orientation));
  j["rts"] = std::string(to_string(o.rts));
  j["type1"] = std::string(to_string(o.type1));
  j["type2"] = std::string(to_string(o.type2));
  j["tc_vrs"] = o.tc_vrs;
  j["dmunames"] = r.dmunames;
  j["period_names"] = r.period_names;
  j["transitions"] = transitions(r.period_names);
  Json idx = Json::object();
  for (const auto& [name, m] : r.indices) idx[name] = rows_by_dmu(r.dmunames, m);
  j["indices"] = idx;
  Json eff = Json::object();
  for (const auto& [name, m] : r.eff_all) eff[name] = rows_by_dmu(r.dmunames, m);
  j["eff_all"] = eff;
  j["notes"] = r.notes;
  return j.dump(indent);
}

std::string to_json(const BootstrapResult& r, int indent) {
  Json j = header("bootstrap");
  const auto& o = r.options;
  const auto& labels = r.data->dmunames();
  j["orientation"] = std::string(to_string(o.orientation));
  j["rts"] = rts_json(o.rts);
  j["B"] = o.B;
  j["alpha"] = num(o.alpha);
  j["h_rule"] = std::string(to_string(o.h.rule));
  if (o.h.rule == BandwidthRule::fixed) j["h_value"] = num(o.h.value);
  j["h"] = num(r.h);
  j["seed"] = o.seed;
  Json dmus = Json::object();
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const auto q = ix(k);
    dmus[labels[k]] = Json{{"score", num(r.score(q))},       {"score_bc", num(r.score_bc(q))},
                           {"bias", num(r.bias(q))},         {"mean", num(r.mean(q))},
                           {"variance", num(r.variance(q))}, {"median", num(r.median(q))},
                           {"CI_low", num(r.ci_low(q))},     {"CI_up", num(r.ci_up(q))},
                           {"failures", r.failures[k]}};
  }
  j["dmus"] = dmus;
  j["estimates_bootstrap"] = mat(r.estimates_bootstrap);
  j["notes"] = r.notes;
  return j.dump(indent);
}

std::string to_json(const MetafrontierResult& r, int indent) {
  Json j = header("metafrontier");
  const auto& g = r.grouping;
  Json groups = Json::object();
  std::size_t pos = 0;
  std::vector<std::string> group_of;
  for (std::size_t k = 0; k < g.size(); ++k) {
    groups[g.names[k]] = std::vector<std::string>(r.dmunames.begin() + static_cast<std::ptrdiff_t>(pos),
                                                  r.dmunames.begin() +
                                                      static_cast<std::ptrdiff_t>(pos + g.members[k].size()));
    group_of.insert(group_of.end(), g.members[k].size(), g.names[k]);
    pos += g.members[k].size();
  }
  j["groups"] = groups;
  Json dmus = Json::object();
  for (std::size_t i = 0; i < r.dmunames.size(); ++i) {
    Json gs = Json::object();
    for (std::size_t k = 0; k < g.size(); ++k) gs[g.names[k]] = num(r.group_scores(ix(i), ix(k)));
    dmus[r.dmunames[i]] = Json{{"group", group_of[i]},
                               {"group_scores", gs},
                               {"nonconcave", num(r.nonconcave(ix(i)))},
                               {"concave", num(r.concave(ix(i)))}};
  }
  j["dmus"] = dmus;
  return j.dump(indent);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

Table dmu_table(const std::vector<std::string>& labels, const std::vector<std::string>& cols,
                const Eigen::MatrixXd& m) {
  Table t;
  t.header.push_back("DMU");
  t.header.insert(t.header.end(), cols.begin(), cols.end());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    std::vector<std::string> row{labels[k]};
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(format_number(m(ix(k), c)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::string> prefixed(const std::string& p, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(p + n);
  return out;
}

}  // namespace

std::vector<CsvTable> csv_tables(const DeaResult& r) {
  std::vector<CsvTable> out;
  const auto& d = *r.data;
  const auto labels = labels_of(d.dmunames(), r.dmu_eval);
  {
    Table t;
    t.header = {"DMU", "efficiency", "status", "classification"};
    std::set<std::string> extra_keys;
    for (const auto& dm : r.dmus)
      for (const auto& [k, v] : dm.extra) extra_keys.insert(k);
    t.header.insert(t.header.end(), extra_keys.begin(), extra_keys.end());
    for (std::size_t k = 0; k < r.dmus.size(); ++k) {
      const auto& dm = r.dmus[k];
      std::vector<std::string> row{labels[k], format_number(dm.efficiency), std::string(to_string(dm.status)),
                                   std::string(to_string(dm.classification))};
      for (const auto& key : extra_keys) row.push_back(dm.extra.count(key) ? format_number(dm.extra.at(key)) : "NA");
      t.rows.push_back(std::move(row));
    }
    out.push_back({"efficiency", std::move(t)});
  }
  const auto eff = extract(r, Facet::efficiencies);
  if (eff.count("efficiency_vector")) {
    const auto& v = eff.at("efficiency_vector");
    out.push_back({"efficiency_vector", dmu_table(labels, v.cols, v.values)});
  }
  if (r.facets.lambdas) {
    const auto parts = extract(r, Facet::lambdas);
    const auto& v = parts.at("lambda");
    out.push_back({"lambda", dmu_table(labels, v.cols, v.values)});
  }
  auto pair_table = [&](Facet f, const char* name, const char* a, const char* b) {
    const auto parts = extract(r, f);
    const auto& pa = parts.at(a);
    const auto& pb = parts.at(b);
    Eigen::MatrixXd m(pa.values.rows(), pa.values.cols() + pb.values.cols());
    m << pa.values, pb.values;
    auto cols = prefixed("input.", pa.cols);
    const auto oc = prefixed("output.", pb.cols);
    cols.insert(cols.end(), oc.begin(), oc.end());
    out.push_back({name, dmu_table(labels, cols, m)});
  };
  if (r.facets.slacks) pair_table(Facet::slacks, "slack", "slack_input", "slack_output");
  if (r.facets.targets) pair_table(Facet::targets, "target", "target_input", "target_output");
  if (r.facets.multipliers) {
    const auto parts = extract(r, Facet::multipliers);
    const auto& v = parts.at("input");
    const auto& u = parts.at("output");
    const auto& xi = parts.at("rts");
    Eigen::MatrixXd m(v.values.cols(), v.values.rows() + u.values.rows() + 2);
    m << v.values.transpose(), u.values.transpose(), xi.values.transpose();
    auto cols = prefixed("v.", v.rows);
    const auto uc = prefixed("u.", u.rows);
    cols.insert(cols.end(), uc.begin(), uc.end());
    cols.push_back("xi_L");
    cols.push_back("xi_U");
    out.push_back({"multiplier", dmu_table(labels, cols, m)});
  }
  return out;
}

std::vector<CsvTable> csv_tables(const CrossEffResult& r) {
  const auto labels = labels_of(r.data->dmunames(), r.dmu_eval);
  std::vector<CsvTable> out;
  out.push_back({"efficiency", dmu_table(labels, {"efficiency"}, r.efficiency)});
  for (const auto& [name, m] : cross_methods(r)) {
    out.push_back({name + ".cross_eff", dmu_table(labels, labels, m->cross_eff)});
    Eigen::MatrixXd s(m->e.size(), 3);
    s << m->e, m->A, m->maverick;
    out.push_back({name + ".summary", dmu_table(labels, {"e", "A", "maverick"}, s)});
    Eigen::MatrixXd w(m->multiplier_input.rows(),
                      m->multiplier_input.cols() + m->multiplier_output.cols() + m->multiplier_rts.cols());
    w << m->multiplier_input, m->multiplier_output, m->multiplier_rts;
    auto cols = prefixed("v.", r.data->input_names());
    const auto uc = prefixed("u.", r.data->output_names());
    cols.insert(cols.end(), uc.begin(), uc.end());
    cols.push_back("xi_L");
    cols.push_back("xi_U");
    out.push_back({name + ".multiplier", dmu_table(labels, cols, w)});
  }
  return out;
}

std::vector<CsvTable> csv_tables(const FuzzyDeaResult& r) {
  const auto labels = labels_of(r.data->dmunames(), r.dmu_eval);
  std::vector<std::string> cols;
  Eigen::MatrixXd m(ix(labels.size()), ix(2 * r.alphacut.size()));
  for (std::size_t a = 0; a < r.alphacut.size(); ++a) {
    const auto& c = r.alphacut[a];
    cols.push_back("alpha=" + format_number(c.alpha) + ".worst");
    cols.push_back("alpha=" + format_number(c.alpha) + ".best");
    for (std::size_t k = 0; k < labels.size(); ++k) {
      m(ix(k), ix(2 * a)) = c.worst[k].efficiency;
      m(ix(k), ix(2 * a + 1)) = c.best[k].efficiency;
    }
  }
  return {{"efficiency", dmu_table(labels, cols, m)}};
}

std::vector<CsvTable> csv_tables(const MalmquistResult& r) {
  std::vector<CsvTable> out;
  const auto tr = transitions(r.period_names);
  for (const auto& [name, m] : r.indices) out.push_back({name, dmu_table(r.dmunames, tr, m)});
  for (const auto& [name, m] : r.eff_all)
    out.push_back({name, dmu_table(r.dmunames, m.cols() == ix(tr.size()) ? tr : r.period_names, m)});
  return out;
}

std::vector<CsvTable> csv_tables(const BootstrapResult& r, bool estimates) {
  const auto& labels = r.data->dmunames();
  const auto n = r.score.size();
  Eigen::MatrixXd m(n, 9);
  for (Eigen::Index k = 0; k < n; ++k)
    m.row(k) << r.score(k), r.score_bc(k), r.bias(k), r.mean(k), r.variance(k), r.median(k), r.ci_low(k),
        r.ci_up(k), static_cast<double>(r.failures[static_cast<std::size_t>(k)]);
  std::vector<CsvTable> out{
      {"bootstrap", dmu_table(labels, {"score", "score_bc", "bias", "mean", "variance", "median", "CI_low", "CI_up",
                                       "failures"},
                              m)}};
  if (estimates) {
    std::vector<std::string> reps;
    for (Eigen::Index b = 0; b < r.estimates_bootstrap.rows(); ++b) reps.push_back(std::to_string(b + 1));
    Table t = dmu_table(reps, labels, r.estimates_bootstrap);
    t.header[0] = "replication";
    out.push_back({"estimates_bootstrap", std::move(t), false});
  }
  return out;
}

std::vector<CsvTable> csv_tables(const MetafrontierResult& r) {
  const auto& g = r.grouping;
  Table t;
  t.header = {"DMU", "group"};
  t.header.insert(t.header.end(), g.names.begin(), g.names.end());
  t.header.push_back("nonconcave");
  t.header.push_back("concave");
  std::size_t i = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t q = 0; q < g.members[k].size(); ++q, ++i) {
      std::vector<std::string> row{r.dmunames[i], g.names[k]};
      for (Eigen::Index c = 0; c < r.group_scores.cols(); ++c) row.push_back(format_number(r.group_scores(ix(i), c)));
      row.push_back(format_number(r.nonconcave(ix(i))));
      row.push_back(format_number(r.concave(ix(i))));
      t.rows.push_back(std::move(row));
    }
  return {{"metafrontier", std::move(t)}};
}

Table merge_tables(const std::vector<CsvTable>& tables) {
  Table out;
  out.header.push_back("DMU");
  std::size_t joined = 0;
  for (const auto& ct : tables) joined += ct.dmu_rows ? 1 : 0;
  for (const auto& ct : tables) {
    if (!ct.dmu_rows) continue;
    const auto& t = ct.table;
    if (out.rows.empty() && out.header.size() == 1)
      for (const auto& row : t.rows) out.rows.push_back({row.at(0)});
    if (t.rows.size() != out.rows.size()) throw DeaError("merge_tables: table '" + ct.name + "' has a different row count");
    const bool single = joined == 1;
    for (std::size_t c = 1; c < t.header.size(); ++c) out.header.push_back(single ? t.header[c] : ct.name + "." + t.header[c]);
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
      if (t.rows[k].at(0) != out.rows[k].at(0)) throw DeaError("merge_tables: row labels of '" + ct.name + "' differ");
      out.rows[k].insert(out.rows[k].end(), t.rows[k].begin() + 1, t.rows[k].end());
    }
  }
  return out;
}

ExportFormat parse_export_format(std::string_view s) {
  if (s == "json") return ExportFormat::json;
  if (s == "csv") return ExportFormat::csv;
  throw DeaError("format: expected json or csv, got '" + std::string(s) + "'");
}

std::string default_results_name() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  localtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%d_%H.%M.%S", &tm);
  return std::string("ResultsDEA") + buf;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string table_text(const Table& t) {
  std::ostringstream s;
  write_csv(s, t);
  return s.str();
}

}  // namespace

std::vector<std::string> summary_export(const std::string& json, const std::vector<CsvTable>& tables,
                                        const ExportOptions& opt) {
  const char* ext = opt.format == ExportFormat::json ? ".json" : ".csv";
  std::filesystem::path base = opt.path.empty() ? std::filesystem::path(default_results_name() + ext) : std::filesystem::path(opt.path);
  auto sibling = [&](const std::string& suffix) {
    auto p = base;
    p.replace_filename(base.stem().string() + "_" + suffix + ext);
    return p.string();
  };
  std::vector<std::string> written;
  if (opt.format == ExportFormat::json) {
    if (!opt.split) {
      write_file(base.string(), json + "\n");
      written.push_back(base.string());
      return written;
    }
    const auto doc = Json::parse(json);
    for (const auto& [key, value] : doc.items()) {
      if (key == "schema_version" || key == "kind") continue;
      Json part{{"schema_version", doc["schema_version"]}, {"kind", doc["kind"]}, {key, value}};
      const auto p = sibling(key);
      write_file(p, part.dump(2) + "\n");
      written.push_back(p);
    }
    return written;
  }
  if (opt.split) {
    for (const auto& t : tables) {
      const auto p = sibling(t.name);
      write_file(p, table_text(t.table));
      written.push_back(p);
    }
    return written;
  }
  write_file(base.string(), table_text(merge_tables(tables)));
  written.push_back(base.string());
  for (const auto& t : tables)
    if (!t.dmu_rows) {
      const auto p = sibling(t.name);
      write_file(p, table_text(t.table));
      written.push_back(p);
    }
  return written;
}

}  // namespace deakit
