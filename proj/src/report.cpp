#include "watson/report.hpp"

#include <sstream>

#include "json.hpp"

namespace watson {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kResidualDigits = 6;

std::string value_text(const XReal& x, unsigned digits) { return x.to_string(digits); }
std::string residual_text(const XReal& x) { return x.to_string(kResidualDigits); }

Json params_json(const std::vector<std::pair<std::string, Rational>>& params) {
  Json j = Json::object();
  for (const auto& [name, q] : params) j[name] = to_decimal_string(q);
  return j;
}

std::string params_text(const std::vector<std::pair<std::string, Rational>>& params) {
  std::string out;
  for (const auto& [name, q] : params) {
    if (!out.empty()) out += ";";
    out += name + "=" + to_decimal_string(q);
  }
  return out;
}

Json instance_json(const RelationInstance& s, unsigned digits) {
  Json j;
  j["index"] = s.index;
  j["probe"] = s.probe;
  if (s.lattice_indices) {
    j["lattice_indices"] = Json::array({s.lattice_indices->first, s.lattice_indices->second});
  } else {
    j["lattice_indices"] = nullptr;
  }
  j["params"] = params_json(s.params);
  if (s.inapplicable) {
    j["inapplicable"] = s.note;
    return j;
  }
  j["lhs"] = value_text(s.entry.lhs.value, digits);
  j["rhs"] = value_text(s.entry.rhs.value, digits);
  if (s.entry.lhs.exact) j["lhs_exact"] = to_string(*s.entry.lhs.exact);
  if (s.entry.rhs.exact) j["rhs_exact"] = to_string(*s.entry.rhs.exact);
  j["abs_residual"] = residual_text(s.entry.abs_residual);
  j["rel_residual"] = residual_text(s.entry.rel_residual);
  j["eval_bounds"] = residual_text(s.entry.rel_bound);
  j["converged"] = s.entry.converged;
  j["exact"] = s.entry.exact;
  return j;
}

Json report_json(const RelationReport& r) {
  Json j;
  j["relation_id"] = r.relation_id;
  j["paper_anchor"] = r.paper_anchor;
  j["expected_identity"] = r.expected_identity;
  j["verdict"] = std::string(to_string(r.verdict));
  j["n_samples"] = r.samples.size();
  j["n_counted_random"] = r.counted_random();
  j["worst_rel_residual"] = residual_text(r.worst_rel_residual);
  if (r.counterexample) {
    j["counterexample"] = instance_json(r.samples[*r.counterexample], r.digits);
  } else {
    j["counterexample"] = nullptr;
  }
  j["transcription_flags"] = r.transcription_flags;
  Json inapplicable = Json::array();
  for (const auto& s : r.samples) {
    if (s.inapplicable) inapplicable.push_back(instance_json(s, r.digits));
  }
  j["inapplicable"] = inapplicable;
  if (!r.details.empty()) {
    Json d = Json::object();
    for (const auto& [k, v] : r.details) d[k] = v;
    j["details"] = d;
  }
  return j;
}

Json form_json(const FormVerdict& v) {
  Json j;
  j["id"] = std::string(to_string(v.id));
  j["source"] = std::string(closed_form_source(v.id));
  j["status"] = std::string(to_string(v.status));
  j["sample_count"] = v.sample_count;
  j["worst_residual"] = v.worst_residual;
  j["evidence"] = v.evidence;
  return j;
}

Json point_json(const WatsonPoint& p) {
  Json j;
  j["a"] = to_decimal_string(p.a);
  j["b"] = to_decimal_string(p.b);
  j["c"] = to_decimal_string(p.c);
  j["i"] = p.i;
  j["j"] = p.j;
  return j;
}

Json eval_json(const EvalResult& r, unsigned digits) {
  Json j;
  j["value"] = value_text(r.value, digits);
  if (r.exact) j["exact"] = to_string(*r.exact);
  j["abs_err_bound"] = residual_text(r.abs_err_bound);
  j["method"] = std::string(to_string(r.method));
  j["terms_used"] = r.terms_used;
  j["converged"] = r.converged;
  return j;
}

const char* kCsvHeader =
    "relation_id,index,probe,i,j,params,lhs,rhs,abs_residual,rel_residual,eval_bounds,converged,exact,note\n";

void csv_rows(std::ostringstream& out, const RelationReport& r) {
  for (const auto& s : r.samples) {
    out << r.relation_id << ',' << s.index << ',' << (s.probe ? 1 : 0) << ',';
    if (s.lattice_indices) {
      out << s.lattice_indices->first << ',' << s.lattice_indices->second << ',';
    } else {
      out << ",,";
    }
    out << params_text(s.params) << ',';
    if (s.inapplicable) {
      out << ",,,,,0,0,\"" << s.note << "\"\n";
      continue;
    }
    out << value_text(s.entry.lhs.value, r.digits) << ',' << value_text(s.entry.rhs.value, r.digits) << ','
        << residual_text(s.entry.abs_residual) << ',' << residual_text(s.entry.rel_residual) << ','
        << residual_text(s.entry.rel_bound) << ',' << (s.entry.converged ? 1 : 0) << ','
        << (s.entry.exact ? 1 : 0) << ",\n";
  }
}

void report_text(std::ostringstream& out, const RelationReport& r) {
  out << r.relation_id << ": " << to_string(r.verdict) << " (" << r.counted_random() << " random + probes, worst "
      << residual_text(r.worst_rel_residual) << ")";
  if (!r.expected_identity) out << " [not expected to hold]";
  out << '\n';
  if (r.counterexample) {
    const RelationInstance& s = r.samples[*r.counterexample];
    out << "  counterexample " << params_text(s.params);
    if (s.lattice_indices) out << " i=" << s.lattice_indices->first << " j=" << s.lattice_indices->second;
    out << ": lhs " << value_text(s.entry.lhs.value, r.digits) << ", rhs " << value_text(s.entry.rhs.value, r.digits)
        << '\n';
  }
  for (const auto& f : r.transcription_flags) out << "  transcription: " << f << '\n';
  for (const auto& [k, v] : r.details) out << "  " << k << ": " << v << '\n';
}

}  // namespace

std::string to_json(const SuiteResult& suite) {
  Json j;
  j["suite_version"] = kSuiteVersion;
  j["seed"] = suite.seed;
  j["digits"] = suite.digits;
  j["samples_per_relation"] = suite.samples;
  j["pole_guard"] = suite.pole_guard;
  Json forms = Json::array();
  for (const auto& v : suite.closed_forms) forms.push_back(form_json(v));
  j["closed_forms"] = forms;
  Json relations = Json::array();
  for (const auto& r : suite.relations) relations.push_back(report_json(r));
  j["relations"] = relations;
  j["passed"] = suite.passed();
  return j.dump(2) + "\n";
}

std::string to_json(const RelationReport& report) {
  Json j;
  j["suite_version"] = kSuiteVersion;
  j["seed"] = report.seed;
  j["digits"] = report.digits;
  j["samples_per_relation"] = report.n_requested;
  j["relations"] = Json::array({report_json(report)});
  return j.dump(2) + "\n";
}

std::string to_json(const WatsonPoint& p, const EvalResult& r, unsigned digits) {
  Json j;
  j["point"] = point_json(p);
  j["result"] = eval_json(r, digits);
  return j.dump(2) + "\n";
}

std::string to_json(const ReductionPlan& plan, unsigned digits) {
  Json j;
  j["target"] = point_json(plan.target);
  Json terms = Json::array();
  for (const auto& t : plan.terms) {
    Json term;
    term["k"] = t.shift;
    term["weight"] = value_text(XReal(t.weight, t.base.value.precision()), digits);
    term["weight_exact"] = to_string(t.weight);
    term["watson_value"] = value_text(t.base.value, digits);
    terms.push_back(term);
  }
  j["terms"] = terms;
  j["value"] = value_text(plan.value, digits);
  j["abs_err_bound"] = residual_text(plan.abs_err_bound);
  j["series_value"] = value_text(plan.series.value, digits);
  j["residual"] = residual_text(plan.residual);
  return j.dump(2) + "\n";
}

std::string to_csv(const SuiteResult& suite) {
  std::ostringstream out;
  out << kCsvHeader;
  for (const auto& r : suite.relations) csv_rows(out, r);
  return out.str();
}

std::string to_csv(const RelationReport& report) {
  std::ostringstream out;
  out << kCsvHeader;
  csv_rows(out, report);
  return out.str();
}

std::string to_text(const SuiteResult& suite) {
  std::ostringstream out;
  out << "seed " << suite.seed << ", digits " << suite.digits << ", samples " << suite.samples << ", pole_guard "
      << suite.pole_guard << '\n';
  for (const auto& v : suite.closed_forms) {
    out << "closed form " << to_string(v.id) << ": " << to_string(v.status) << '\n';
  }
  for (const auto& r : suite.relations) report_text(out, r);
  out << (suite.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string to_text(const RelationReport& report) {
  std::ostringstream out;
  report_text(out, report);
  return out.str();
}

std::string to_text(const EvalResult& r, unsigned digits) {
  std::ostringstream out;
  if (r.exact && *r.exact == 0) {
    out << "0 (exact)\n";
  } else if (r.exact) {
    out << to_string(*r.exact) << " (exact) = " << value_text(r.value, digits) << '\n';
  } else {
    out << value_text(r.value, digits) << '\n';
  }
  out << "error bound: " << residual_text(r.abs_err_bound) << '\n'
      << "method: " << to_string(r.method) << '\n'
      << "terms: " << r.terms_used << '\n'
      << "converged: " << (r.converged ? "yes" : "no") << '\n';
  return out.str();
}

std::string to_text(const ReductionPlan& plan, unsigned digits) {
  std::ostringstream out;
  out << "f_{0," << plan.target.j << "}(" << to_decimal_string(plan.target.a) << ", "
      << to_decimal_string(plan.target.b) << ", " << to_decimal_string(plan.target.c) << ")\n";
  for (const auto& t : plan.terms) {
    out << "  k=" << t.shift << "  w=" << to_string(t.weight) << "  watson_00=" << value_text(t.base.value, digits)
        << '\n';
  }
  out << "value: " << value_text(plan.value, digits) << '\n'
      << "series: " << value_text(plan.series.value, digits) << '\n'
      << "residual: " << residual_text(plan.residual) << '\n';
  return out.str();
}

}  // namespace watson
