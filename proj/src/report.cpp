#include "twospace/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace twospace {

namespace {

using nlohmann::ordered_json;

std::string decimal_str(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", r.to_double());
  return buf;
}

std::string decimal_str(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", d);
  return buf;
}

void put_rat(ordered_json& obj, const std::string& key,
             const std::optional<Rational>& r) {
  if (r) {
    obj[key] = r->str();
    obj[key + "_dec"] = r->to_double();
  } else {
    obj[key] = nullptr;
    obj[key + "_dec"] = nullptr;
  }
}

ordered_json set_to_json(const std::set<std::string>& s) {
  return ordered_json(std::vector<std::string>(s.begin(), s.end()));
}

ordered_json attack_to_json(const AttackReport& a) {
  ordered_json j;
  j["strategy"] = to_string(a.strategy);
  if (a.fallback)
    j["fallback"] = to_string(*a.fallback);
  if (a.lambda)
    put_rat(j, "lambda", a.lambda);
  put_rat(j, "P_E", std::optional<Rational>(a.p_e));
  put_rat(j, "P_B", std::optional<Rational>(a.p_b));
  put_rat(j, "formula_prediction", a.formula_prediction);
  put_rat(j, "formula_gap", a.formula_gap);
  if (a.global_sigma) {
    put_rat(j, "global_sigma", a.global_sigma);
    put_rat(j, "global_formula_misuse", a.global_formula_misuse);
  }
  ordered_json ts = ordered_json::array();
  for (const auto& [ct, diag] : a.per_transcript) {
    ordered_json t;
    t["ct"] = ct;
    put_rat(t, "prob", std::optional<Rational>(diag.prob));
    put_rat(t, "eve_correct", std::optional<Rational>(diag.eve_correct));
    if (diag.engaged)
      t["engaged"] = *diag.engaged;
    if (diag.decision)
      t["decision"] = *diag.decision;
    if (diag.sigma) {
      put_rat(t, "sigma", diag.sigma);
      put_rat(t, "p", diag.p);
      put_rat(t, "formula", diag.formula);
      put_rat(t, "formula_gap", diag.formula_gap);
      t["independent"] = *diag.independent;
    }
    if (diag.pool_zeros) {
      t["pool_zeros"] = *diag.pool_zeros;
      t["pool_ones"] = *diag.pool_ones;
    }
    ts.push_back(std::move(t));
  }
  j["per_transcript"] = std::move(ts);
  j["notes"] = a.notes;
  return j;
}

std::string render_json_report(const AnalysisReport& r) {
  ordered_json j;
  j["tool_version"] = r.tool_version;
  j["scheme_name"] = r.scheme_name;
  j["input_digest"] = r.input_digest;
  j["validation"] = r.validation;
  if (r.valid()) {
    ordered_json ov;
    ov["S12"] = set_to_json(r.overlap->s12);
    ov["S21"] = set_to_json(r.overlap->s21);
    ov["partial_overlap_keys"] = set_to_json(r.overlap->partial_overlap_keys);
    put_rat(ov, "q1", std::optional<Rational>(r.overlap->q1));
    put_rat(ov, "q2", std::optional<Rational>(r.overlap->q2));
    put_rat(ov, "tau1", r.overlap->tau1);
    put_rat(ov, "tau2", r.overlap->tau2);
    j["overlap"] = std::move(ov);

    ordered_json recv;
    put_rat(recv, "P_B", std::optional<Rational>(r.receiver->p_b));
    ordered_json ts = ordered_json::array();
    for (const auto& [ct, p] : r.receiver->per_transcript) {
      ordered_json t;
      t["ct"] = ct;
      put_rat(t, "prob", std::optional<Rational>(r.transcript_prob.at(ct)));
      put_rat(t, "p", std::optional<Rational>(p));
      const auto& posterior = r.bit_posteriors.at(ct);
      put_rat(t, "posterior0",
              std::optional<Rational>(posterior.weight_of(Label{"0"})));
      put_rat(t, "posterior1",
              std::optional<Rational>(posterior.weight_of(Label{"1"})));
      ts.push_back(std::move(t));
    }
    recv["per_transcript"] = std::move(ts);
    j["receiver"] = std::move(recv);

    ordered_json attacks = ordered_json::array();
    for (const auto& a : r.attacks)
      attacks.push_back(attack_to_json(a));
    j["attacks"] = std::move(attacks);

    if (r.conditions) {
      const auto& c = *r.conditions;
      ordered_json cj;
      cj["q2_gt_q1"] = c.q2_gt_q1;
      cj["sum_gt_1"] = c.sum_gt_1;
      cj["tau1_lt_1"] = c.tau1_lt_1;
      cj["engagement_gt_1"] = c.engagement_gt_1;
      cj["verdict_PE_lt_PB"] = c.verdict_pe_lt_pb;
      put_rat(cj, "q1", std::optional<Rational>(c.q1));
      put_rat(cj, "q2", std::optional<Rational>(c.q2));
      put_rat(cj, "tau1", std::optional<Rational>(c.tau1));
      put_rat(cj, "engagement", std::optional<Rational>(c.engagement));
      put_rat(cj, "P_E", std::optional<Rational>(c.p_e));
      put_rat(cj, "P_B", std::optional<Rational>(c.p_b));
      j["conditions"] = std::move(cj);
    }
  }
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

class CsvWriter {
public:
  CsvWriter() { rows_ << "section,field,value,decimal\n"; }

  void row(const std::string& section, const std::string& field,
           const std::string& value, const std::string& decimal = "") {
    rows_ << section << "," << field << "," << value << "," << decimal << "\n";
  }

  void rat(const std::string& section, const std::string& field,
           const Rational& r) {
    row(section, field, r.str(), decimal_str(r));
  }

  void opt_rat(const std::string& section, const std::string& field,
               const std::optional<Rational>& r) {
    if (r)
      rat(section, field, *r);
    else
      row(section, field, "undefined");
  }

  void set(const std::string& section, const std::string& field,
           const std::set<std::string>& s) {
    std::string joined;
    for (const auto& k : s)
      joined += (joined.empty() ? "" : ";") + k;
    row(section, field, joined);
  }

  std::string str() const { return rows_.str(); }

private:
  std::ostringstream rows_;
};

std::string render_csv_report(const AnalysisReport& r) {
  CsvWriter csv;
  csv.row("meta", "tool_version", r.tool_version);
  csv.row("meta", "scheme_name", r.scheme_name);
  csv.row("meta", "input_digest", r.input_digest);
  csv.row("meta", "valid", r.valid() ? "true" : "false");
  for (const auto& v : r.validation)
    csv.row("validation", "violation", v);
  if (!r.valid())
    return csv.str();

  csv.set("overlap", "S12", r.overlap->s12);
  csv.set("overlap", "S21", r.overlap->s21);
  csv.set("overlap", "partial_overlap_keys", r.overlap->partial_overlap_keys);
  csv.rat("overlap", "q1", r.overlap->q1);
  csv.rat("overlap", "q2", r.overlap->q2);
  csv.opt_rat("overlap", "tau1", r.overlap->tau1);
  csv.opt_rat("overlap", "tau2", r.overlap->tau2);

  csv.rat("receiver", "P_B", r.receiver->p_b);
  for (const auto& [ct, p] : r.receiver->per_transcript) {
    const std::string section = "transcript." + ct;
    csv.rat(section, "prob", r.transcript_prob.at(ct));
    csv.rat(section, "p", p);
    csv.rat(section, "posterior0", r.bit_posteriors.at(ct).weight_of(Label{"0"}));
    csv.rat(section, "posterior1", r.bit_posteriors.at(ct).weight_of(Label{"1"}));
  }

  for (const auto& a : r.attacks) {
    std::string section = "attack." + to_string(a.strategy);
    if (a.fallback)
      section += "." + to_string(*a.fallback);
    csv.rat(section, "P_E", a.p_e);
    csv.rat(section, "P_B", a.p_b);
    if (a.lambda)
      csv.rat(section, "lambda", *a.lambda);
    csv.opt_rat(section, "formula_prediction", a.formula_prediction);
    csv.opt_rat(section, "formula_gap", a.formula_gap);
    if (a.global_sigma) {
      csv.rat(section, "global_sigma", *a.global_sigma);
      csv.rat(section, "global_formula_misuse", *a.global_formula_misuse);
    }
    for (const auto& [ct, diag] : a.per_transcript) {
      const std::string ts = section + ".transcript." + ct;
      csv.rat(ts, "eve_correct", diag.eve_correct);
      if (diag.engaged)
        csv.row(ts, "engaged", *diag.engaged ? "true" : "false");
      if (diag.decision)
        csv.row(ts, "decision", *diag.decision);
      if (diag.sigma) {
        csv.rat(ts, "sigma", *diag.sigma);
        csv.rat(ts, "p", *diag.p);
        csv.rat(ts, "formula", *diag.formula);
        csv.rat(ts, "formula_gap", *diag.formula_gap);
        csv.row(ts, "independent", *diag.independent ? "true" : "false");
      }
      if (diag.pool_zeros) {
        csv.row(ts, "pool_zeros", std::to_string(*diag.pool_zeros));
        csv.row(ts, "pool_ones", std::to_string(*diag.pool_ones));
      }
    }
    for (const auto& note : a.notes)
      csv.row(section, "note", note);
  }

  if (r.conditions) {
    const auto& c = *r.conditions;
    csv.row("conditions", "q2_gt_q1", c.q2_gt_q1 ? "true" : "false");
    csv.row("conditions", "sum_gt_1", c.sum_gt_1 ? "true" : "false");
    csv.row("conditions", "tau1_lt_1", c.tau1_lt_1 ? "true" : "false");
    csv.row("conditions", "engagement_gt_1", c.engagement_gt_1 ? "true" : "false");
    csv.row("conditions", "verdict_PE_lt_PB", c.verdict_pe_lt_pb ? "true" : "false");
    csv.rat("conditions", "engagement", c.engagement);
  }
  for (const auto& note : r.notes)
    csv.row("notes", "note", note);
  return csv.str();
}

std::string rat_with_dec(const Rational& r) {
  return r.str() + " (" + decimal_str(r) + ")";
}

std::string opt_rat_with_dec(const std::optional<Rational>& r) {
  return r ? rat_with_dec(*r) : std::string("undefined");
}

std::string join_set(const std::set<std::string>& s) {
  std::string joined;
  for (const auto& k : s)
    joined += (joined.empty() ? "" : ", ") + k;
  return "{" + joined + "}";
}

std::string render_human_report(const AnalysisReport& r) {
  std::ostringstream out;
  out << r.tool_version << "\n";
  out << "scheme: " << r.scheme_name << " (" << r.input_digest << ")\n";
  if (!r.valid()) {
    out << "validation: FAILED\n";
    for (const auto& v : r.validation)
      out << "  - " << v << "\n";
    return out.str();
  }
  out << "validation: OK\n\n";

  out << "overlap analysis\n";
  out << "  q1 = " << rat_with_dec(r.overlap->q1)
      << "   q2 = " << rat_with_dec(r.overlap->q2) << "\n";
  out << "  S12 = " << join_set(r.overlap->s12)
      << "   S21 = " << join_set(r.overlap->s21)
      << "   partial = " << join_set(r.overlap->partial_overlap_keys) << "\n";
  out << "  tau1 = " << opt_rat_with_dec(r.overlap->tau1)
      << "   tau2 = " << opt_rat_with_dec(r.overlap->tau2) << "\n\n";

  out << "receiver\n";
  out << "  P_B = " << rat_with_dec(r.receiver->p_b) << "\n";
  out << "  ct        Pr(ct)          p(T)            Pr(bit=0|T)     Pr(bit=1|T)\n";
  for (const auto& [ct, p] : r.receiver->per_transcript) {
    char line[256];
    const auto& posterior = r.bit_posteriors.at(ct);
    std::snprintf(line, sizeof line, "  %-9s %-15s %-15s %-15s %-15s\n", ct.c_str(),
                  r.transcript_prob.at(ct).str().c_str(), p.str().c_str(),
                  posterior.weight_of(Label{"0"}).str().c_str(),
                  posterior.weight_of(Label{"1"}).str().c_str());
    out << line;
  }
  out << "\n";

  for (const auto& a : r.attacks) {
    out << "attack: " << to_string(a.strategy);
    if (a.fallback)
      out << " (fallback=" << to_string(*a.fallback) << ")";
    if (a.lambda)
      out << " (lambda=" << a.lambda->str() << ")";
    out << "\n";
    out << "  P_E = " << rat_with_dec(a.p_e) << "   vs P_B = " << rat_with_dec(a.p_b)
        << "\n";
    if (a.formula_prediction)
      out << "  formula = " << rat_with_dec(*a.formula_prediction)
          << "   gap = " << rat_with_dec(*a.formula_gap) << "\n";
    if (a.global_sigma)
      out << "  global sigma = " << rat_with_dec(*a.global_sigma)
          << "   global-formula misuse = " << rat_with_dec(*a.global_formula_misuse)
          << "\n";
    for (const auto& [ct, diag] : a.per_transcript) {
      out << "  " << ct << ": eve_correct = " << rat_with_dec(diag.eve_correct);
      if (diag.engaged)
        out << (*diag.engaged ? "  [engaged]" : "  [not engaged]");
      if (diag.decision)
        out << "  decision=" << *diag.decision;
      if (diag.sigma)
        out << "  sigma=" << diag.sigma->str() << " p=" << diag.p->str()
            << " formula=" << diag.formula->str()
            << (*diag.independent ? " [independent]" : " [dependent]");
      if (diag.pool_zeros)
        out << "  pool 0s=" << *diag.pool_zeros << " 1s=" << *diag.pool_ones;
      out << "\n";
    }
    for (const auto& note : a.notes)
      out << "  note: " << note << "\n";
    out << "\n";
  }

  if (r.conditions) {
    const auto& c = *r.conditions;
    out << "scheme conditions\n";
    out << "  q2 > q1:           " << (c.q2_gt_q1 ? "yes" : "no") << "\n";
    out << "  q1 + q2 > 1:       " << (c.sum_gt_1 ? "yes" : "no") << "\n";
    out << "  tau1 < 1:          " << (c.tau1_lt_1 ? "yes" : "no") << "\n";
    out << "  q2 + tau1*q1 > 1:  " << (c.engagement_gt_1 ? "yes" : "no")
        << "   (engagement = " << rat_with_dec(c.engagement) << ")\n";
    out << "  P_E < P_B:         " << (c.verdict_pe_lt_pb ? "yes" : "no") << "   ("
        << c.p_e.str() << " vs " << c.p_b.str() << ")\n";
  }
  for (const auto& note : r.notes)
    out << "note: " << note << "\n";
  return out.str();
}

} // namespace

std::string content_digest(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

AnalysisReport analyze_scheme(const SchemeInstance& s,
                              const std::vector<StrategySpec>& strategies,
                              const std::string& input_digest) {
  AnalysisReport report;
  report.scheme_name = s.name;
  report.input_digest = input_digest;
  report.validation = validate_scheme(s);
  if (!report.valid())
    return report;

  report.overlap = overlap_analysis(s);
  report.receiver = receiver_success(s);
  report.transcript_prob = transcript_marginal(s);
  report.bit_posteriors = transcript_posteriors(s);
  for (const auto& spec : strategies)
    report.attacks.push_back(run_attack(s, spec));
  if (report.overlap->tau1)
    report.conditions = check_paper_conditions(s);
  else
    report.notes.push_back("condition check skipped: tau1 undefined");
  return report;
}

std::string render_analysis(const AnalysisReport& r, OutputFormat format) {
  switch (format) {
  case OutputFormat::Json:
    return render_json_report(r);
  case OutputFormat::Csv:
    return render_csv_report(r);
  case OutputFormat::Human:
    return render_human_report(r);
  }
  throw Error("render_analysis: unknown format");
}

std::string render_simulation(const SchemeInstance& s, const StrategySpec& spec,
                              const SimResult& result, OutputFormat format) {
  switch (format) {
  case OutputFormat::Json: {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["scheme_name"] = s.name;
    j["strategy"] = to_string(spec.kind);
    if (spec.kind == Strategy::AssumeS1 || spec.kind == Strategy::AssumeS2 ||
        spec.kind == Strategy::Mixed)
      j["fallback"] = to_string(spec.fallback);
    if (spec.kind == Strategy::Mixed)
      put_rat(j, "lambda", std::optional<Rational>(spec.lambda));
    j["trials"] = result.trials;
    j["seed"] = result.seed;
    j["receiver_hits"] = result.counts.receiver_hits;
    j["eve_hits"] = result.counts.eve_hits;
    put_rat(j, "empirical_P_B", std::optional<Rational>(result.empirical_pb));
    put_rat(j, "exact_P_B", std::optional<Rational>(result.exact_pb));
    put_rat(j, "empirical_P_E", std::optional<Rational>(result.empirical_pe));
    put_rat(j, "exact_P_E", std::optional<Rational>(result.exact_pe));
    j["hoeffding_radius"] = result.hoeffding_radius;
    j["verdict"] = result.agrees_with_exact ? "agree" : "disagree";
    return j.dump(2) + "\n";
  }
  case OutputFormat::Csv: {
    CsvWriter csv;
    csv.row("meta", "tool_version", kToolVersion);
    csv.row("meta", "scheme_name", s.name);
    csv.row("meta", "strategy", to_string(spec.kind));
    csv.row("meta", "trials", std::to_string(result.trials));
    csv.row("meta", "seed", std::to_string(result.seed));
    csv.rat("sim", "empirical_P_B", result.empirical_pb);
    csv.rat("sim", "exact_P_B", result.exact_pb);
    csv.rat("sim", "empirical_P_E", result.empirical_pe);
    csv.rat("sim", "exact_P_E", result.exact_pe);
    csv.row("sim", "hoeffding_radius", decimal_str(result.hoeffding_radius));
    csv.row("sim", "verdict", result.agrees_with_exact ? "agree" : "disagree");
    return csv.str();
  }
  case OutputFormat::Human: {
    std::ostringstream out;
    out << kToolVersion << "\n";
    out << "scheme: " << s.name << "   strategy: " << to_string(spec.kind);
    if (spec.kind == Strategy::Mixed)
      out << " (lambda=" << spec.lambda.str() << ")";
    out << "\n";
    out << "trials: " << result.trials << "   seed: " << result.seed << "\n";
    out << "P_B: empirical " << rat_with_dec(result.empirical_pb) << "   exact "
        << rat_with_dec(result.exact_pb) << "\n";
    out << "P_E: empirical " << rat_with_dec(result.empirical_pe) << "   exact "
        << rat_with_dec(result.exact_pe) << "\n";
    out << "hoeffding radius: " << decimal_str(result.hoeffding_radius) << "\n";
    out << "verdict: " << (result.agrees_with_exact ? "agree" : "disagree") << "\n";
    return out.str();
  }
  }
  throw Error("render_simulation: unknown format");
}

} // namespace twospace
