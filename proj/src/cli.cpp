#include "ccd/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ccd/evaluate.hpp"
#include "ccd/oracle.hpp"
#include "ccd/parser.hpp"
#include "json.hpp"

#ifndef CCD_VERSION
#define CCD_VERSION "0.0.0"
#endif

namespace ccd {

namespace {

using nlohmann::json;

// Paper-trail values for the bundled 39-bus benchmark; printed next to our
// own results for comparison.
constexpr double kReferenceForPv = 0.9919;
constexpr double kReferenceForSteam = 0.03887;
constexpr double kReferenceSaidi = 6.3728;
constexpr const char* kSaidiNote =
    "closed, oracle, and exactly-one routes agree to 1e-12; the published "
    "reference value is not reproducible from the stated repair times, "
    "customer counts, and load formulas";

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::cap_exceeded:
    case ErrorCode::shared_leaf:
    case ErrorCode::shared_leaf_across_boxes:
      return 3;
    case ErrorCode::parse_error:
      return 2;
    default:
      return 1;
  }
}

bool closed_form_infeasibility(const Diagnostic& d) {
  return d.code == "SharedLeaf" || d.code == "SharedLeafAcrossBoxes";
}

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& err,
                       bool include_notices = true) {
  for (const Diagnostic& d : diags) {
    if (!include_notices && d.severity == Severity::notice) continue;
    err << format(d) << "\n";
  }
}

json diagnostics_json(const std::vector<Diagnostic>& diags) {
  json out = json::array();
  for (const Diagnostic& d : diags) {
    out.push_back({{"severity", to_string(d.severity)},
                   {"line", d.line},
                   {"col", d.col},
                   {"code", d.code},
                   {"message", d.message}});
  }
  return out;
}

json estimate_json(const McsEstimate& est) {
  return {{"mean", est.mean},
          {"stderr", est.stderr_},
          {"ci95", {est.ci_low, est.ci_high}},
          {"n", est.n},
          {"seed", est.seed}};
}

json report_envelope(const std::string& command, const std::string& model) {
  return {{"command", command},
          {"model", model},
          {"tool_version", CCD_VERSION}};
}

const char* to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::consequence: return "consequence";
    case TargetKind::path: return "path";
    case TargetKind::fault_tree: return "fault-tree";
  }
  return "fault-tree";
}

EvalMethod parse_method(const std::string& name) {
  if (name == "closed") return EvalMethod::closed;
  if (name == "oracle") return EvalMethod::oracle;
  if (name == "mcs") return EvalMethod::mcs;
  fail(ErrorCode::parse_error, "unknown method '" + name + "'");
}

/// Parses and gate-checks a model file. Returns 0 and fills `model` on
/// success, otherwise the exit code. Validation errors outside the
/// shared-leaf family block every method; shared-leaf errors only block
/// closed-form evaluation (the oracle and MCS stay sound there).
int load_model(const std::string& path, EvalMethod method, Model& model,
               std::ostream& err) {
  ParseResult parsed = parse_file(path);
  print_diagnostics(parsed.diagnostics, err, /*include_notices=*/false);
  if (!parsed.ok()) {
    err << "error: cannot load '" << path << "'\n";
    return 2;
  }
  model = std::move(*parsed.model);

  // Notices stay quiet here; `check` prints the full lint output.
  const std::vector<Diagnostic> diags = validate(model);
  print_diagnostics(diags, err, /*include_notices=*/false);
  bool fatal = false;
  bool closed_infeasible = false;
  for (const Diagnostic& d : diags) {
    if (d.severity != Severity::error) continue;
    if (closed_form_infeasibility(d)) {
      closed_infeasible = true;
    } else {
      fatal = true;
    }
  }
  if (fatal) return 1;
  if (closed_infeasible && method == EvalMethod::closed) {
    err << "error: closed-form evaluation is unsound for this model; "
           "use --method oracle or --method mcs\n";
    return 3;
  }
  return 0;
}

struct CommonOpts {
  std::string model_path;
  std::string method_name = "closed";
  std::optional<double> t;
  std::uint64_t samples = kMcsDefaultSamples;
  std::uint64_t seed = 1;
  bool json_out = false;
};

double pick_time(const CommonOpts& opts, const Model& model) {
  return opts.t.value_or(model.mission_t_years);
}

int cmd_eval(const CommonOpts& opts, const std::string& target,
             std::ostream& out, std::ostream& err) {
  const EvalMethod method = parse_method(opts.method_name);
  Model model;
  if (int rc = load_model(opts.model_path, method, model, err); rc != 0) {
    return rc;
  }
  const double t = pick_time(opts, model);
  const EvalResult result =
      evaluate_target(model, target, method, t, {opts.samples, opts.seed});

  if (opts.json_out) {
    json report = report_envelope("eval", model.name);
    report["method"] = std::string(to_string(method));
    report["t_years"] = t;
    json entry = {{"target", result.target},
                  {"kind", to_string(result.kind)},
                  {"probability", result.probability}};
    if (result.estimate) {
      entry["estimate"] = estimate_json(*result.estimate);
      report["seed"] = opts.seed;
      report["samples"] = opts.samples;
    }
    report["results"] = json::array({entry});
    out << report.dump(2) << "\n";
  } else {
    out << "model:       " << model.name << "\n"
        << "target:      " << result.target << " (" << to_string(result.kind)
        << ")\n"
        << "method:      " << to_string(method) << "\n"
        << "t:           " << t << " years\n"
        << std::setprecision(12) << "probability: " << result.probability
        << "\n";
    if (result.estimate) {
      out << "stderr:      " << result.estimate->stderr_ << "\n"
          << "ci95:        [" << result.estimate->ci_low << ", "
          << result.estimate->ci_high << "]\n"
          << "n:           " << result.estimate->n << "\n"
          << "seed:        " << result.estimate->seed << "\n";
    }
  }
  return 0;
}

int cmd_check(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
  ParseResult parsed = parse_file(opts.model_path);
  if (!parsed.ok()) {
    if (opts.json_out) {
      json report = report_envelope("check", "");
      report["diagnostics"] = diagnostics_json(parsed.diagnostics);
      report["errors"] = true;
      out << report.dump(2) << "\n";
    } else {
      print_diagnostics(parsed.diagnostics, out);
    }
    return 2;
  }
  std::vector<Diagnostic> diags = parsed.diagnostics;
  const std::vector<Diagnostic> more = validate(*parsed.model);
  diags.insert(diags.end(), more.begin(), more.end());
  const bool errors = has_errors(diags);
  if (opts.json_out) {
    json report = report_envelope("check", parsed.model->name);
    report["diagnostics"] = diagnostics_json(diags);
    report["errors"] = errors;
    out << report.dump(2) << "\n";
  } else {
    print_diagnostics(diags, out);
    out << (errors ? "check failed" : "ok") << "\n";
  }
  (void)err;
  return errors ? 1 : 0;
}

int cmd_reduce(const CommonOpts& opts, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  // Reduction is purely structural, so shared-leaf models pass through.
  Model model;
  if (int rc = load_model(opts.model_path, EvalMethod::oracle, model, err);
      rc != 0) {
    return rc;
  }
  ModelReduceSummary summary;
  const Model reduced = reduce_model(model, &summary);
  const std::string text = pretty_print(reduced);

  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
    file << text;
  }

  if (opts.json_out) {
    json report = report_envelope("reduce", model.name);
    report["boxes_dropped"] = summary.steps_dropped;
    report["paths_dropped"] = summary.paths_dropped;
    if (out_path.empty()) report["model_text"] = text;
    out << report.dump(2) << "\n";
  } else {
    if (out_path.empty()) out << text;
    err << "reduce: dropped " << summary.steps_dropped
        << " irrelevant decision boxes";
    if (!summary.paths_dropped.empty()) {
      err << ", removed all-irrelevant paths:";
      for (const std::string& id : summary.paths_dropped) err << " " << id;
    }
    err << "\n";
  }
  return 0;
}

int cmd_saidi(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
  const EvalMethod method = parse_method(opts.method_name);
  Model model;
  if (int rc = load_model(opts.model_path, method, model, err); rc != 0) {
    return rc;
  }
  if (model.loads.empty()) {
    err << "error: model declares no loads\n";
    return 1;
  }
  const double t = pick_time(opts, model);
  const SaidiReport report =
      saidi_full(model.study(t), model, t, method, opts.samples, opts.seed);

  if (opts.json_out) {
    json j = report_envelope("saidi", model.name);
    j["method"] = std::string(to_string(method));
    j["saidi_hours"] = report.saidi_hours;
    j["t_years"] = report.t_years;
    if (method == EvalMethod::mcs) {
      j["seed"] = opts.seed;
      j["samples"] = opts.samples;
    }
    json loads = json::array();
    for (const LoadBreakdown& row : report.loads) {
      loads.push_back({{"label", row.label},
                       {"probability", row.probability},
                       {"mttr_h", row.mttr_hours},
                       {"customers", row.customers},
                       {"term", row.term}});
    }
    j["loads"] = loads;
    out << j.dump(2) << "\n";
  } else {
    out << std::setprecision(10);
    out << "SAIDI = " << report.saidi_hours << " hours/customer"
        << "  (method " << to_string(method) << ", t = " << t << " years)\n";
    out << std::left << std::setw(10) << "load" << std::right << std::setw(14)
        << "probability" << std::setw(10) << "mttr_h" << std::setw(11)
        << "customers" << std::setw(14) << "term" << "\n";
    for (const LoadBreakdown& row : report.loads) {
      out << std::left << std::setw(10) << row.label << std::right
          << std::setw(14) << row.probability << std::setw(10)
          << row.mttr_hours << std::setw(11) << row.customers << std::setw(14)
          << row.term << "\n";
    }
    if (method == EvalMethod::mcs) {
      out << "mcs: n=" << opts.samples << " seed=" << opts.seed << "\n";
    }
  }
  return 0;
}

int cmd_case39(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
  ParseResult parsed = parse(bundled_model("ieee39"));
  if (!parsed.ok()) {
    err << "internal error: bundled ieee39 model failed to parse\n";
    return 2;
  }
  const Model& model = *parsed.model;
  const double t = opts.t.value_or(model.mission_t_years);
  const Assignment assign = model.assignment(t);

  struct ForRow {
    double closed;
    double oracle;
    McsEstimate mcs;
    double reference;
  };
  auto for_row = [&](const std::string& name, double reference,
                     std::uint64_t stream) {
    const FtExpr ft = model.resolved_ft(name);
    return ForRow{ft_prob_closed(ft, assign), ft_prob_oracle(ft, assign),
                  mcs_estimate(ft, assign, opts.samples,
                               derive_stream_seed(opts.seed, stream)),
                  reference};
  };
  const ForRow for_pv = for_row("FOR_PV", kReferenceForPv, 101);
  const ForRow for_steam = for_row("FOR_STEAM", kReferenceForSteam, 102);

  const GridStudy study = model.study(t);
  const SaidiReport closed = saidi_full(study, model, t, EvalMethod::closed);
  const SaidiReport oracle = saidi_full(study, model, t, EvalMethod::oracle);
  const SaidiReport mcs = saidi_full(study, model, t, EvalMethod::mcs,
                                     opts.samples, opts.seed);
  const std::optional<SaidiReport> exactly_one =
      saidi_exactly_one(study, model, t);

  if (opts.json_out) {
    json j = report_envelope("case39", model.name);
    j["t_years"] = t;
    j["samples"] = opts.samples;
    j["seed"] = opts.seed;
    j["for_pv"] = {{"closed", for_pv.closed},
                   {"oracle", for_pv.oracle},
                   {"mcs", estimate_json(for_pv.mcs)},
                   {"reference", for_pv.reference}};
    j["for_steam"] = {{"closed", for_steam.closed},
                      {"oracle", for_steam.oracle},
                      {"mcs", estimate_json(for_steam.mcs)},
                      {"reference", for_steam.reference}};
    json loads = json::array();
    for (std::size_t i = 0; i < closed.loads.size(); ++i) {
      json row = {{"label", closed.loads[i].label},
                  {"closed", closed.loads[i].probability},
                  {"oracle", oracle.loads[i].probability},
                  {"mcs", mcs.loads[i].probability},
                  {"mttr_h", closed.loads[i].mttr_hours},
                  {"customers", closed.loads[i].customers}};
      if (exactly_one) row["exactly_one"] = exactly_one->loads[i].probability;
      loads.push_back(row);
    }
    j["loads"] = loads;
    json saidi_j = {{"closed", closed.saidi_hours},
                    {"oracle", oracle.saidi_hours},
                    {"mcs", mcs.saidi_hours},
                    {"reference", kReferenceSaidi},
                    {"note", kSaidiNote}};
    if (exactly_one) saidi_j["exactly_one"] = exactly_one->saidi_hours;
    j["saidi"] = saidi_j;
    out << j.dump(2) << "\n";
    return 0;
  }

  out << std::setprecision(9);
  out << "39-bus generation adequacy study (t = " << t << " years)\n\n";
  auto line = [&](const std::string& label, double c, double o, double m,
                  std::optional<double> x, std::optional<double> ref) {
    out << std::left << std::setw(18) << label << std::right << std::setw(13)
        << c << std::setw(13) << o << std::setw(13) << m;
    if (x) {
      out << std::setw(13) << *x;
    } else {
      out << std::setw(13) << "-";
    }
    if (ref) {
      out << std::setw(12) << *ref;
    } else {
      out << std::setw(12) << "-";
    }
    out << "\n";
  };
  out << std::left << std::setw(18) << "" << std::right << std::setw(13)
      << "closed" << std::setw(13) << "oracle" << std::setw(13) << "mcs"
      << std::setw(13) << "exactly-one" << std::setw(12) << "reference"
      << "\n";
  line("FOR_PV", for_pv.closed, for_pv.oracle, for_pv.mcs.mean, std::nullopt,
       for_pv.reference);
  line("FOR_STEAM", for_steam.closed, for_steam.oracle, for_steam.mcs.mean,
       std::nullopt, for_steam.reference);
  for (std::size_t i = 0; i < closed.loads.size(); ++i) {
    line("P(" + closed.loads[i].label + " fails)",
         closed.loads[i].probability, oracle.loads[i].probability,
         mcs.loads[i].probability,
         exactly_one ? std::optional<double>(exactly_one->loads[i].probability)
                     : std::nullopt,
         std::nullopt);
  }
  line("SAIDI (hours)", closed.saidi_hours, oracle.saidi_hours,
       mcs.saidi_hours,
       exactly_one ? std::optional<double>(exactly_one->saidi_hours)
                   : std::nullopt,
       kReferenceSaidi);
  out << "\nmcs: n=" << opts.samples << " seed=" << opts.seed << "\n";
  out << "note: " << kSaidiNote << "\n";
  (void)err;
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Cause-consequence reliability engine"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string target;
  std::string out_path;

  auto add_common = [&](CLI::App* cmd, bool with_model, bool stochastic) {
    if (with_model) {
      cmd->add_option("model", opts.model_path, "model file (.ccd)")
          ->required();
    }
    cmd->add_option("--t", opts.t, "mission time in years (default: model)");
    cmd->add_flag("--json", opts.json_out, "machine-readable report");
    if (stochastic) {
      cmd->add_option("--samples", opts.samples, "sample count (default 1e5)");
      cmd->add_option("--seed", opts.seed,
                      "PRNG seed (default 1; always recorded in the report)");
    }
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a named target");
  add_common(eval, true, true);
  eval->add_option("--target", target, "consequence, path, or fault tree")
      ->required();
  eval->add_option("--method", opts.method_name, "closed | oracle | mcs")
      ->check(CLI::IsMember({"closed", "oracle", "mcs"}));

  CLI::App* reduce = app.add_subcommand("reduce", "drop irrelevant boxes");
  add_common(reduce, true, false);
  reduce->add_option("--out", out_path, "write the reduced model here");

  CLI::App* check = app.add_subcommand("check", "parse and validate a model");
  add_common(check, true, false);

  CLI::App* mcs = app.add_subcommand("mcs", "Monte-Carlo estimate of a target");
  add_common(mcs, true, true);
  mcs->add_option("--target", target, "consequence, path, or fault tree")
      ->required();

  CLI::App* saidi = app.add_subcommand("saidi", "grid SAIDI over the model loads");
  add_common(saidi, true, true);
  saidi->add_option("--method", opts.method_name, "closed | oracle | mcs")
      ->check(CLI::IsMember({"closed", "oracle", "mcs"}));

  CLI::App* case39 = app.add_subcommand(
      "case39", "bundled 39-bus study: FOR, load failures, SAIDI");
  add_common(case39, false, true);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (eval->parsed()) return cmd_eval(opts, target, out, err);
    if (reduce->parsed()) return cmd_reduce(opts, out_path, out, err);
    if (check->parsed()) return cmd_check(opts, out, err);
    if (mcs->parsed()) {
      opts.method_name = "mcs";
      return cmd_eval(opts, target, out, err);
    }
    if (saidi->parsed()) return cmd_saidi(opts, out, err);
    if (case39->parsed()) return cmd_case39(opts, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ccd
