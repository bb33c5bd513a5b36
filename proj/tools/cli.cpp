#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "proftune/params.hpp"
#include "proftune/profiles.hpp"
#include "proftune/runstore.hpp"
#include "proftune/solver.hpp"
#include "proftune/testbed.hpp"
#include "proftune/text.hpp"
#include "proftune/training.hpp"

namespace fs = std::filesystem;

namespace proftune::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string suite = "default";
  std::uint64_t seed = 0;
  double chi = 1e-4;
  double eps_run = 1e-12;
  double eps_train = 1e-2;
  double eps_inner = 1e-1;
  std::int64_t budget = 10000;
  std::int64_t trials = 200;
  std::int64_t inner_trials = 20;
  int jobs = 1;
  std::string store = ".proftune-store";
  bool no_cache = false;
  bool force = false;

  std::string strategy = "average";
  std::string window;
  std::string out;
  std::string q;
  std::string session_in;
  std::string label = "q";
  std::string kind = "perf";
  std::string cutoffs_path;
  std::vector<std::string> runsets;
  std::string svg;
  bool with_svg = false;
  std::string experiment;
};

Window parse_window(const std::string& s) {
  const auto f = text::split(s, ',');
  if (f.size() != 2) throw UsageError("window must be given as lo,hi (got '" + s + "')");
  try {
    return Window{text::parse_double(f[0]), text::parse_double(f[1])};
  } catch (const std::invalid_argument&) {
    throw UsageError("window must be given as lo,hi (got '" + s + "')");
  }
}

ParamConfig parse_config(const std::string& s) {
  const auto f = text::split(s, ',');
  if (f.size() != kParamCount)
    throw UsageError("--q needs 6 comma-separated values alpha,beta,gamma,delta,eta,inertia");
  std::array<double, kParamCount> v{};
  try {
    for (std::size_t i = 0; i < kParamCount; ++i) v[i] = text::parse_double(f[i]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--q: ") + e.what());
  }
  return ParamConfig::from_array(v);
}

// Store and executor shared by one command invocation.
struct Runtime {
  std::unique_ptr<RunStore> store;
  Executor exec;

  Runtime(const Options& o, std::ostream& err) {
    exec.jobs = std::max(1, o.jobs);
    if (!o.no_cache) {
      store = std::make_unique<RunStore>(o.store, &err);
      exec.runs = store->provider();
    }
  }
};

TrainingSpec make_spec(const Options& o, Strategy strategy) {
  TrainingSpec spec;
  spec.strategy = strategy;
  spec.suite = o.suite;
  spec.chi = o.chi;
  spec.trial_cap = o.trials;
  spec.inner_trial_cap = o.inner_trials;
  spec.eps_run = o.eps_run;
  spec.eps_train = o.eps_train;
  spec.eps_inner = o.eps_inner;
  spec.budget = o.budget;
  spec.seed = o.seed;
  return spec;
}

void check_spec(const TrainingSpec& spec) {
  try {
    validate(spec);
    builtin_suite(spec.suite);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

SolverSettings run_settings(const Options& o) {
  SolverSettings s{o.eps_run, o.budget, o.seed};
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return s;
}

ProblemSuite load_suite(const Options& o) {
  try {
    return builtin_suite(o.suite);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void write_text(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file_atomic(path, body);
}

std::string bounds_text(const std::vector<double>& v) {
  if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); }))
    return text::shortest(v.front());
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + text::shortest(v[i]);
  return s + ")";
}

// ---- suite list -----------------------------------------------------------

int cmd_suite_list(const Options& o, std::ostream& out) {
  const auto suite = load_suite(o);
  fmt::print(out, "suite {} ({} problems)\n", suite.name, suite.size());
  fmt::print(out, "{:<28} {:>3}  {:<16} {:<16}\n", "problem", "n", "lower", "upper");
  for (const auto& p : suite.problems)
    fmt::print(out, "{:<28} {:>3}  {:<16} {:<16}\n", p.name, p.dimension(),
               bounds_text(p.lower), bounds_text(p.upper));
  return kOk;
}

// ---- cutoffs --------------------------------------------------------------

int cmd_cutoffs(const Options& o, std::ostream& out, std::ostream& err) {
  if (!(o.chi >= 0.0 && o.chi <= 1.0)) throw UsageError("--chi must lie in [0, 1]");
  const auto suite = load_suite(o);
  const auto settings = run_settings(o);
  Runtime rt(o, err);
  const auto table = compute_cutoffs(suite, default_config(), o.chi, settings, rt.exec);
  std::ostringstream body;
  write_cutoffs(body, table);
  if (o.out.empty() || o.out == "-") {
    out << body.str();
  } else {
    write_text(o.out, body.str());
    fmt::print(out, "wrote {} cut-offs to {}\n", table.entries.size(), o.out);
  }
  return kOk;
}

// ---- run ------------------------------------------------------------------

// Run-set file: key=value header lines, then `problem,n,trace` rows naming
// stored trace keys.
struct RunSet {
  std::string label;
  std::map<std::string, std::string> trace_of;  // problem -> hex key
};

RunSet parse_runset(const std::string& body) {
  RunSet rs;
  bool table = false;
  for (auto raw : text::split(body, '\n')) {
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    if (line == "problem,n,trace") {
      table = true;
      continue;
    }
    if (!table) {
      if (line.starts_with("label=")) rs.label = std::string(line.substr(6));
      continue;
    }
    const auto f = text::split(line, ',');
    if (f.size() != 3) throw std::runtime_error("malformed run-set row: " + std::string(line));
    rs.trace_of[std::string(f[0])] = std::string(text::trim(f[2]));
  }
  if (rs.label.empty()) throw std::runtime_error("run-set file has no label");
  return rs;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.no_cache) throw UsageError("run stores traces; it cannot be combined with --no-cache");
  if (o.q.empty() == o.session_in.empty())
    throw UsageError("run needs exactly one of --q or --session");
  if (o.label.empty() || o.label.find_first_of(",= \n") != std::string::npos)
    throw UsageError("--label must be a plain identifier");
  const ParamConfig q = o.q.empty() ? load_session(o.session_in).trained : parse_config(o.q);
  try {
    validate(q);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto suite = load_suite(o);
  const auto settings = run_settings(o);
  Runtime rt(o, err);
  const auto traces = rt.exec.run_suite(suite, q, settings);

  std::ostringstream body;
  body << "label=" << o.label << '\n'
       << "suite=" << suite.name << '\n'
       << "q=" << text::shortest(q.alpha) << ',' << text::shortest(q.beta) << ','
       << text::shortest(q.gamma) << ',' << text::shortest(q.delta) << ','
       << text::shortest(q.eta) << ',' << q.inertia << '\n'
       << "epsilon=" << text::shortest(settings.epsilon) << '\n'
       << "budget=" << settings.max_evaluations << '\n'
       << "seed=" << settings.seed << '\n'
       << "problem,n,trace\n";
  fmt::print(out, "{:<28} {:>7} {:>24}  {}\n", "problem", "evals", "final_best", "termination");
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& p = suite.problems[i];
    body << p.name << ',' << p.dimension() << ',' << make_run_key(p.name, q, settings).hex()
         << '\n';
    fmt::print(out, "{:<28} {:>7} {:>24}  {}\n", p.name, traces[i].total_evaluations,
               text::digits17(traces[i].final_best()), to_string(traces[i].termination));
  }
  if (o.out.empty() || o.out == "-") {
    out << body.str();
  } else {
    if (!o.force && fs::exists(o.out))
      throw std::runtime_error("refusing to overwrite " + o.out + " (use --force)");
    write_text(o.out, body.str());
    fmt::print(out, "run set '{}' written to {}\n", o.label, o.out);
  }
  return kOk;
}

// ---- train ----------------------------------------------------------------

void print_result(std::ostream& out, const TrainingResult& r) {
  fmt::print(out, "strategy {}  suite {}", to_string(r.strategy), r.suite);
  if (is_maximized(r.strategy)) {
    const Window w = strategy_window(r);
    fmt::print(out, "  window [{}, {}]", text::shortest(w.lo), text::shortest(w.hi));
  }
  fmt::print(out, "  trials {}\n", r.trials.size());
  fmt::print(out, "{:<10} {:>14} {:>14}\n", "param", "q0", "trained");
  const auto a = r.q0.to_array(), b = r.trained.to_array();
  for (std::size_t i = 0; i < kParamCount; ++i)
    fmt::print(out, "{:<10} {:>14.6g} {:>14.6g}\n", kParamNames[i], a[i], b[i]);
  fmt::print(out, "{:<10} {:>14.8g} {:>14.8g}\n", "objective", r.objective_q0,
             r.objective_trained);
  if (is_maximized(r.strategy))
    fmt::print(out, "gain {:.8g} (raw area increase; no percentage form is defined for "
                    "profile objectives)\n",
               r.gain);
  else
    fmt::print(out, "gain {:.4f}% (relative reduction)\n", 100.0 * r.gain);
}

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  Strategy strategy;
  try {
    strategy = strategy_from_string(o.strategy);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  TrainingSpec spec = make_spec(o, strategy);
  if (!o.window.empty()) {
    if (strategy == Strategy::DataProfile) spec.data_window = parse_window(o.window);
    else if (strategy == Strategy::PerfProfile) spec.perf_window = parse_window(o.window);
    else throw UsageError("--window only applies to the data and perf strategies");
  }
  check_spec(spec);

  Runtime rt(o, err);
  const auto result = train(spec, rt.exec);
  fs::path path = o.out;
  if (path.empty()) {
    const std::string name =
        fmt::format("{}-{}-seed{}", to_string(strategy), spec.suite, spec.seed);
    path = rt.store ? rt.store->session_path(name) : fs::path(name + ".txt");
    if (rt.store) {
      rt.store->save_session(result, name, o.force);
    } else {
      save_session(result, path, o.force);
    }
  } else {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    save_session(result, path, o.force);
  }
  print_result(out, result);
  fmt::print(out, "session written to {}\n", path.string());
  return kOk;
}

// ---- profile --------------------------------------------------------------

struct ProfileRequest {
  ProfileKind kind;
  Window window;
};

std::string axis_name(ProfileKind k) { return k == ProfileKind::Performance ? "tau" : "nu"; }

void emit_profile_files(const MeasureTable& table, const ProfileRequest& req,
                        const fs::path& csv_path, const std::optional<fs::path>& svg_path) {
  std::vector<NamedCurve> curves;
  for (const auto& s : table.solvers)
    curves.push_back({s, req.kind == ProfileKind::Performance ? performance_profile(table, s)
                                                              : data_profile(table, s)});
  std::ostringstream csv;
  emit_curves(csv, curves, CurveFormat::Csv, axis_name(req.kind), req.window.lo, req.window.hi);
  write_text(csv_path, csv.str());
  if (svg_path) {
    std::ostringstream svg;
    emit_curves(svg, curves, CurveFormat::Svg, axis_name(req.kind), req.window.lo,
                req.window.hi);
    write_text(*svg_path, svg.str());
  }
}

ProfileRequest profile_request(const std::string& kind, const std::string& window) {
  ProfileRequest req{};
  if (kind == "perf" || kind == "performance") {
    req.kind = ProfileKind::Performance;
    req.window = {1.0, 20.0};
  } else if (kind == "data") {
    req.kind = ProfileKind::Data;
    req.window = {0.0, 2000.0};
  } else {
    throw UsageError("--kind must be perf or data");
  }
  if (!window.empty()) req.window = parse_window(window);
  if (!(req.window.lo < req.window.hi)) throw UsageError("window must satisfy lo < hi");
  if (req.kind == ProfileKind::Performance && req.window.lo < 1.0)
    throw UsageError("performance windows start at tau >= 1");
  if (req.kind == ProfileKind::Data && req.window.lo < 0.0)
    throw UsageError("data windows start at nu >= 0");
  return req;
}

int cmd_profile(const Options& o, std::ostream& out, std::ostream& err) {
  const auto req = profile_request(o.kind, o.window);
  if (o.cutoffs_path.empty()) throw UsageError("profile needs --cutoffs");
  if (o.out.empty()) throw UsageError("profile needs --out for the CSV file");
  if (o.runsets.empty()) throw UsageError("profile needs at least one run-set file");
  if (req.kind == ProfileKind::Performance && o.runsets.size() < 2)
    throw std::runtime_error("performance profiles compare at least two run sets");

  const auto cutoffs = parse_cutoffs(read_file(o.cutoffs_path));
  RunStore store(o.store, &err);
  std::vector<std::string> labels;
  std::vector<MeasureRow> rows;
  for (const auto& path : o.runsets) {
    const RunSet rs = parse_runset(read_file(path));
    if (std::find(labels.begin(), labels.end(), rs.label) != labels.end())
      throw std::runtime_error("duplicate run-set label '" + rs.label + "'");
    MeasureRow row;
    for (const auto& e : cutoffs.entries) {
      const auto it = rs.trace_of.find(e.problem);
      std::optional<RunTrace> trace;
      if (it != rs.trace_of.end()) trace = store.load(it->second);
      if (!trace)
        throw std::runtime_error("missing trace for problem '" + e.problem + "' in variant '" +
                                 rs.label + "'");
      row.push_back(evals_to_target(*trace, e.cutoff));
    }
    labels.push_back(rs.label);
    rows.push_back(std::move(row));
  }
  const auto table = measure_table(cutoffs, labels, rows);
  std::optional<fs::path> svg;
  if (!o.svg.empty()) svg = o.svg;
  emit_profile_files(table, req, o.out, svg);
  fmt::print(out, "{} profile of {} variants over [{}, {}] written to {}\n",
             req.kind == ProfileKind::Performance ? "performance" : "data", labels.size(),
             text::shortest(req.window.lo), text::shortest(req.window.hi), o.out);
  return kOk;
}

// ---- reproduce ------------------------------------------------------------

std::string window_tag(Window w) {
  return text::shortest(w.lo) + "_" + text::shortest(w.hi);
}

int reproduce_window_study(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path dir = o.out.empty() ? fs::path("window-study") : fs::path(o.out);
  TrainingSpec base = make_spec(o, Strategy::DataProfile);
  check_spec(base);
  const auto suite = builtin_suite(base.suite);
  Runtime rt(o, err);
  const SolverSettings settings{base.eps_run, base.budget, base.seed};
  fs::create_directories(dir / "sessions");

  const Window full{0.0, 2000.0}, low{0.0, 300.0}, high{1500.0, 2000.0};
  std::map<std::string, TrainingResult> trained;
  fmt::print(out, "window study on suite {} (seed {})\n", suite.name, base.seed);
  fmt::print(out, "{:<14} {:>14} {:>14} {:>12}\n", "window", "area q0", "area trained", "gain");
  for (const Window w : {full, low, high}) {
    TrainingSpec spec = base;
    spec.data_window = w;
    auto r = train(spec, suite, rt.exec);
    save_session(r, (dir / "sessions" / ("data-" + window_tag(w) + ".txt")), o.force);
    fmt::print(out, "{:<14} {:>14.8g} {:>14.8g} {:>12.8g}\n",
               "[" + text::shortest(w.lo) + "," + text::shortest(w.hi) + "]", r.objective_q0,
               r.objective_trained, r.gain);
    trained.emplace(window_tag(w), std::move(r));
  }
  const auto cutoffs = compute_cutoffs(suite, base.q0, base.chi, settings, rt.exec);
  const auto row_q0 = measure_config(suite, base.q0, cutoffs, settings, rt.exec);
  auto row_of = [&](const Window w) {
    return measure_config(suite, trained.at(window_tag(w)).trained, cutoffs, settings, rt.exec);
  };
  const auto row_full = row_of(full), row_low = row_of(low), row_high = row_of(high);

  struct Figure {
    std::string name;
    const MeasureRow* row;
    Window zoom;
  };
  const std::vector<Figure> figures{
      {"data_q0_vs_trained_0_2000_zoom_0_300", &row_full, low},
      {"data_q0_vs_trained_0_300_zoom_0_300", &row_low, low},
      {"data_q0_vs_trained_0_2000_zoom_1500_2000", &row_full, high},
      {"data_q0_vs_trained_1500_2000_zoom_1500_2000", &row_high, high},
  };
  for (const auto& f : figures) {
    const auto table = measure_table(cutoffs, {"q0", "qD"}, {row_q0, *f.row});
    std::optional<fs::path> svg;
    if (o.with_svg) svg = dir / "curves" / (f.name + ".svg");
    emit_profile_files(table, {ProfileKind::Data, f.zoom}, dir / "curves" / (f.name + ".csv"),
                       svg);
  }
  fmt::print(out, "bundle written to {}\n", dir.string());
  return kOk;
}

int reproduce_table4(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path dir = o.out.empty() ? fs::path("table4-analogue") : fs::path(o.out);
  TrainingSpec base = make_spec(o, Strategy::Average);
  check_spec(base);
  const auto suite = builtin_suite(base.suite);
  Runtime rt(o, err);
  const SolverSettings settings{base.eps_run, base.budget, base.seed};
  fs::create_directories(dir / "sessions");

  struct Row {
    std::string label;
    Strategy strategy;
  };
  const std::vector<Row> rows{{"q_A", Strategy::Average},
                              {"q_R", Strategy::Robust},
                              {"q_P", Strategy::PerfProfile},
                              {"q_D", Strategy::DataProfile}};
  std::ostringstream summary;
  fmt::print(summary, "{:<5} {:>9} {:>9} {:>9} {:>9} {:>11} {:>8} {:>14}  {}\n", "", "alpha",
             "beta", "gamma", "delta", "eta", "inertia", "gain", "gain kind");
  {
    const auto q = base.q0;
    fmt::print(summary, "{:<5} {:>9.4g} {:>9.4g} {:>9.4g} {:>9.4g} {:>11.4g} {:>8} {:>14}  {}\n",
               "q_0", q.alpha, q.beta, q.gamma, q.delta, q.eta, q.inertia, "-", "start");
  }
  std::vector<std::string> labels{"q0"};
  const auto cutoffs = compute_cutoffs(suite, base.q0, base.chi, settings, rt.exec);
  std::vector<MeasureRow> measured{measure_config(suite, base.q0, cutoffs, settings, rt.exec)};
  for (const auto& row : rows) {
    TrainingSpec spec = base;
    spec.strategy = row.strategy;
    const auto r = train(spec, suite, rt.exec);
    save_session(r, dir / "sessions" / (row.label + ".txt"), o.force);
    const auto& q = r.trained;
    const std::string gain = is_maximized(row.strategy) ? fmt::format("{:.6g}", r.gain)
                                                        : fmt::format("{:.2f}%", 100.0 * r.gain);
    fmt::print(summary, "{:<5} {:>9.4g} {:>9.4g} {:>9.4g} {:>9.4g} {:>11.4g} {:>8} {:>14}  {}\n",
               row.label, q.alpha, q.beta, q.gamma, q.delta, q.eta, q.inertia, gain,
               is_maximized(row.strategy) ? "raw area increase" : "relative reduction");
    labels.push_back(row.label);
    measured.push_back(measure_config(suite, q, cutoffs, settings, rt.exec));
  }
  write_text(dir / "summary.txt", summary.str());
  const auto table = measure_table(cutoffs, labels, measured);
  for (const auto& [kind, name] : {std::pair{ProfileKind::Performance, "perf_all_variants"},
                                   std::pair{ProfileKind::Data, "data_all_variants"}}) {
    const ProfileRequest req{kind, kind == ProfileKind::Performance ? Window{1.0, 20.0}
                                                                    : Window{0.0, 2000.0}};
    std::optional<fs::path> svg;
    if (o.with_svg) svg = dir / "curves" / (std::string(name) + ".svg");
    emit_profile_files(table, req, dir / "curves" / (std::string(name) + ".csv"), svg);
  }
  out << summary.str();
  fmt::print(out, "bundle written to {}\n", dir.string());
  return kOk;
}

int cmd_reproduce(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.experiment == "window-study") return reproduce_window_study(o, out, err);
  if (o.experiment == "table4-analogue") return reproduce_table4(o, out, err);
  throw UsageError("unknown experiment '" + o.experiment +
                   "' (valid: table4-analogue, window-study)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Train direct-search parameters against benchmarking profiles", "proftune"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read key=value defaults from a file; flags override it");

  app.add_option("--suite", o.suite, "Problem suite: default or smoke")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for every solver and search stream")
      ->capture_default_str();
  app.add_option("--chi", o.chi, "Cut-off tolerance chi in [0,1] (reference protocol: 1e-4)")
      ->capture_default_str();
  app.add_option("--eps-run", o.eps_run,
                 "Mesh threshold for cut-off and measurement runs (reference protocol: 1e-12)")
      ->capture_default_str();
  app.add_option("--eps-train", o.eps_train,
                 "Mesh threshold of the outer parameter search (reference protocol: 1e-2)")
      ->capture_default_str();
  app.add_option("--eps-inner", o.eps_inner,
                 "Mesh threshold of the inner robust maximization (reference protocol: 1e-1)")
      ->capture_default_str();
  app.add_option("--budget", o.budget,
                 "Evaluation budget per solver run (reference protocol: 10000)")
      ->capture_default_str();
  app.add_option("--trials", o.trials,
                 "Cap on parameter configurations tried (reference protocol: 200)")
      ->capture_default_str();
  app.add_option("--inner-trials", o.inner_trials,
                 "Cap on configurations tried inside each robust box")
      ->capture_default_str();
  app.add_option("--jobs", o.jobs, "Concurrent solver runs per objective evaluation")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--store", o.store, "Run store root directory")
      ->envname("PROFTUNE_STORE")
      ->capture_default_str();
  app.add_flag("--no-cache", o.no_cache, "Run everything without the run store");
  app.add_flag("--force", o.force, "Overwrite existing output files");

  auto* suite_cmd = app.add_subcommand("suite", "Inspect the built-in problem suites");
  suite_cmd->require_subcommand(1);
  auto* list_cmd = suite_cmd->add_subcommand("list", "Print name, dimension and bounds");

  auto* cutoffs_cmd = app.add_subcommand("cutoffs", "Compute per-problem cut-off values from q0");
  cutoffs_cmd->add_option("--out", o.out, "Cut-off CSV path (stdout when omitted)");

  auto* run_cmd = app.add_subcommand("run", "Run one configuration over the suite");
  run_cmd->add_option("--q", o.q, "alpha,beta,gamma,delta,eta,inertia");
  run_cmd->add_option("--session", o.session_in, "Use the trained configuration of a session");
  run_cmd->add_option("--label", o.label, "Variant label written into the run set")
      ->capture_default_str();
  run_cmd->add_option("--out", o.out, "Run-set file path (stdout when omitted)");

  auto* train_cmd = app.add_subcommand("train", "Train the solver parameters");
  train_cmd
      ->add_option("--strategy", o.strategy, "average | robust | data | perf")
      ->capture_default_str();
  train_cmd->add_option("--window", o.window,
                        "Profile window lo,hi (defaults: data 0,2000; perf 1,20)");
  train_cmd->add_option("--out", o.out, "Session file path (default: inside the store)");

  auto* profile_cmd = app.add_subcommand("profile", "Emit profile curves from stored runs");
  profile_cmd->add_option("--kind", o.kind, "perf | data")->capture_default_str();
  profile_cmd->add_option("--window", o.window, "Window lo,hi (defaults: perf 1,20; data 0,2000)");
  profile_cmd->add_option("--cutoffs", o.cutoffs_path, "Cut-off CSV from the cutoffs command");
  profile_cmd->add_option("--out", o.out, "Output CSV path");
  profile_cmd->add_option("--svg", o.svg, "Optional SVG step plot path");
  profile_cmd->add_option("runsets", o.runsets, "Run-set files, one per variant");

  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "Regenerate an experiment bundle into --out");
  reproduce_cmd->add_option("experiment", o.experiment, "table4-analogue | window-study")
      ->required();
  reproduce_cmd->add_option("--out", o.out, "Bundle directory");
  reproduce_cmd->add_flag("--svg", o.with_svg, "Also write SVG plots");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (list_cmd->parsed()) return cmd_suite_list(o, out);
    if (cutoffs_cmd->parsed()) return cmd_cutoffs(o, out, err);
    if (run_cmd->parsed()) return cmd_run(o, out, err);
    if (train_cmd->parsed()) return cmd_train(o, out, err);
    if (profile_cmd->parsed()) return cmd_profile(o, out, err);
    if (reproduce_cmd->parsed()) return cmd_reproduce(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace proftune::cli
