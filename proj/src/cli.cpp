#include "sgm/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>

#include "CLI11.hpp"

#include "sgm/complex.hpp"
#include "sgm/csv.hpp"
#include "sgm/error.hpp"
#include "sgm/evaluation.hpp"
#include "sgm/inference.hpp"
#include "sgm/io.hpp"
#include "sgm/model.hpp"
#include "sgm/random.hpp"
#include "sgm/random_complex.hpp"
#include "sgm/sampling.hpp"

namespace sgm {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 1;

struct GenerateArgs {
  int vertices = 0;
  double edge_prob = 0.3;
  double fill = 0.3;
  std::uint64_t seed = kDefaultSeed;
  std::vector<double> d_range{0.2, 1.0};
  double k_margin = 1.5;
  std::string out;
  std::string params_out;
};

struct SampleArgs {
  std::string complex;
  std::string params;
  int samples = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  bool full = false;
};

struct InferArgs {
  std::string complex;
  std::string data;
  std::string out;
  InferenceOptions options;
};

struct EvalArgs {
  std::string result;
  std::string truth;
  std::string out;
};

struct ExperimentArgs {
  std::string config;
  std::string out_dir;
};

struct PlotArgs {
  std::string report;
  std::string out;
};

unsigned thread_budget() {
  if (const char* env = std::getenv("SGM_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

void write_sidecar(const fs::path& data_path, const Json& meta) {
  Json j;
  j["meta"] = meta;
  j["file"] = data_path.filename().string();
  write_json(j, fs::path(data_path.string() + ".meta.json"));
}

int do_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  err << "seed: " << a.seed << '\n';
  const auto rc = random_complex(a.vertices, a.edge_prob, a.fill, a.seed);
  const auto truth = generate_ground_truth(rc.complex, rc.filled, {a.d_range[0], a.d_range[1]},
                                           a.k_margin, derive_seed(a.seed, {2}));

  Json config;
  config["vertices"] = a.vertices;
  config["edge_prob"] = a.edge_prob;
  config["fill"] = a.fill;
  config["seed"] = a.seed;
  config["d_range"] = a.d_range;
  config["k_margin"] = a.k_margin;

  Json j = complex_to_json(rc.complex, &rc.filled);
  j["ground_truth"] = params_to_json(truth);
  j["meta"] = provenance("generate", config);
  write_json(j, a.out);
  if (!a.params_out.empty()) {
    Json p = params_to_json(truth);
    p["meta"] = provenance("generate", config);
    write_json(p, a.params_out);
  }
  out << "wrote " << a.out << ": " << rc.complex.n_vertices() << " vertices, "
      << rc.complex.n_edges() << " edges, " << rc.complex.n_triangles() << " candidate triangles ("
      << filled_indices(rc.filled).size() << " filled)\n";
  return kExitOk;
}

int do_sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
  err << "seed: " << a.seed << '\n';
  const auto file = complex_from_json(read_json(a.complex));
  const auto params = params_from_json(read_json(a.params));
  const auto omega = assemble_full_precision(file.complex, params);
  auto samples = sample(omega, a.samples, a.seed);
  if (!a.full) {
    samples.values = edge_block(samples);
    samples.layout = {0, file.complex.n_edges(), {}};
  }
  write_samples_csv(samples, a.out);

  Json config;
  config["complex"] = a.complex;
  config["params"] = a.params;
  config["samples"] = a.samples;
  config["seed"] = a.seed;
  config["full"] = a.full;
  write_sidecar(a.out, provenance("sample", config));
  out << "wrote " << a.out << ": " << samples.rows() << " x " << samples.values.cols() << '\n';
  return kExitOk;
}

int do_infer(const InferArgs& a, std::ostream& out) {
  const auto file = complex_from_json(read_json(a.complex));
  const auto candidates = clique_complex(file.complex);
  const auto data = read_edge_samples_csv(a.data);
  if (data.cols() != candidates.n_edges()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "data has " + std::to_string(data.cols()) + " edge columns, complex has " +
                    std::to_string(candidates.n_edges()) + " edges");
  }
  const auto result = infer(sample_covariance(data), candidates, a.options);

  Json config;
  config["complex"] = a.complex;
  config["data"] = a.data;
  config["inference"] = options_to_json(a.options);
  Json j = result_to_json(result);
  j["meta"] = provenance("infer", config);
  write_json(j, a.out);
  out << "wrote " << a.out << ": k_hat=" << result.k_hat << ", iterations=" << result.iterations
      << (result.converged ? " (converged)" : " (not converged)") << '\n';
  return kExitOk;
}

int do_eval(const EvalArgs& a, std::ostream& out) {
  const auto result = result_from_json(read_json(a.result));
  const auto truth = params_from_json(read_json(a.truth));

  std::vector<int> truth_set;
  for (int t = 0; t < truth.d_t.size(); ++t) {
    if (truth.d_t[t] > 0.0) truth_set.push_back(t);
  }
  Json j;
  j["nmse"] = nmse(result.params(), truth);
  Json f1 = Json::object();
  for (const auto& sel : result.active_triangles) {
    f1[csv::format(sel.threshold)] = f1_score(truth_set, sel.triangles);
  }
  j["f1"] = f1;
  Json config;
  config["result"] = a.result;
  config["truth"] = a.truth;
  j["meta"] = provenance("eval", config);
  write_json(j, a.out);
  out << "nmse=" << j["nmse"].get<double>() << '\n';
  return kExitOk;
}

int do_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  const auto config = config_from_json(read_json(a.config));
  err << "seed: " << config.base_seed << '\n';
  const auto report = run_experiment(config, thread_budget());
  emit_plot_data(report, a.out_dir);

  Json j;
  j["meta"] = provenance("experiment", config_to_json(config));
  Json failures = Json::array();
  for (const auto& t : report.trials) {
    if (t.failed) {
      failures.push_back({{"n_vertices", t.n_vertices}, {"p", t.p}, {"trial", t.trial},
                          {"error", t.error}});
    }
  }
  j["failed_trials"] = failures;
  write_json(j, fs::path(a.out_dir) / "report.json");
  write_sidecar(fs::path(a.out_dir) / "trials.csv", j["meta"]);
  write_sidecar(fs::path(a.out_dir) / "summary.csv", j["meta"]);
  out << "wrote " << report.trials.size() << " trials to " << a.out_dir << " ("
      << failures.size() << " failed)\n";
  return kExitOk;
}

int do_plot_data(const PlotArgs& a, std::ostream& out) {
  const auto trials = read_trials_csv(fs::path(a.report) / "trials.csv");
  if (trials.empty()) throw Error(ErrorCode::kInvalidArgument, "report has no trials");
  const auto rows = summarize(trials);
  write_summary_csv(rows, a.out);
  Json config;
  config["report"] = a.report;
  write_sidecar(a.out, provenance("plot-data", config));
  out << "wrote " << rows.size() << " summary rows to " << a.out << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simplicial Gaussian model toolkit", "sgm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::function<int()> action;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Random complex with ground-truth parameters");
  generate->add_option("--vertices", gen.vertices, "Number of vertices")->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--edge-prob", gen.edge_prob, "Edge probability q")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--fill", gen.fill, "Fraction p of 3-cliques filled")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--d-range", gen.d_range, "Interval for d_V, d_T draws")->expected(2);
  generate->add_option("--k-margin", gen.k_margin, "k = margin * spectral bound");
  generate->add_option("--out", gen.out, "Complex JSON output")->required();
  generate->add_option("--params-out", gen.params_out, "Optional standalone params JSON");
  generate->callback([&] { action = [&] { return do_generate(gen, out, err); }; });

  SampleArgs smp;
  auto* sample_cmd = app.add_subcommand("sample", "Draw samples from the joint model");
  sample_cmd->add_option("--complex", smp.complex, "Complex JSON")->required();
  sample_cmd->add_option("--params", smp.params, "Params JSON")->required();
  sample_cmd->add_option("--samples", smp.samples, "Number of draws M")->required()
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", smp.seed, "Random seed");
  sample_cmd->add_option("--out", smp.out, "Samples CSV output")->required();
  sample_cmd->add_flag("--full", smp.full, "Write vertex and triangle columns as well");
  sample_cmd->callback([&] { action = [&] { return do_sample(smp, out, err); }; });

  InferArgs inf;
  auto* infer_cmd = app.add_subcommand("infer", "Estimate parameters from edge samples");
  infer_cmd->add_option("--complex", inf.complex, "Complex JSON (1-skeleton is used)")->required();
  infer_cmd->add_option("--data", inf.data, "Samples CSV")->required();
  infer_cmd->add_option("--out", inf.out, "Result JSON output")->required();
  infer_cmd->add_option("--tol", inf.options.objective_tolerance, "Relative objective tolerance");
  infer_cmd->add_option("--kkt-tol", inf.options.kkt_tolerance, "Subproblem KKT tolerance");
  infer_cmd->add_option("--max-iters", inf.options.max_outer_iterations, "Outer sweep cap");
  infer_cmd->add_option("--thresholds", inf.options.thresholds, "Pruning thresholds");
  infer_cmd->callback([&] {
    action = [&] {
      std::sort(inf.options.thresholds.begin(), inf.options.thresholds.end());
      return do_infer(inf, out);
    };
  });

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "NMSE and F1 of a result against the truth");
  eval_cmd->add_option("--result", ev.result, "Result JSON")->required();
  eval_cmd->add_option("--truth", ev.truth, "Params JSON with the true values")->required();
  eval_cmd->add_option("--out", ev.out, "Metrics JSON output")->required();
  eval_cmd->callback([&] { action = [&] { return do_eval(ev, out); }; });

  ExperimentArgs ex;
  auto* exp_cmd = app.add_subcommand("experiment", "Run the size/sparsity sweep");
  exp_cmd->add_option("--config", ex.config, "Experiment config JSON")->required();
  exp_cmd->add_option("--out-dir", ex.out_dir, "Output directory")->required();
  exp_cmd->callback([&] { action = [&] { return do_experiment(ex, out, err); }; });

  PlotArgs pl;
  auto* plot_cmd = app.add_subcommand("plot-data", "Summary CSV from an experiment directory");
  plot_cmd->add_option("--report", pl.report, "Experiment output directory")->required();
  plot_cmd->add_option("--out", pl.out, "Summary CSV output")->required();
  plot_cmd->callback([&] { action = [&] { return do_plot_data(pl, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace sgm
