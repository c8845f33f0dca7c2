#include "sgm/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "sgm/error.hpp"
#include "sgm/random.hpp"
#include "sgm/random_complex.hpp"
#include "sgm/sampling.hpp"

namespace sgm {

double f1_score(std::span<const int> truth, std::span<const int> predicted) {
  std::vector<int> t(truth.begin(), truth.end());
  std::vector<int> p(predicted.begin(), predicted.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (t.empty() && p.empty()) return 1.0;
  if (t.empty() || p.empty()) return 0.0;

  std::vector<int> hits;
  std::set_intersection(t.begin(), t.end(), p.begin(), p.end(), std::back_inserter(hits));
  const double tp = static_cast<double>(hits.size());
  // 2PR/(P+R) simplifies to 2TP / (|truth| + |predicted|).
  return 2.0 * tp / static_cast<double>(t.size() + p.size());
}

double nmse(const SgmParams& estimate, const SgmParams& truth) {
  if (estimate.d_v.size() != truth.d_v.size() || estimate.d_t.size() != truth.d_t.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "estimate and truth have different shapes");
  }
  const double den = truth.d_v.squaredNorm() + truth.d_t.squaredNorm() + truth.k * truth.k;
  if (!(den > 0.0)) throw Error(ErrorCode::kZeroTruthNorm, "truth parameters are all zero");
  const double num = (estimate.d_v - truth.d_v).squaredNorm() +
                     (estimate.d_t - truth.d_t).squaredNorm() +
                     (estimate.k - truth.k) * (estimate.k - truth.k);
  return num / den;
}

SgmParams generate_ground_truth(const SimplicialComplex& complex, const std::vector<bool>& filled,
                                std::pair<double, double> d_range, double k_margin,
                                std::uint64_t seed) {
  if (static_cast<int>(filled.size()) != complex.n_triangles()) {
    throw Error(ErrorCode::kDimensionMismatch, "one flag per candidate triangle is required");
  }
  if (!(d_range.first > 0.0 && d_range.first <= d_range.second) || !(k_margin > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 < d_lo <= d_hi and k_margin > 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(d_range.first, d_range.second);

  SgmParams params;
  params.d_v.resize(complex.n_vertices());
  for (auto& v : params.d_v) v = draw(rng);
  params.d_t = Eigen::VectorXd::Zero(complex.n_triangles());
  for (int t = 0; t < complex.n_triangles(); ++t) {
    if (filled[t]) params.d_t[t] = draw(rng);
  }

  const auto inc = incidence_matrices(complex);
  const Eigen::MatrixXd b1 = inc.b1.cast<double>();
  const Eigen::MatrixXd b2 = inc.b2.cast<double>();
  const Eigen::MatrixXd coupling =
      b1.transpose() * params.d_v.asDiagonal() * b1 + b2 * params.d_t.asDiagonal() * b2.transpose();
  double lambda_max = 0.0;
  if (coupling.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(coupling, Eigen::EigenvaluesOnly);
    lambda_max = eig.eigenvalues().maxCoeff();
  }
  // An edgeless complex has no coupling; any k > 0 is valid.
  params.k = lambda_max > 0.0 ? k_margin * lambda_max : 1.0;
  return params;
}

std::vector<int> filled_indices(const std::vector<bool>& filled) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(filled.size()); ++i) {
    if (filled[i]) out.push_back(i);
  }
  return out;
}

void ExperimentConfig::validate() const {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  const bool ok = !vertex_counts.empty() && !fill_fractions.empty() && trials >= 1 &&
                  samples >= 1 && in_unit(edge_probability) &&
                  std::all_of(fill_fractions.begin(), fill_fractions.end(), in_unit) &&
                  std::all_of(vertex_counts.begin(), vertex_counts.end(),
                              [](int n) { return n > 0; }) &&
                  d_range.first > 0.0 && d_range.first <= d_range.second && k_margin > 1.0 &&
                  std::is_sorted(thresholds.begin(), thresholds.end());
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "invalid experiment configuration");
}

const SummaryRow* ExperimentReport::find(int n_vertices, double p, double threshold) const {
  for (const auto& row : summary) {
    if (row.n_vertices == n_vertices && row.p == p && row.threshold == threshold) return &row;
  }
  return nullptr;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<SummaryRow> summarize(std::span<const TrialRecord> trials) {
  std::vector<SummaryRow> rows;
  std::size_t begin = 0;
  while (begin < trials.size()) {
    std::size_t end = begin;
    while (end < trials.size() && trials[end].n_vertices == trials[begin].n_vertices &&
           trials[end].p == trials[begin].p) {
      ++end;
    }
    const auto& thresholds = trials[begin].thresholds;
    std::vector<double> nmse_values;
    for (std::size_t i = begin; i < end; ++i) {
      if (!trials[i].failed) nmse_values.push_back(trials[i].nmse);
    }
    for (std::size_t h = 0; h < thresholds.size(); ++h) {
      std::vector<double> f1_values;
      for (std::size_t i = begin; i < end; ++i) {
        if (!trials[i].failed) f1_values.push_back(trials[i].f1[h]);
      }
      SummaryRow row;
      row.n_vertices = trials[begin].n_vertices;
      row.p = trials[begin].p;
      row.threshold = thresholds[h];
      row.f1_median = quantile(f1_values, 0.5);
      row.f1_q1 = quantile(f1_values, 0.25);
      row.f1_q3 = quantile(f1_values, 0.75);
      row.nmse_median = quantile(nmse_values, 0.5);
      row.nmse_q1 = quantile(nmse_values, 0.25);
      row.nmse_q3 = quantile(nmse_values, 0.75);
      rows.push_back(row);
    }
    begin = end;
  }
  return rows;
}

std::uint64_t trial_seed(std::uint64_t base_seed, int n_vertices, double p, int trial,
                         int attempt) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(n_vertices),
                                 std::bit_cast<std::uint64_t>(p),
                                 static_cast<std::uint64_t>(trial),
                                 static_cast<std::uint64_t>(attempt)});
}

TrialRecord run_trial(const ExperimentConfig& config, int n_vertices, double p, int trial) {
  constexpr int kMaxAttempts = 1000;
  const auto start = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.n_vertices = n_vertices;
  rec.p = p;
  rec.trial = trial;
  rec.thresholds = config.thresholds;
  try {
    std::uint64_t seed = 0;
    RandomComplex rc{build_complex(1, {}), {}};
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxAttempts) {
        throw Error(ErrorCode::kInvalidArgument, "no complex with a 3-clique after many attempts");
      }
      seed = trial_seed(config.base_seed, n_vertices, p, trial, attempt);
      rc = random_complex(n_vertices, config.edge_probability, p, derive_seed(seed, {1}));
      if (rc.complex.n_triangles() > 0) break;
    }
    rec.seed = seed;

    const auto truth = generate_ground_truth(rc.complex, rc.filled, config.d_range,
                                             config.k_margin, derive_seed(seed, {2}));
    const auto omega = assemble_full_precision(rc.complex, truth);
    SampleCovariance c;
    c.m = config.samples;
    c.c = sampled_edge_second_moment(omega, config.samples, derive_seed(seed, {3}));

    auto options = config.inference;
    options.thresholds = config.thresholds;
    const auto result = infer(c, rc.complex, options);

    const auto truth_set = filled_indices(rc.filled);
    for (const auto& sel : result.active_triangles) {
      rec.f1.push_back(f1_score(truth_set, sel.triangles));
    }
    rec.nmse = nmse(result.params(), truth);
    rec.iterations = result.iterations;
    rec.converged = result.converged;
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
    rec.f1.assign(config.thresholds.size(), std::nan(""));
    rec.nmse = std::nan("");
  }
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  struct Task {
    int n;
    double p;
    int trial;
  };
  std::vector<Task> tasks;
  for (int n : config.vertex_counts) {
    for (double p : config.fill_fractions) {
      for (int t = 0; t < config.trials; ++t) tasks.push_back({n, p, t});
    }
  }

  ExperimentReport report;
  report.config = config;
  report.trials.resize(tasks.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      report.trials[i] = run_trial(config, tasks[i].n, tasks[i].p, tasks[i].trial);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  report.summary = summarize(report.trials);
  return report;
}

}  // namespace sgm
