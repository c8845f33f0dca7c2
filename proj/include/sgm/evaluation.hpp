#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgm/complex.hpp"
#include "sgm/inference.hpp"
#include "sgm/model.hpp"

namespace sgm {

/// Harmonic mean of precision and recall. 1 when both sets are empty, 0 when
/// exactly one is.
double f1_score(std::span<const int> truth, std::span<const int> predicted);

/// (|dv^-dv|^2 + |dt^-dt|^2 + |k^-k|^2) / (|dv|^2 + |dt|^2 + k^2).
/// Throws kDimensionMismatch, kZeroTruthNorm.
double nmse(const SgmParams& estimate, const SgmParams& truth);

/**
 * d_V and the filled entries of d_T drawn uniformly from [d_lo, d_hi],
 * unfilled d_T = 0, and k = k_margin * lambda_max(B1^T D_V B1 + B2 D_T B2^T)
 * so the smallest eigenvalue of Omega_E is (k_margin - 1) lambda_max.
 */
SgmParams generate_ground_truth(const SimplicialComplex& complex, const std::vector<bool>& filled,
                                std::pair<double, double> d_range, double k_margin,
                                std::uint64_t seed);

std::vector<int> filled_indices(const std::vector<bool>& filled);

struct ExperimentConfig {
  std::vector<int> vertex_counts{10, 30, 50};
  std::vector<double> fill_fractions{0.10, 0.30, 0.50};
  double edge_probability = 0.3;
  int trials = 20;
  int samples = 50000;
  std::pair<double, double> d_range{0.2, 1.0};
  double k_margin = 1.5;
  std::vector<double> thresholds{0.01, 0.05, 0.1};
  std::uint64_t base_seed = 0;
  InferenceOptions inference;  // thresholds are overridden by `thresholds`

  void validate() const;
};

struct TrialRecord {
  int n_vertices = 0;
  double p = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;  // seed of the attempt that produced the complex
  std::vector<double> thresholds;
  std::vector<double> f1;  // one per threshold
  double nmse = 0.0;
  int iterations = 0;
  bool converged = false;
  bool failed = false;
  std::string error;
  double runtime_ms = 0.0;
};

/// One row per (cell, threshold).
struct SummaryRow {
  int n_vertices = 0;
  double p = 0.0;
  double threshold = 0.0;
  double f1_median = 0.0, f1_q1 = 0.0, f1_q3 = 0.0;
  double nmse_median = 0.0, nmse_q1 = 0.0, nmse_q3 = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;  // ordered by (n_vertices, p, trial)
  std::vector<SummaryRow> summary;

  const SummaryRow* find(int n_vertices, double p, double threshold) const;
};

/// Linear-interpolation quantile (type 7) of unsorted values; q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Medians and quartiles over the non-failed trials of each cell.
std::vector<SummaryRow> summarize(std::span<const TrialRecord> trials);

/// Seed of attempt `attempt` of a given trial; attempts > 0 replace complexes
/// without 3-cliques.
std::uint64_t trial_seed(std::uint64_t base_seed, int n_vertices, double p, int trial,
                         int attempt);

/// Runs one trial: complex, ground truth, M edge draws, inference, metrics.
/// Failures are recorded in the returned record rather than thrown.
TrialRecord run_trial(const ExperimentConfig& config, int n_vertices, double p, int trial);

/**
 * Sweeps every (n_vertices, p) cell. Trials run on up to `threads` worker
 * threads (0 = hardware concurrency); the report does not depend on the
 * thread count apart from runtime_ms.
 */
ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads = 0);

// Trials CSV: n_vertices,p,trial,seed,threshold,f1,nmse,iterations,converged,runtime_ms
// (one row per trial and threshold). Summary CSV: n_vertices,p,threshold,f1_median,
// f1_q1,f1_q3,nmse_median,nmse_q1,nmse_q3.
void write_trials_csv(std::span<const TrialRecord> trials, const std::filesystem::path& path);
std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path);
void write_summary_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

/// Writes trials.csv and summary.csv into `dir`. Throws kIoError, kInvalidArgument
/// for an empty report.
void emit_plot_data(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace sgm
