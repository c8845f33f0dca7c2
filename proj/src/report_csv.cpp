#include <cmath>
#include <fstream>
#include <string>

#include "sgm/csv.hpp"
#include "sgm/error.hpp"
#include "sgm/evaluation.hpp"

namespace sgm {

namespace {

// One row per (trial, threshold).
constexpr std::string_view kTrialsHeader =
    "n_vertices,p,trial,seed,threshold,f1,nmse,iterations,converged,runtime_ms";
constexpr std::string_view kSummaryHeader =
    "n_vertices,p,threshold,f1_median,f1_q1,f1_q3,nmse_median,nmse_q1,nmse_q3";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::string& header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::getline(in, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  return in;
}

[[noreturn]] void bad_header(const std::filesystem::path& path, const std::string& header) {
  throw Error(ErrorCode::kParseError, path.string() + ": unexpected header '" + header + "'");
}

std::vector<std::vector<std::string>> rows(std::ifstream& in, std::size_t width,
                                           const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != width) {
      throw Error(ErrorCode::kParseError, path.string() + ": row has " +
                                              std::to_string(fields.size()) + " fields");
    }
    out.push_back(std::move(fields));
  }
  return out;
}

}  // namespace

void write_trials_csv(std::span<const TrialRecord> trials, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kTrialsHeader << '\n';
  for (const auto& t : trials) {
    for (std::size_t h = 0; h < t.thresholds.size(); ++h) {
      out << t.n_vertices << ',' << csv::format(t.p) << ',' << t.trial << ',' << t.seed << ','
          << csv::format(t.thresholds[h]) << ',' << csv::format(t.f1[h]) << ','
          << csv::format(t.nmse) << ',' << t.iterations << ',' << (t.converged ? 1 : 0) << ','
          << csv::format(t.runtime_ms) << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path) {
  std::string header;
  auto in = open_in(path, header);
  if (header != kTrialsHeader) bad_header(path, header);
  std::vector<TrialRecord> trials;
  for (const auto& f : rows(in, 10, path)) {
    const int n = static_cast<int>(csv::parse_int(f[0], "n_vertices"));
    const double p = csv::parse_double(f[1], "p");
    const int trial = static_cast<int>(csv::parse_int(f[2], "trial"));
    if (trials.empty() || trials.back().n_vertices != n || trials.back().p != p ||
        trials.back().trial != trial) {
      TrialRecord rec;
      rec.n_vertices = n;
      rec.p = p;
      rec.trial = trial;
      rec.seed = csv::parse_uint(f[3], "seed");
      rec.nmse = csv::parse_double(f[6], "nmse");
      rec.iterations = static_cast<int>(csv::parse_int(f[7], "iterations"));
      rec.converged = csv::parse_int(f[8], "converged") != 0;
      rec.runtime_ms = csv::parse_double(f[9], "runtime_ms");
      rec.failed = std::isnan(rec.nmse);
      trials.push_back(std::move(rec));
    }
    trials.back().thresholds.push_back(csv::parse_double(f[4], "threshold"));
    trials.back().f1.push_back(csv::parse_double(f[5], "f1"));
  }
  return trials;
}

void write_summary_csv(std::span<const SummaryRow> summary, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kSummaryHeader << '\n';
  for (const auto& r : summary) {
    out << r.n_vertices << ',' << csv::format(r.p) << ',' << csv::format(r.threshold) << ','
        << csv::format(r.f1_median) << ',' << csv::format(r.f1_q1) << ','
        << csv::format(r.f1_q3) << ',' << csv::format(r.nmse_median) << ','
        << csv::format(r.nmse_q1) << ',' << csv::format(r.nmse_q3) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
  std::string header;
  auto in = open_in(path, header);
  if (header != kSummaryHeader) bad_header(path, header);
  std::vector<SummaryRow> out;
  for (const auto& f : rows(in, 9, path)) {
    SummaryRow r;
    r.n_vertices = static_cast<int>(csv::parse_int(f[0], "n_vertices"));
    r.p = csv::parse_double(f[1], "p");
    r.threshold = csv::parse_double(f[2], "threshold");
    r.f1_median = csv::parse_double(f[3], "f1_median");
    r.f1_q1 = csv::parse_double(f[4], "f1_q1");
    r.f1_q3 = csv::parse_double(f[5], "f1_q3");
    r.nmse_median = csv::parse_double(f[6], "nmse_median");
    r.nmse_q1 = csv::parse_double(f[7], "nmse_q1");
    r.nmse_q3 = csv::parse_double(f[8], "nmse_q3");
    out.push_back(r);
  }
  return out;
}

void emit_plot_data(const ExperimentReport& report, const std::filesystem::path& dir) {
  if (report.trials.empty()) throw Error(ErrorCode::kInvalidArgument, "report has no trials");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  write_trials_csv(report.trials, dir / "trials.csv");
  write_summary_csv(report.summary, dir / "summary.csv");
}

}  // namespace sgm
