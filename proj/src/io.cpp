#include "sgm/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <string>

#include "sgm/csv.hpp"
#include "sgm/error.hpp"

namespace sgm {

namespace {

Json vector_json(const Eigen::VectorXd& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from(const Json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Runs a JSON-reading body, translating library exceptions into kParseError.
template <typename F>
auto parsing(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json provenance(const std::string& command, Json config) {
  Json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["command"] = command;
  meta["config"] = std::move(config);
  return meta;
}

Json complex_to_json(const SimplicialComplex& complex, const std::vector<bool>* triangle_flags) {
  Json j;
  j["n_vertices"] = complex.n_vertices();
  j["edges"] = Json::array();
  for (const auto& e : complex.edges()) j["edges"].push_back({e[0], e[1]});
  j["triangles"] = Json::array();
  for (const auto& t : complex.triangles()) j["triangles"].push_back({t[0], t[1], t[2]});
  if (triangle_flags) j["triangle_flags"] = *triangle_flags;
  return j;
}

ComplexFile complex_from_json(const Json& j) {
  return parsing("complex", [&] {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back(e.get<Edge>());
    std::vector<Triangle> triangles;
    if (j.contains("triangles")) {
      for (const auto& t : j.at("triangles")) triangles.push_back(t.get<Triangle>());
    }
    const std::vector<Triangle> given = triangles;
    ComplexFile out{build_complex(j.at("n_vertices").get<int>(), std::move(edges),
                                  std::move(triangles)),
                    std::nullopt, std::nullopt};
    if (j.contains("triangle_flags")) {
      auto flags = j.at("triangle_flags").get<std::vector<bool>>();
      if (static_cast<int>(flags.size()) != out.complex.n_triangles()) {
        throw Error(ErrorCode::kDimensionMismatch, "triangle_flags length differs from triangles");
      }
      // Flags follow the file's triangle order, which must already be canonical.
      std::vector<Triangle> sorted = given;
      for (auto& t : sorted) std::sort(t.begin(), t.end());
      if (!std::equal(sorted.begin(), sorted.end(), out.complex.triangles().begin())) {
        throw Error(ErrorCode::kParseError, "triangles with flags must be sorted lexicographically");
      }
      out.triangle_flags = std::move(flags);
    }
    if (j.contains("ground_truth")) out.ground_truth = params_from_json(j.at("ground_truth"));
    return out;
  });
}

Json params_to_json(const SgmParams& params) {
  Json j;
  j["k"] = params.k;
  j["d_V"] = vector_json(params.d_v);
  j["d_T"] = vector_json(params.d_t);
  return j;
}

SgmParams params_from_json(const Json& j) {
  return parsing("params", [&] {
    const Json& src = j.contains("ground_truth") ? j.at("ground_truth") : j;
    SgmParams p;
    p.k = src.at("k").get<double>();
    p.d_v = vector_from(src.at("d_V"));
    p.d_t = vector_from(src.at("d_T"));
    return p;
  });
}

Json result_to_json(const InferenceResult& result) {
  Json j;
  j["k_hat"] = result.k_hat;
  j["d_V_hat"] = vector_json(result.d_v_hat);
  j["d_T_hat"] = vector_json(result.d_t_hat);
  j["objective_trace"] = result.objective_trace;
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  Json active = Json::object();
  for (const auto& sel : result.active_triangles) active[csv::format(sel.threshold)] = sel.triangles;
  j["active_triangles"] = active;
  return j;
}

InferenceResult result_from_json(const Json& j) {
  return parsing("result", [&] {
    InferenceResult r;
    r.k_hat = j.at("k_hat").get<double>();
    r.d_v_hat = vector_from(j.at("d_V_hat"));
    r.d_t_hat = vector_from(j.at("d_T_hat"));
    r.d_v_scaled = r.d_v_hat / r.k_hat;
    r.d_t_scaled = r.d_t_hat / r.k_hat;
    r.objective_trace = j.at("objective_trace").get<std::vector<double>>();
    r.converged = j.at("converged").get<bool>();
    r.iterations = j.at("iterations").get<int>();
    for (const auto& [key, value] : j.at("active_triangles").items()) {
      r.active_triangles.push_back(
          {csv::parse_double(key, "threshold"), value.get<std::vector<int>>()});
    }
    std::sort(r.active_triangles.begin(), r.active_triangles.end(),
              [](const auto& a, const auto& b) { return a.threshold < b.threshold; });
    return r;
  });
}

Json options_to_json(const InferenceOptions& o) {
  Json j;
  j["max_outer_iterations"] = o.max_outer_iterations;
  j["objective_tolerance"] = o.objective_tolerance;
  j["kkt_tolerance"] = o.kkt_tolerance;
  j["max_inner_iterations"] = o.max_inner_iterations;
  j["thresholds"] = o.thresholds;
  j["init_scale"] = o.init_scale;
  j["d_V_floor"] = o.d_v_floor;
  return j;
}

InferenceOptions options_from_json(const Json& j, InferenceOptions o) {
  return parsing("inference options", [&] {
    o.max_outer_iterations = j.value("max_outer_iterations", o.max_outer_iterations);
    o.objective_tolerance = j.value("objective_tolerance", o.objective_tolerance);
    o.kkt_tolerance = j.value("kkt_tolerance", o.kkt_tolerance);
    o.max_inner_iterations = j.value("max_inner_iterations", o.max_inner_iterations);
    o.thresholds = j.value("thresholds", o.thresholds);
    o.init_scale = j.value("init_scale", o.init_scale);
    o.d_v_floor = j.value("d_V_floor", o.d_v_floor);
    o.validate();
    return o;
  });
}

ExperimentConfig config_from_json(const Json& j) {
  return parsing("experiment config", [&] {
    if (!j.contains("base_seed")) {
      throw Error(ErrorCode::kInvalidArgument, "experiment config must set base_seed");
    }
    ExperimentConfig c;
    c.base_seed = j.at("base_seed").get<std::uint64_t>();
    c.vertex_counts = j.value("vertex_counts", c.vertex_counts);
    c.fill_fractions = j.value("fill_fractions", c.fill_fractions);
    c.edge_probability = j.value("edge_probability", c.edge_probability);
    c.trials = j.value("trials", c.trials);
    c.samples = j.value("samples", c.samples);
    if (j.contains("d_range")) {
      const auto r = j.at("d_range").get<std::vector<double>>();
      if (r.size() != 2) throw Error(ErrorCode::kParseError, "d_range must have two entries");
      c.d_range = {r[0], r[1]};
    }
    c.k_margin = j.value("k_margin", c.k_margin);
    c.thresholds = j.value("thresholds", c.thresholds);
    if (j.contains("inference")) c.inference = options_from_json(j.at("inference"));
    c.inference.thresholds = c.thresholds;
    c.validate();
    return c;
  });
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["vertex_counts"] = c.vertex_counts;
  j["fill_fractions"] = c.fill_fractions;
  j["edge_probability"] = c.edge_probability;
  j["trials"] = c.trials;
  j["samples"] = c.samples;
  j["d_range"] = {c.d_range.first, c.d_range.second};
  j["k_margin"] = c.k_margin;
  j["thresholds"] = c.thresholds;
  j["base_seed"] = c.base_seed;
  j["inference"] = options_to_json(c.inference);
  return j;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void write_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

void write_samples_csv(const SampleMatrix& samples, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  const auto names = samples.layout.column_names();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  for (int r = 0; r < samples.rows(); ++r) {
    for (int c = 0; c < samples.values.cols(); ++c) {
      out << (c ? "," : "") << csv::format(samples.values(r, c));
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

Eigen::MatrixXd read_edge_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, path.string() + " is empty");

  const auto header = csv::split(line);
  std::map<long long, std::size_t> edge_columns;  // edge index -> column
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c].size() > 1 && header[c][0] == 'e') {
      edge_columns[csv::parse_int(std::string_view(header[c]).substr(1), "column name")] = c;
    }
  }
  const auto n_edges = static_cast<long long>(edge_columns.size());
  if (n_edges == 0 || edge_columns.rbegin()->first != n_edges - 1 ||
      edge_columns.begin()->first != 0) {
    throw Error(ErrorCode::kParseError, path.string() + ": edge columns must be e0..e{n-1}");
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ": row " + std::to_string(rows.size() + 1) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    std::vector<double> row;
    row.reserve(n_edges);
    for (const auto& [index, column] : edge_columns) {
      row.push_back(csv::parse_double(fields[column], "sample"));
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), n_edges);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (long long c = 0; c < n_edges; ++c) out(static_cast<Eigen::Index>(r), c) = rows[r][c];
  }
  return out;
}

}  // namespace sgm
