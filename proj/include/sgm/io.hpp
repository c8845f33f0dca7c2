#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sgm/complex.hpp"
#include "sgm/evaluation.hpp"
#include "sgm/inference.hpp"
#include "sgm/model.hpp"
#include "sgm/sampling.hpp"

namespace sgm {

inline constexpr const char* kToolName = "sgm";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// {"tool": ..., "version": ..., "command": ..., "config": config}
Json provenance(const std::string& command, Json config);

struct ComplexFile {
  SimplicialComplex complex;
  std::optional<std::vector<bool>> triangle_flags;
  std::optional<SgmParams> ground_truth;
};

// Complex: {"n_vertices", "edges": [[i,j],...], "triangles": [[i,j,k],...],
// "triangle_flags": [bool,...]?}
Json complex_to_json(const SimplicialComplex& complex,
                     const std::vector<bool>* triangle_flags = nullptr);
ComplexFile complex_from_json(const Json& j);

// Params: {"k", "d_V", "d_T"}. complex files carrying a "ground_truth"
// object are accepted by params_from_json as well.
Json params_to_json(const SgmParams& params);
SgmParams params_from_json(const Json& j);

Json result_to_json(const InferenceResult& result);
InferenceResult result_from_json(const Json& j);

Json options_to_json(const InferenceOptions& options);
InferenceOptions options_from_json(const Json& j, InferenceOptions base = {});

/// base_seed is required; every other field falls back to its default.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& config);

/// Throws kIoError / kParseError.
Json read_json(const std::filesystem::path& path);
void write_json(const Json& j, const std::filesystem::path& path);

/// Header from layout.column_names() (e0.. for edge-only, v*,e*,t* for full).
void write_samples_csv(const SampleMatrix& samples, const std::filesystem::path& path);

/// Returns the e* columns, in index order, of an edge-only or full samples file.
Eigen::MatrixXd read_edge_samples_csv(const std::filesystem::path& path);

}  // namespace sgm
