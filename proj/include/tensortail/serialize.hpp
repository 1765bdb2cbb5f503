#pragma once

#include <string>

#include <json.hpp>

#include "tensortail/bounds.hpp"
#include "tensortail/montecarlo.hpp"

namespace tensortail {

using json = nlohmann::json;

json tensor_to_json(const EinsteinTensor& t);
EinsteinTensor tensor_from_json(const json& j);

json ensemble_spec_to_json(const EnsembleSpec& spec);
EnsembleSpec ensemble_spec_from_json(const json& j);

json block_tensor_to_json(const BlockTensor& a);
/// Accepts {"blocks": [[...]]}, {"fixture": "path"} or a generator spec
/// {"generator": "identity" | "diagonal_identity" | "random_hermitian",
/// "scale": s}. Generators derive their entries from (seed, n, shape).
BlockTensor block_tensor_from_json(const json& j, std::size_t n, const Shape& shape,
                                   std::uint64_t seed);

/// Parses a schema_version-1 experiment config document.
ExperimentConfig experiment_config_from_json(const json& j);

/// Parses the "params" object of a bound-eval config.
HWParams hw_params_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tensortail
