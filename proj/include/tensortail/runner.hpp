#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tensortail/serialize.hpp"

namespace tensortail {

struct RunResult {
    std::string csv;
    std::string summary_json;
    bool all_satisfied = true;
};

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::vector<double>> theta_grid;
};

/// Dispatches one CLI command over a parsed config document. Known commands:
/// bound-eval, verify-bernstein, verify-symmetrization, verify-decoupling,
/// verify-hw, verify-algebra.
RunResult run_command(const std::string& command, const json& config,
                      const RunOverrides& overrides = {});

}  // namespace tensortail
