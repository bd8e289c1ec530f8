#pragma once

// JSON forms of the machine-readable outputs and the graphon spec-file reader.

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "signbal/census.hpp"
#include "signbal/graphon.hpp"
#include "signbal/inference.hpp"

namespace signbal {

/// {n, total, c1, c2, c3, c4, balanced}
nlohmann::ordered_json to_json(const TriangleCensus& census);
nlohmann::ordered_json to_json(const InferenceReport& report);
nlohmann::ordered_json to_json(const TestResult& result);

/// Spec file: {"name": ..., "params": {...}, "rho": ..., "s": ..., "n": ...};
/// everything but name is optional. rho and s override the built-in values.
struct SpecFile {
    std::string name;
    ParamMap params;
    std::optional<double> rho;
    std::optional<double> s;
    std::optional<std::size_t> n;
};

SpecFile spec_file_from_json(const nlohmann::json& j);
/// Resolves the built-in graphon, with n merged into params when given.
GraphonSpec graphon_from_spec_file(const SpecFile& file, std::optional<std::size_t> n);

}  // namespace signbal
