#pragma once

#include <string>

#include <json.hpp>

#include "ssb/linalg.hpp"

namespace ssb {

using json = nlohmann::json;

// Complex matrices are nested arrays of [re, im] pairs, row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& what);

json read_json_file(const std::string& path);

}  // namespace ssb
