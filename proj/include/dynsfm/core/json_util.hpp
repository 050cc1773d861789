#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace dynsfm {

using Json = nlohmann::json;

// Canonical serialization used for every artifact: keys sorted (Json's
// object storage already is), doubles printed with 17 significant digits so
// runs with identical config and seed produce byte-identical files and
// round-trips are lossless.
std::string dump_canonical(const Json& j, int indent = 1);

void write_json_file(const std::filesystem::path& path, const Json& j);

// Throws IoError on missing/unreadable file or parse failure.
Json read_json_file(const std::filesystem::path& path);

}  // namespace dynsfm
