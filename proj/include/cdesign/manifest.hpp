#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cdesign/designs.hpp"

namespace cdesign {

/// One instance in a manifest: {"family": "EPA", "params": {"n": 12, ...},
/// "seeds": 4}. Fixture manifests add "file" naming the matrix file.
struct ManifestEntry {
  InstanceSpec instance;
  std::optional<int> seeds;
  std::optional<std::string> file;
};

nlohmann::json to_json(const InstanceSpec& spec);
InstanceSpec instance_from_json(const nlohmann::json& j);

/// Accepts a single entry object or an array of them. Throws ParseError
/// on malformed JSON or SpecError on bad parameters.
std::vector<ManifestEntry> parse_manifest(std::string_view text);
std::vector<ManifestEntry> load_manifest_file(const std::string& path);

}  // namespace cdesign
