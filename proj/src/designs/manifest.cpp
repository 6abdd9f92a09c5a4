#include "cdesign/manifest.hpp"

#include <fstream>
#include <sstream>

namespace cdesign {

using nlohmann::json;

json to_json(const InstanceSpec& spec) {
  json params = json::object();
  for (const auto& p : spec.params()) params[p.name] = p.value;
  return json{{"family", std::string(to_string(spec.family()))}, {"params", params}};
}

InstanceSpec instance_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("instance entry must be an object");
  if (!j.contains("family") || !j["family"].is_string()) throw SpecError("instance entry needs a string \"family\"");
  if (!j.contains("params") || !j["params"].is_object()) throw SpecError("instance entry needs an object \"params\"");
  const Family family = parse_family(j["family"].get<std::string>());
  std::vector<Param> params;
  for (const auto& [name, value] : j["params"].items()) {
    if (!value.is_number_integer()) throw SpecError("parameter " + name + " must be an integer");
    params.push_back({name, value.get<long long>()});
  }
  return InstanceSpec::make(family, std::move(params));
}

namespace {

ManifestEntry entry_from_json(const json& j) {
  ManifestEntry e{instance_from_json(j), std::nullopt, std::nullopt};
  if (j.contains("seeds")) {
    if (!j["seeds"].is_number_integer() || j["seeds"].get<long long>() < 1) {
      throw SpecError("\"seeds\" must be a positive integer");
    }
    e.seeds = j["seeds"].get<int>();
  }
  if (j.contains("file")) {
    if (!j["file"].is_string()) throw SpecError("\"file\" must be a string");
    e.file = j["file"].get<std::string>();
  }
  return e;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("manifest: ") + e.what());
  }
  std::vector<ManifestEntry> out;
  if (doc.is_array()) {
    for (const auto& item : doc) out.push_back(entry_from_json(item));
  } else {
    out.push_back(entry_from_json(doc));
  }
  return out;
}

std::vector<ManifestEntry> load_manifest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

}  // namespace cdesign
