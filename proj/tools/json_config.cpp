#include "json_config.hpp"

#include <json.hpp>

namespace progvc::cli {

namespace {

void flatten(const nlohmann::json& j, const std::string& name,
             std::vector<std::string> parents,
             std::vector<CLI::ConfigItem>& out) {
  if (j.is_object()) {
    if (!name.empty()) parents.push_back(name);
    for (const auto& [key, value] : j.items()) flatten(value, key, parents, out);
    return;
  }
  if (name.empty()) throw CLI::ConversionError("config root must be an object");
  CLI::ConfigItem item;
  item.name = name;
  item.parents = std::move(parents);
  auto scalar = [&](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("unsupported config value for '" + name + "'");
  };
  if (j.is_array()) {
    for (const auto& v : j) item.inputs.push_back(scalar(v));
  } else {
    item.inputs.push_back(scalar(j));
  }
  out.push_back(std::move(item));
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool,
                                  std::string) const {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
    const std::string& name = opt->get_lnames().front();
    if (opt->count() > 0) {
      auto results = opt->results();
      j[name] = results.size() == 1 ? nlohmann::json(results.front())
                                    : nlohmann::json(results);
    } else if (default_also && !opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  return j.dump(2);
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json j;
  try {
    input >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
  }
  std::vector<CLI::ConfigItem> items;
  flatten(j, "", {}, items);
  return items;
}

}  // namespace progvc::cli
