#pragma once

#include <CLI11.hpp>

namespace progvc::cli {

// Reads --config files written as JSON. Nested objects address
// subcommands: {"free": {"search": {"samples": 100}}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also,
                        bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace progvc::cli
