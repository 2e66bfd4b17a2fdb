#ifndef GAUSSCAP_TOOLS_JSON_CONFIG_HPP
#define GAUSSCAP_TOOLS_JSON_CONFIG_HPP

#include <CLI11.hpp>

namespace gausscap::cli {

// Reads a flat JSON object whose keys are long flag names ("power",
// "lambdas-rule", ...). Keys are routed to the subcommand that was selected
// on the command line; values already given as flags win.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  const CLI::App* root_;
};

}  // namespace gausscap::cli

#endif
