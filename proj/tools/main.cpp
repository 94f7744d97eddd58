#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "vixbns/errors.hpp"

using namespace vixbns;
using namespace vixbns::cli;

namespace {

struct Flags {
  std::string config;
  std::map<std::string, std::string> values;
};

// One --key flag per config key; --config is read first, flags override it.
void add_config_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "key=value config file");
  for (const std::string& key : config_keys())
    cmd->add_option("--" + key, flags.values[key], "overrides config key " + key);
}

RunConfig load(const Flags& flags, CLI::App* cmd) {
  RawConfig raw = default_raw();
  if (!flags.config.empty()) merge_file(raw, flags.config);
  for (const auto& [key, value] : flags.values)
    if (cmd->count("--" + key) > 0) set_value(raw, key, value);
  return resolve(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VIX options, futures and LRM hedges under BNS gamma-OU and IG-OU models"};
  app.require_subcommand(1);

  Flags price_flags, hedge_flags, sweep_flags, validate_flags, check_flags;
  auto* price_cmd = app.add_subcommand("price", "price one VIX call");
  auto* hedge_cmd = app.add_subcommand("hedge", "LRM hedge ratio, riskless units and price");
  auto* sweep_cmd = app.add_subcommand("sweep", "price and hedge over a time or strike grid");
  auto* validate_cmd = app.add_subcommand("validate", "run the oracle suite");
  auto* check_cmd = app.add_subcommand("check", "report model conditions");
  add_config_flags(price_cmd, price_flags);
  add_config_flags(hedge_cmd, hedge_flags);
  add_config_flags(sweep_cmd, sweep_flags);
  add_config_flags(validate_cmd, validate_flags);
  add_config_flags(check_cmd, check_flags);
  std::string axis_name;
  sweep_cmd->add_option("--axis", axis_name, "time or strike")
      ->required()
      ->check(CLI::IsMember({"time", "strike"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    const Flags& flags = cmd == price_cmd      ? price_flags
                         : cmd == hedge_cmd    ? hedge_flags
                         : cmd == sweep_cmd    ? sweep_flags
                         : cmd == validate_cmd ? validate_flags
                                               : check_flags;
    const RunConfig cfg = load(flags, cmd);

    if (!cfg.sidecar.empty()) {
      std::ofstream side(cfg.sidecar);
      if (!side) throw ConfigError("cannot write sidecar '" + cfg.sidecar + "'");
      side << render(cfg);
    }
    std::ofstream file;
    if (cfg.out != "-") {
      file.open(cfg.out);
      if (!file) throw ConfigError("cannot write output '" + cfg.out + "'");
    }
    std::ostream& out = cfg.out == "-" ? std::cout : file;

    if (cmd == price_cmd) return cmd_price(cfg, out);
    if (cmd == hedge_cmd) return cmd_hedge(cfg, out);
    if (cmd == sweep_cmd) return cmd_sweep(cfg, axis_name == "time" ? Axis::Time : Axis::Strike, out);
    if (cmd == validate_cmd) return cmd_validate(cfg, out);
    return cmd_check(cfg, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}
