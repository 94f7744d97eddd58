#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vixbns/model.hpp"
#include "vixbns/oracle.hpp"
#include "vixbns/pricing.hpp"

namespace vixbns::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raw key=value pairs before typing. Every known key is present after default_raw().
using RawConfig = std::map<std::string, std::string>;

struct RunConfig {
  ModelInputs model;
  MarketState state;
  double T = 1.0;
  double K = 0.0;  // "atm" resolves to vix_value at sigma_sq
  double K_min = 0.0, K_max = 0.0, K_step = 0.0;
  double t_min = 0.0, t_max = 0.0, t_step = 0.0;
  double alpha = 1.75;
  QuadratureSettings numerics;
  PriceMethod method = PriceMethod::Quadrature;
  McSettings mc;
  std::vector<std::string> ops;
  std::string out = "-";
  std::string format = "csv";
  std::string sidecar;  // empty: none
};

/// Keys in the order they are documented and echoed.
const std::vector<std::string>& config_keys();

/// All keys at their defaults (the parameter set of the numerical study).
RawConfig default_raw();

/// Assigns one key. Throws ConfigError for an unknown key.
void set_value(RawConfig& raw, const std::string& key, const std::string& value);

/// Reads key=value lines; '#' starts a comment, blank lines are skipped.
void merge_file(RawConfig& raw, const std::string& path);

/// Parses and validates every field. Throws ConfigError.
RunConfig resolve(const RawConfig& raw);

/// key=value text of the resolved configuration, 17 significant digits.
std::string render(const RunConfig& cfg);

}  // namespace vixbns::cli
