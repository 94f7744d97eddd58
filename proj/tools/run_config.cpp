#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vixbns/errors.hpp"

namespace vixbns::cli {

namespace {

const std::vector<std::pair<std::string, std::string>>& defaults() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"variant", "gamma"},    {"lambda", "0.5783"},  {"a", "1.4338"},
      {"b", "11.6641"},        {"rho", "-1.2606"},    {"r", "0.007"},
      {"tau", "0.0833"},       {"t", "0.5"},          {"spot", "1124.47"},
      {"sigma_sq", "0.0145"},  {"T", "1"},            {"K", "atm"},
      {"K_min", "0.12"},       {"K_max", "0.30"},     {"K_step", "0.02"},
      {"t_min", "0"},          {"t_max", "0.98"},     {"t_step", "0.02"},
      {"alpha", "1.75"},       {"eps", "auto"},       {"v_max", "auto"},
      {"abs_tol", "1e-9"},     {"max_nodes", "8000000"}, {"fft_size", "16384"},
      {"richardson", "false"}, {"method", "quadrature"}, {"n_paths", "1000000"},
      {"seed", "42"},          {"antithetic", "false"}, {"ops", "price,hedge"},
      {"out", "-"},            {"format", "csv"},     {"sidecar", "auto"},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const std::string& field(const RawConfig& raw, const std::string& key) {
  const std::string& v = raw.at(key);
  if (v.empty()) throw ConfigError(key + ": missing value");
  return v;
}

double to_double(const RawConfig& raw, const std::string& key) {
  const std::string& v = field(raw, key);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || !std::isfinite(x)) throw ConfigError(key + ": not a number: '" + v + "'");
  return x;
}

long to_long(const RawConfig& raw, const std::string& key) {
  const double x = to_double(raw, key);
  if (x != std::floor(x) || std::abs(x) > 9e15) throw ConfigError(key + ": not an integer");
  return static_cast<long>(x);
}

bool to_bool(const RawConfig& raw, const std::string& key) {
  const std::string& v = field(raw, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, value] : defaults()) k.push_back(key);
    return k;
  }();
  return keys;
}

RawConfig default_raw() {
  RawConfig raw;
  for (const auto& [key, value] : defaults()) raw[key] = value;
  return raw;
}

void set_value(RawConfig& raw, const std::string& key, const std::string& value) {
  if (!raw.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  raw[key] = trim(value);
}

void merge_file(RawConfig& raw, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    set_value(raw, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

RunConfig resolve(const RawConfig& raw) {
  RunConfig c;
  const std::string& variant = field(raw, "variant");
  if (variant == "gamma")
    c.model.variant = Variant::GammaOU;
  else if (variant == "ig")
    c.model.variant = Variant::IgOU;
  else
    throw ConfigError("variant: expected gamma or ig");
  c.model.lambda = to_double(raw, "lambda");
  c.model.a = to_double(raw, "a");
  c.model.b = to_double(raw, "b");
  c.model.rho = to_double(raw, "rho");
  c.model.r = to_double(raw, "r");
  c.model.tau = to_double(raw, "tau");
  std::optional<ModelParams> params;
  try {
    params.emplace(c.model);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  c.state.t = to_double(raw, "t");
  c.state.spot = to_double(raw, "spot");
  c.state.sigma_sq = to_double(raw, "sigma_sq");
  try {
    c.state.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  c.T = to_double(raw, "T");
  if (!(c.T > 0.0)) throw ConfigError("T: must be > 0");

  c.K = field(raw, "K") == "atm" ? vix_value(vix_coefficients(*params), c.state.sigma_sq)
                                 : to_double(raw, "K");
  if (!(c.K > 0.0)) throw ConfigError("K: must be > 0");
  c.K_min = to_double(raw, "K_min");
  c.K_max = to_double(raw, "K_max");
  c.K_step = to_double(raw, "K_step");
  if (!(c.K_min > 0.0) || !(c.K_min <= c.K_max) || !(c.K_step > 0.0))
    throw ConfigError("K range: need 0 < K_min <= K_max and K_step > 0");
  c.t_min = to_double(raw, "t_min");
  c.t_max = to_double(raw, "t_max");
  c.t_step = to_double(raw, "t_step");
  if (!(c.t_min >= 0.0) || !(c.t_min <= c.t_max) || !(c.t_step > 0.0))
    throw ConfigError("t range: need 0 <= t_min <= t_max and t_step > 0");

  c.alpha = to_double(raw, "alpha");
  c.numerics = default_settings(c.model.variant);
  if (field(raw, "eps") != "auto") c.numerics.eps = to_double(raw, "eps");
  if (field(raw, "v_max") != "auto") c.numerics.v_max = to_double(raw, "v_max");
  c.numerics.abs_tol = to_double(raw, "abs_tol");
  const long max_nodes = to_long(raw, "max_nodes");
  const long fft_size = to_long(raw, "fft_size");
  if (max_nodes > (1L << 30) || fft_size > (1L << 26))
    throw ConfigError("max_nodes or fft_size: too large");
  c.numerics.max_nodes = static_cast<int>(max_nodes);
  c.numerics.fft_size = static_cast<int>(fft_size);
  c.numerics.richardson = to_bool(raw, "richardson");
  try {
    c.numerics.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  const std::string& method = field(raw, "method");
  if (method == "quadrature")
    c.method = PriceMethod::Quadrature;
  else if (method == "fft")
    c.method = PriceMethod::Fft;
  else
    throw ConfigError("method: expected quadrature or fft");

  const long n_paths = to_long(raw, "n_paths");
  if (n_paths < 1) throw ConfigError("n_paths: must be >= 1");
  c.mc.n_paths = n_paths;
  const std::string& seed = field(raw, "seed");
  try {
    std::size_t used = 0;
    c.mc.seed = std::stoull(seed, &used);
    if (used != seed.size()) throw ConfigError("");
  } catch (const std::exception&) {
    throw ConfigError("seed: expected a non-negative integer");
  }
  c.mc.antithetic = to_bool(raw, "antithetic");
  try {
    c.mc.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  std::stringstream ops(field(raw, "ops"));
  for (std::string op; std::getline(ops, op, ',');) {
    op = trim(op);
    if (op != "price" && op != "hedge") throw ConfigError("ops: expected a list of price, hedge");
    c.ops.push_back(op);
  }

  c.out = field(raw, "out");
  c.format = field(raw, "format");
  if (c.format != "csv") throw ConfigError("format: only csv is supported");
  const std::string& sidecar = field(raw, "sidecar");
  if (sidecar == "auto")
    c.sidecar = c.out == "-" ? "vixbns.resolved.cfg" : c.out + ".resolved.cfg";
  else if (sidecar != "none")
    c.sidecar = sidecar;
  return c;
}

std::string render(const RunConfig& c) {
  std::ostringstream o;
  o << "variant=" << to_string(c.model.variant) << '\n'
    << "lambda=" << fmt(c.model.lambda) << '\n'
    << "a=" << fmt(c.model.a) << '\n'
    << "b=" << fmt(c.model.b) << '\n'
    << "rho=" << fmt(c.model.rho) << '\n'
    << "r=" << fmt(c.model.r) << '\n'
    << "tau=" << fmt(c.model.tau) << '\n'
    << "t=" << fmt(c.state.t) << '\n'
    << "spot=" << fmt(c.state.spot) << '\n'
    << "sigma_sq=" << fmt(c.state.sigma_sq) << '\n'
    << "T=" << fmt(c.T) << '\n'
    << "K=" << fmt(c.K) << '\n'
    << "K_min=" << fmt(c.K_min) << '\n'
    << "K_max=" << fmt(c.K_max) << '\n'
    << "K_step=" << fmt(c.K_step) << '\n'
    << "t_min=" << fmt(c.t_min) << '\n'
    << "t_max=" << fmt(c.t_max) << '\n'
    << "t_step=" << fmt(c.t_step) << '\n'
    << "alpha=" << fmt(c.alpha) << '\n'
    << "eps=" << fmt(c.numerics.eps) << '\n'
    << "v_max=" << (c.numerics.v_max ? fmt(*c.numerics.v_max) : std::string("auto")) << '\n'
    << "abs_tol=" << fmt(c.numerics.abs_tol) << '\n'
    << "max_nodes=" << c.numerics.max_nodes << '\n'
    << "fft_size=" << c.numerics.fft_size << '\n'
    << "richardson=" << (c.numerics.richardson ? "true" : "false") << '\n'
    << "method=" << to_string(c.method) << '\n'
    << "n_paths=" << c.mc.n_paths << '\n'
    << "seed=" << c.mc.seed << '\n'
    << "antithetic=" << (c.mc.antithetic ? "true" : "false") << '\n';
  o << "ops=";
  for (std::size_t i = 0; i < c.ops.size(); ++i) o << (i ? "," : "") << c.ops[i];
  o << '\n'
    << "out=" << c.out << '\n'
    << "format=" << c.format << '\n'
    << "sidecar=" << (c.sidecar.empty() ? "none" : c.sidecar) << '\n';
  return o.str();
}

}  // namespace vixbns::cli
