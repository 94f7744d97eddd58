#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace vixbns::cli {

enum ExitCode { kOk = 0, kValidationFailed = 1, kBadInput = 2, kNumericalFailure = 3 };

enum class Axis { Time, Strike };

int cmd_price(const RunConfig& cfg, std::ostream& out);
int cmd_hedge(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, Axis axis, std::ostream& out);
int cmd_validate(const RunConfig& cfg, std::ostream& out);
int cmd_check(const RunConfig& cfg, std::ostream& out);

enum class CheckStatus { Pass, Fail, Inconclusive, NotApplicable };

struct CheckOutcome {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

/// MC checks below this many paths are reported as inconclusive.
inline constexpr long kMinConclusivePaths = 10'000;

/// The oracle suite behind cmd_validate.
std::vector<CheckOutcome> run_validation(const RunConfig& cfg);

}  // namespace vixbns::cli
