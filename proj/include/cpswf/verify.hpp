#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cpswf/cpswf.hpp"

namespace cpswf {

enum class CheckStatus { pass, fail, skipped };
const char* to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  // normalized slack: >= 0 when the check holds, negative by the relative amount it misses
  double worst_margin = 0.0;
  std::vector<std::pair<std::string, double>> parameters;
  std::string note;
};

struct VerifyConfig {
  ProlateParams params;
  int nmax = 20;
  int rule_size = 512;
  int grid_size = 500;
  int J = 200;
};

// suite names: orthonormality, bounds, approximations, decay, truncation, all
bool is_suite(const std::string& name);
std::vector<std::string> suite_members(const std::string& name);

// one independent work item per check; run(i) may be called from any thread
struct CheckPlan {
  std::vector<std::string> names;
  std::function<CheckResult(std::size_t)> run;
};
CheckPlan plan_checks(const std::string& suite, const VerifyConfig& cfg);

}  // namespace cpswf
