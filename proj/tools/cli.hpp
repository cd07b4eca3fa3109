#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpswf::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.17g, the CSV number format
std::string num(double v);

}  // namespace cpswf::cli
