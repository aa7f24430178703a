#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldrn::cli {

/// Exit codes: 0 success, 1 verification or construction failure, 2 usage or input error.
enum Exit : int { Ok = 0, Failed = 1, Usage = 2 };

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ldrn::cli
