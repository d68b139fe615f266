// cli.hpp
// The zlab command-line front end, callable in-process.
//
// Exit codes: 0 success (every verification held), 1 a verification failed,
// 2 usage or domain error.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zlab::cli
