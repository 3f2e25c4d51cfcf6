#pragma once

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "chebconvex/errors.hpp"

namespace testutil {

/// Runs fn, which must throw chebconvex::Error, and returns the code.
template <class Fn>
chebconvex::ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const chebconvex::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected a chebconvex::Error");
}

struct CommandResult {
  std::string out;
  int exit_code = -1;
};

/// Captures stdout and the exit status of a shell command.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + command);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string cli_path() {
#ifdef CHEBCONVEX_CLI_PATH
  return CHEBCONVEX_CLI_PATH;
#else
  throw std::runtime_error("CHEBCONVEX_CLI_PATH not defined");
#endif
}

}  // namespace testutil
