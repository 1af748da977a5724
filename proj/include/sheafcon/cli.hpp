#pragma once

#include <string>
#include <vector>

namespace sheafcon {

  struct CommandResult {
    enum class Status { ok, property_failed, invalid_input };
    Status status = Status::ok;
    std::string report;
    std::vector<std::string> artifacts;  // files written
  };

  /// 0, 1 and 2 for ok, property_failed and invalid_input.
  int exit_code(CommandResult::Status status);

  /// Runs one command line (without the program name).
  CommandResult run(const std::vector<std::string>& args);

}  // namespace sheafcon
