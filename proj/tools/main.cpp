#include <iostream>

#include "sheafcon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = sheafcon::run(args);
  auto& out = result.status == sheafcon::CommandResult::Status::invalid_input ? std::cerr : std::cout;
  out << result.report;
  return sheafcon::exit_code(result.status);
}
