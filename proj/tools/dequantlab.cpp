#include <iostream>

#include "dequant/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto report = dequant::cli::run(args);
  std::cout << report.render();
  return report.exit_code;
}
