#include <iostream>
#include <string>
#include <vector>

#include "gradering/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  gradering::CommandOutcome out = gradering::cli_run(args);
  if (!out.out.empty())
    std::cout << out.out;
  if (!out.err.empty())
    std::cerr << out.err;
  return out.exit_code;
}
