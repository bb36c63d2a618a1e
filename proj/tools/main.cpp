#include <string>
#include <vector>

#include "eisenfact/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eisenfact::run_cli(args);
}
