#include <string>
#include <vector>

#include "modent/jobs.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return modent::jobs::cli_main(args);
}
