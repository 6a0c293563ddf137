#include <iostream>
#include <string>
#include <vector>

#include "simnet/cli.hpp"
#include "simnet/http_resolver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return simnet::cli::run_cli(args, std::cout, std::cerr, [](std::chrono::milliseconds timeout) { return simnet::make_http_resolver(timeout); });
}
