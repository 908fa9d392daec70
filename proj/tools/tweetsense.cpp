// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include <iostream>
#include <string>
#include <vector>

#include "tweetsense/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tweetsense::run_cli(args, std::cout, std::cerr);
}
