// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const char* mode = std::getenv("CGM_COLOR");
  bool color = isatty(STDERR_FILENO) != 0;
  if (mode && std::strcmp(mode, "never") == 0) color = false;
  std::vector<std::string> args(argv + 1, argv + argc);
  return cgm::cli::run(args, {std::cout, std::cerr, color});
}
