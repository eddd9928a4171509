// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include <iostream>

#include "slrplan/cli.hpp"

int main(int argc, char** argv) {
  return slrplan::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
