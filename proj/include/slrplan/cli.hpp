// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_CLI_HPP
#define SLRPLAN_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace slrplan {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;

// Entry point of the `slrplan` tool. args[0] is the program name.
// Subcommands: ingest, rank, evaluate, serve, models.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slrplan

#endif  // SLRPLAN_CLI_HPP
