// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace gasloop {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
    bool spawn_failed = false;
};

/// Run argv[0] with arguments, feeding stdin_data; captures stdout/stderr.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_data = {},
                          int timeout_seconds = 120);

/// PATH lookup; empty string when not found.
std::string find_in_path(const std::string& name);

}  // namespace gasloop
