// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gasloop {

// Environment problems (missing compiler, unreachable provider, broken
// adapter) are distinct from candidate rejections: rejections flow through
// result types, environment failures throw.
class EnvironmentError : public std::runtime_error {
public:
    explicit EnvironmentError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Input contract does not compile.
class CompileError : public std::runtime_error {
public:
    explicit CompileError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gasloop
