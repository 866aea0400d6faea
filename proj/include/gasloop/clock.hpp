// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace gasloop {

/// Time source. The fixed clock makes mock-mode runs byte-reproducible.
class Clock {
public:
    virtual ~Clock() = default;
    virtual int64_t unix_seconds() = 0;
    /// ISO-8601 UTC, e.g. "2026-08-10T12:00:00Z".
    std::string iso8601();
};

class SystemClock final : public Clock {
public:
    int64_t unix_seconds() override;
};

/// Starts at a fixed epoch and advances one second per query.
class FixedClock final : public Clock {
public:
    explicit FixedClock(int64_t start = 1700000000) : next_(start) {}
    int64_t unix_seconds() override { return next_++; }

private:
    int64_t next_;
};

std::shared_ptr<Clock> system_clock();

}  // namespace gasloop
