// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include "gasloop/clock.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace gasloop {

std::string Clock::iso8601() {
    const std::time_t t = static_cast<std::time_t>(unix_seconds());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

int64_t SystemClock::unix_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::shared_ptr<Clock> system_clock() {
    static auto instance = std::make_shared<SystemClock>();
    return instance;
}

}  // namespace gasloop
