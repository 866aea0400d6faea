// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gasloop {

using Bytes = std::vector<uint8_t>;
using Address = std::array<uint8_t, 20>;

/// Lowercase hex without 0x prefix.
std::string to_hex(const uint8_t* data, size_t size);
std::string to_hex(const Bytes& b);
std::string to_hex(const Address& a);

/// Accepts an optional 0x prefix; empty input yields empty bytes.
std::optional<Bytes> from_hex(std::string_view hex);

/// from_hex that throws std::invalid_argument on malformed input.
Bytes require_hex(std::string_view hex);

Address address_from_hex(std::string_view hex);
std::string checksumless_hex(const Address& a);  // "0x" + 40 lowercase nibbles

Bytes concat(const Bytes& a, const Bytes& b);

}  // namespace gasloop
