// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

#include "gasloop/bytes.hpp"

namespace gasloop {

/// Keccak-256 (original 0x01 padding, as used by the EVM — not SHA3-256).
std::array<uint8_t, 32> keccak256(const uint8_t* data, size_t size);
std::array<uint8_t, 32> keccak256(const Bytes& data);
std::array<uint8_t, 32> keccak256(std::string_view data);
std::string keccak256_hex(std::string_view data);

/// SHA-256, needed for the 0x02 precompile.
std::array<uint8_t, 32> sha256(const uint8_t* data, size_t size);

/// FNV-1a 64-bit; stable token hash for the mock embedder.
uint64_t fnv1a64(std::string_view s);

}  // namespace gasloop
