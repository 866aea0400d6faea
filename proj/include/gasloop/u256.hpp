// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "gasloop/bytes.hpp"

namespace gasloop {

// 256-bit EVM word. boost cpp_int grows unbounded, so every wrapping
// operation masks back into the 256-bit range explicitly.
using U256 = boost::multiprecision::uint256_t;
using U512 = boost::multiprecision::uint512_t;

namespace u256 {

const U256& max();          // 2^256 - 1
const U512& modulus();      // 2^256

U256 add(const U256& a, const U256& b);
U256 sub(const U256& a, const U256& b);
U256 mul(const U256& a, const U256& b);
U256 div(const U256& a, const U256& b);   // b == 0 -> 0
U256 mod(const U256& a, const U256& b);   // b == 0 -> 0
U256 sdiv(const U256& a, const U256& b);  // two's complement
U256 smod(const U256& a, const U256& b);
U256 addmod(const U256& a, const U256& b, const U256& n);
U256 mulmod(const U256& a, const U256& b, const U256& n);
U256 exp(const U256& base, const U256& exponent);
U256 signextend(const U256& byte_index, const U256& value);
U256 neg(const U256& a);

bool slt(const U256& a, const U256& b);
bool sgt(const U256& a, const U256& b);

U256 shl(const U256& shift, const U256& value);
U256 shr(const U256& shift, const U256& value);
U256 sar(const U256& shift, const U256& value);
U256 byte_at(const U256& index, const U256& value);  // BYTE opcode semantics

/// Big-endian 32-byte encoding.
std::array<uint8_t, 32> to_bytes32(const U256& v);
U256 from_bytes32(const uint8_t* data);
/// Big-endian, minimal or partial width (reads up to 32 bytes).
U256 from_big_endian(const uint8_t* data, size_t size);
Bytes to_minimal_bytes(const U256& v);  // no leading zeros; empty for 0

U256 from_address(const Address& a);
Address to_address(const U256& v);  // low 20 bytes

/// Number of significant bytes (0 for value 0); used by EXP gas.
unsigned byte_width(const U256& v);

std::string to_hex_string(const U256& v);  // 0x-prefixed, minimal digits
U256 from_hex_string(std::string_view s);  // accepts 0x prefix

/// Fits-in-u64 check plus saturating conversion helper.
bool fits_u64(const U256& v);
uint64_t as_u64(const U256& v);  // precondition: fits_u64

}  // namespace u256
}  // namespace gasloop
