// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gasloop/bytes.hpp"
#include "gasloop/u256.hpp"

namespace gasloop::rlp {

Bytes encode_bytes(const Bytes& b);
Bytes encode_uint(uint64_t v);  // minimal big-endian integer encoding
Bytes encode_list(const std::vector<Bytes>& encoded_items);

/// keccak256(rlp([sender, nonce]))[12:] — the CREATE address rule.
Address create_address(const Address& sender, uint64_t nonce);

/// keccak256(0xff ++ sender ++ salt ++ keccak256(init_code))[12:] — CREATE2.
Address create2_address(const Address& sender, const U256& salt, const Bytes& init_code);

}  // namespace gasloop::rlp
