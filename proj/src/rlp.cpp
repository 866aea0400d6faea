// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include "gasloop/rlp.hpp"

#include "gasloop/crypto.hpp"

namespace gasloop::rlp {

namespace {
Bytes length_prefix(size_t len, uint8_t offset) {
    Bytes out;
    if (len < 56) {
        out.push_back(static_cast<uint8_t>(offset + len));
    } else {
        Bytes len_be;
        for (size_t v = len; v != 0; v >>= 8) len_be.insert(len_be.begin(), static_cast<uint8_t>(v & 0xff));
        out.push_back(static_cast<uint8_t>(offset + 55 + len_be.size()));
        out.insert(out.end(), len_be.begin(), len_be.end());
    }
    return out;
}
}  // namespace

Bytes encode_bytes(const Bytes& b) {
    if (b.size() == 1 && b[0] < 0x80) return b;
    Bytes out = length_prefix(b.size(), 0x80);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Bytes encode_uint(uint64_t v) {
    Bytes be;
    for (; v != 0; v >>= 8) be.insert(be.begin(), static_cast<uint8_t>(v & 0xff));
    return encode_bytes(be);  // zero encodes as empty string 0x80
}

Bytes encode_list(const std::vector<Bytes>& encoded_items) {
    Bytes payload;
    for (const auto& item : encoded_items) payload.insert(payload.end(), item.begin(), item.end());
    Bytes out = length_prefix(payload.size(), 0xc0);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Address create_address(const Address& sender, uint64_t nonce) {
    const Bytes sender_bytes(sender.begin(), sender.end());
    const Bytes encoded = encode_list({encode_bytes(sender_bytes), encode_uint(nonce)});
    const auto hash = keccak256(encoded.data(), encoded.size());
    Address out{};
    std::copy(hash.begin() + 12, hash.end(), out.begin());
    return out;
}

Address create2_address(const Address& sender, const U256& salt, const Bytes& init_code) {
    Bytes preimage;
    preimage.push_back(0xff);
    preimage.insert(preimage.end(), sender.begin(), sender.end());
    const auto salt_bytes = u256::to_bytes32(salt);
    preimage.insert(preimage.end(), salt_bytes.begin(), salt_bytes.end());
    const auto code_hash = keccak256(init_code.data(), init_code.size());
    preimage.insert(preimage.end(), code_hash.begin(), code_hash.end());
    const auto hash = keccak256(preimage.data(), preimage.size());
    Address out{};
    std::copy(hash.begin() + 12, hash.end(), out.begin());
    return out;
}

}  // namespace gasloop::rlp
