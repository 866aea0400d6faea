// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "gasloop/crypto.hpp"
#include "gasloop/rlp.hpp"

using namespace gasloop;

// Reference digests from the Keccak/SHA-2 specifications' published test vectors.
TEST_CASE("keccak256 known vectors") {
    CHECK(keccak256_hex("") ==
          "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    CHECK(keccak256_hex("abc") ==
          "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    // The canonical Solidity event-signature example.
    CHECK(keccak256_hex("Transfer(address,address,uint256)") ==
          "ddf252ad1be2c89b69c2b068fc378daa952ba7f163c4a11628f55a4df523b3ef");
}

TEST_CASE("sha256 known vectors") {
    const auto h = sha256(reinterpret_cast<const uint8_t*>("abc"), 3);
    CHECK(to_hex(h.data(), h.size()) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto empty = sha256(nullptr, 0);
    CHECK(to_hex(empty.data(), empty.size()) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("fnv1a64 is stable") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("uint256") == fnv1a64("uint256"));
    CHECK(fnv1a64("uint256") != fnv1a64("uint128"));
}

TEST_CASE("rlp create address") {
    // Classic example: sender 0x6ac7ea33f8831ea9dcc53393aaa88b25a785dbf0, nonce 0
    // creates 0xcd234a471b72ba2f1ccf0a70fcaba648a5eecd8d.
    const auto sender = address_from_hex("6ac7ea33f8831ea9dcc53393aaa88b25a785dbf0");
    CHECK(to_hex(rlp::create_address(sender, 0)) == "cd234a471b72ba2f1ccf0a70fcaba648a5eecd8d");
    CHECK(to_hex(rlp::create_address(sender, 1)) == "343c43a37d37dff08ae8c4a11544c718abb4fcf8");
}

TEST_CASE("rlp integer encoding") {
    CHECK(to_hex(rlp::encode_uint(0)) == "80");
    CHECK(to_hex(rlp::encode_uint(0x7f)) == "7f");
    CHECK(to_hex(rlp::encode_uint(0x80)) == "8180");
    CHECK(to_hex(rlp::encode_uint(1024)) == "820400");
}
