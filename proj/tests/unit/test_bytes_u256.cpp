// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "gasloop/bytes.hpp"
#include "gasloop/u256.hpp"

using namespace gasloop;

TEST_CASE("hex round trip") {
    CHECK(to_hex(require_hex("0xdeadbeef")) == "deadbeef");
    CHECK(to_hex(require_hex("")) == "");
    CHECK(!from_hex("0xabc").has_value());   // odd length
    CHECK(!from_hex("zz").has_value());
    CHECK_THROWS_AS(require_hex("0xg0"), std::invalid_argument);
}

TEST_CASE("u256 wrapping arithmetic") {
    const U256 max = u256::max();
    CHECK(u256::add(max, 1) == 0);
    CHECK(u256::sub(0, 1) == max);
    CHECK(u256::mul(max, 2) == u256::sub(max, 1));
    CHECK(u256::div(10, 3) == 3);
    CHECK(u256::div(10, 0) == 0);
    CHECK(u256::mod(10, 0) == 0);
    CHECK(u256::exp(2, 256) == 0);
    CHECK(u256::exp(3, 5) == 243);
    CHECK(u256::exp(0, 0) == 1);
}

TEST_CASE("u256 signed operations") {
    const U256 minus_one = u256::max();
    const U256 minus_two = u256::sub(u256::max(), 1);
    CHECK(u256::sdiv(minus_two, 2) == minus_one);
    CHECK(u256::sdiv(minus_two, minus_one) == 2);
    CHECK(u256::smod(u256::neg(7), 3) == u256::neg(1));
    CHECK(u256::slt(minus_one, 0));
    CHECK(u256::sgt(1, minus_one));
    CHECK(u256::sar(1, minus_two) == minus_one);
    CHECK(u256::sar(300, minus_one) == minus_one);
    CHECK(u256::shr(300, minus_one) == 0);
}

TEST_CASE("u256 byte access and sign extension") {
    const U256 v = u256::from_hex_string("0x1122334455");
    CHECK(u256::byte_at(31, v) == 0x55);
    CHECK(u256::byte_at(27, v) == 0x11);
    CHECK(u256::byte_at(0, v) == 0);
    CHECK(u256::byte_at(32, v) == 0);
    CHECK(u256::signextend(0, 0xff) == u256::max());
    CHECK(u256::signextend(0, 0x7f) == 0x7f);
    CHECK(u256::signextend(1, 0x80ff) == u256::sub(0, 0x7f01));
}

TEST_CASE("u256 byte serialization") {
    const U256 v = u256::from_hex_string("0xdeadbeef");
    const auto b = u256::to_bytes32(v);
    CHECK(b[28] == 0xde);
    CHECK(b[31] == 0xef);
    CHECK(u256::from_bytes32(b.data()) == v);
    CHECK(u256::byte_width(0) == 0);
    CHECK(u256::byte_width(255) == 1);
    CHECK(u256::byte_width(256) == 2);
}
