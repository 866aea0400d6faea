// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include "gasloop/u256.hpp"

#include <stdexcept>

namespace gasloop::u256 {

namespace {
const U256 kMax = (U256(1) << 255) | ((U256(1) << 255) - 1);
const U512 kMod = U512(1) << 256;
const U256 kSignBit = U256(1) << 255;

bool is_neg(const U256& v) {
    return (v & kSignBit) != 0;
}
}  // namespace

const U256& max() { return kMax; }
const U512& modulus() { return kMod; }

U256 add(const U256& a, const U256& b) {
    return U256((U512(a) + U512(b)) & U512(kMax));
}

U256 sub(const U256& a, const U256& b) {
    return a >= b ? U256(a - b) : U256((U512(a) + kMod) - U512(b));
}

U256 mul(const U256& a, const U256& b) {
    return U256((U512(a) * U512(b)) & U512(kMax));
}

U256 div(const U256& a, const U256& b) {
    return b == 0 ? U256(0) : U256(a / b);
}

U256 mod(const U256& a, const U256& b) {
    return b == 0 ? U256(0) : U256(a % b);
}

U256 neg(const U256& a) {
    return a == 0 ? U256(0) : U256(kMax - a + 1);
}

U256 sdiv(const U256& a, const U256& b) {
    if (b == 0) return 0;
    const bool na = is_neg(a), nb = is_neg(b);
    const U256 ua = na ? neg(a) : a;
    const U256 ub = nb ? neg(b) : b;
    const U256 q = ua / ub;
    return (na != nb) ? neg(q) : q;
}

U256 smod(const U256& a, const U256& b) {
    if (b == 0) return 0;
    const bool na = is_neg(a);
    const U256 ua = na ? neg(a) : a;
    const U256 ub = is_neg(b) ? neg(b) : b;
    const U256 r = ua % ub;
    return na ? neg(r) : r;
}

U256 addmod(const U256& a, const U256& b, const U256& n) {
    if (n == 0) return 0;
    return U256((U512(a) + U512(b)) % U512(n));
}

U256 mulmod(const U256& a, const U256& b, const U256& n) {
    if (n == 0) return 0;
    return U256((U512(a) * U512(b)) % U512(n));
}

U256 exp(const U256& base, const U256& exponent) {
    U256 result = 1;
    U256 b = base;
    U256 e = exponent;
    while (e != 0) {
        if ((e & 1) != 0) result = mul(result, b);
        b = mul(b, b);
        e >>= 1;
    }
    return result;
}

U256 signextend(const U256& byte_index, const U256& value) {
    if (byte_index >= 31) return value;
    const unsigned bit = static_cast<unsigned>(byte_index) * 8 + 7;
    const U256 mask = (U256(1) << (bit + 1)) - 1;
    if ((value & (U256(1) << bit)) != 0) return value | ~mask & kMax;
    return value & mask;
}

bool slt(const U256& a, const U256& b) {
    const bool na = is_neg(a), nb = is_neg(b);
    if (na != nb) return na;
    return a < b;
}

bool sgt(const U256& a, const U256& b) {
    return slt(b, a);
}

U256 shl(const U256& shift, const U256& value) {
    if (shift >= 256) return 0;
    return U256((U512(value) << static_cast<unsigned>(shift)) & U512(kMax));
}

U256 shr(const U256& shift, const U256& value) {
    if (shift >= 256) return 0;
    return value >> static_cast<unsigned>(shift);
}

U256 sar(const U256& shift, const U256& value) {
    const bool neg_value = is_neg(value);
    if (shift >= 256) return neg_value ? kMax : U256(0);
    const unsigned s = static_cast<unsigned>(shift);
    U256 r = value >> s;
    if (neg_value && s > 0) r |= kMax << (256 - s) & kMax;
    return r;
}

U256 byte_at(const U256& index, const U256& value) {
    if (index >= 32) return 0;
    const unsigned shift = (31 - static_cast<unsigned>(index)) * 8;
    return (value >> shift) & 0xff;
}

std::array<uint8_t, 32> to_bytes32(const U256& v) {
    std::array<uint8_t, 32> out{};
    U256 x = v;
    for (int i = 31; i >= 0 && x != 0; --i) {
        out[static_cast<size_t>(i)] = static_cast<uint8_t>(x & 0xff);
        x >>= 8;
    }
    return out;
}

U256 from_bytes32(const uint8_t* data) {
    return from_big_endian(data, 32);
}

U256 from_big_endian(const uint8_t* data, size_t size) {
    U256 v = 0;
    for (size_t i = 0; i < size && i < 32; ++i) v = (v << 8) | data[i];
    return v;
}

Bytes to_minimal_bytes(const U256& v) {
    const auto full = to_bytes32(v);
    size_t first = 0;
    while (first < 32 && full[first] == 0) ++first;
    return Bytes(full.begin() + static_cast<long>(first), full.end());
}

U256 from_address(const Address& a) {
    return from_big_endian(a.data(), a.size());
}

Address to_address(const U256& v) {
    const auto b = to_bytes32(v);
    Address a{};
    std::copy(b.begin() + 12, b.end(), a.begin());
    return a;
}

unsigned byte_width(const U256& v) {
    if (v == 0) return 0;
    return (boost::multiprecision::msb(v) / 8) + 1;
}

std::string to_hex_string(const U256& v) {
    std::ostringstream os;
    os << "0x" << std::hex << v;
    return os.str();
}

U256 from_hex_string(std::string_view s) {
    if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
    if (s.empty() || s.size() > 64) throw std::invalid_argument("bad u256 hex");
    U256 v = 0;
    for (char c : s) {
        int n;
        if (c >= '0' && c <= '9') n = c - '0';
        else if (c >= 'a' && c <= 'f') n = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') n = c - 'A' + 10;
        else throw std::invalid_argument("bad u256 hex digit");
        v = (v << 4) | n;
    }
    return v;
}

bool fits_u64(const U256& v) {
    return v <= U256(std::numeric_limits<uint64_t>::max());
}

uint64_t as_u64(const U256& v) {
    return static_cast<uint64_t>(v);
}

}  // namespace gasloop::u256
