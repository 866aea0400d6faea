// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gasloop/bytes.hpp"
#include "gasloop/u256.hpp"

namespace gasloop::abi {

using Json = nlohmann::json;

/// Supported slice of the Solidity ABI type grammar. Tuples and nested
/// reference types beyond one array level are reported as unsupported.
struct Type {
    enum class Kind {
        Uint,
        Int,
        Bool,
        AddressType,
        FixedBytes,
        DynamicBytes,
        String,
        Array,       // T[]
        FixedArray,  // T[k]
    };

    Kind kind = Kind::Uint;
    unsigned bits = 256;         // Uint / Int
    unsigned byte_count = 32;    // FixedBytes
    size_t array_length = 0;     // FixedArray
    std::shared_ptr<Type> element;

    static std::optional<Type> parse(const std::string& abi_type);
    bool is_dynamic() const;
    std::string to_string() const;
};

struct Value {
    Type type;
    U256 scalar = 0;              // numeric/bool/address/fixed-bytes payload
    Bytes data;                   // bytes / string payload
    std::vector<Value> elements;  // arrays

    static Value uint256(const U256& v);
    static Value boolean(bool b);
    static Value address(const Address& a);

    std::string to_string() const;  // human-readable rendering
};

/// Standard head/tail ABI encoding of an argument list.
Bytes encode(const std::vector<Value>& args);

/// Decode `data` as the given argument types; nullopt on malformed input.
std::optional<std::vector<Value>> decode(const std::vector<Type>& types, const Bytes& data);

/// keccak256(signature)[0:4]
Bytes selector(const std::string& signature);

/// "name(uint256,address)" canonical form from a JSON ABI entry.
std::string signature_of(const Json& abi_entry);

/// Input (or output) types of a JSON ABI entry; nullopt if any is unsupported.
std::optional<std::vector<Type>> types_of(const Json& abi_params);

}  // namespace gasloop::abi
