// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include "gasloop/abi/abi.hpp"

#include <cstdio>

#include "gasloop/crypto.hpp"

namespace gasloop::abi {

namespace {

std::optional<unsigned> parse_bits(const std::string& s) {
    if (s.empty()) return 256;
    unsigned bits = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        bits = bits * 10 + static_cast<unsigned>(c - '0');
    }
    if (bits == 0 || bits > 256 || bits % 8 != 0) return std::nullopt;
    return bits;
}

}  // namespace

std::optional<Type> Type::parse(const std::string& abi_type) {
    // Array suffixes bind last: peel from the right.
    if (abi_type.size() >= 2 && abi_type.ends_with("]")) {
        const auto open = abi_type.rfind('[');
        if (open == std::string::npos) return std::nullopt;
        const std::string inner = abi_type.substr(0, open);
        const std::string len_str = abi_type.substr(open + 1, abi_type.size() - open - 2);
        auto element = parse(inner);
        if (!element) return std::nullopt;
        Type t;
        t.element = std::make_shared<Type>(std::move(*element));
        if (len_str.empty()) {
            t.kind = Kind::Array;
        } else {
            t.kind = Kind::FixedArray;
            size_t len = 0;
            for (char c : len_str) {
                if (c < '0' || c > '9') return std::nullopt;
                len = len * 10 + static_cast<size_t>(c - '0');
            }
            if (len == 0) return std::nullopt;
            t.array_length = len;
        }
        return t;
    }

    Type t;
    if (abi_type.rfind("uint", 0) == 0) {
        auto bits = parse_bits(abi_type.substr(4));
        if (!bits) return std::nullopt;
        t.kind = Kind::Uint;
        t.bits = *bits;
        return t;
    }
    if (abi_type.rfind("int", 0) == 0) {
        auto bits = parse_bits(abi_type.substr(3));
        if (!bits) return std::nullopt;
        t.kind = Kind::Int;
        t.bits = *bits;
        return t;
    }
    if (abi_type == "bool") {
        t.kind = Kind::Bool;
        return t;
    }
    if (abi_type == "address") {
        t.kind = Kind::AddressType;
        return t;
    }
    if (abi_type == "bytes") {
        t.kind = Kind::DynamicBytes;
        return t;
    }
    if (abi_type == "string") {
        t.kind = Kind::String;
        return t;
    }
    if (abi_type.rfind("bytes", 0) == 0) {
        unsigned n = 0;
        for (char c : abi_type.substr(5)) {
            if (c < '0' || c > '9') return std::nullopt;
            n = n * 10 + static_cast<unsigned>(c - '0');
        }
        if (n == 0 || n > 32) return std::nullopt;
        t.kind = Kind::FixedBytes;
        t.byte_count = n;
        return t;
    }
    return std::nullopt;  // tuple, function, fixed-point: unsupported
}

bool Type::is_dynamic() const {
    switch (kind) {
        case Kind::DynamicBytes:
        case Kind::String:
        case Kind::Array:
            return true;
        case Kind::FixedArray:
            return element->is_dynamic();
        default:
            return false;
    }
}

std::string Type::to_string() const {
    switch (kind) {
        case Kind::Uint: return "uint" + std::to_string(bits);
        case Kind::Int: return "int" + std::to_string(bits);
        case Kind::Bool: return "bool";
        case Kind::AddressType: return "address";
        case Kind::FixedBytes: return "bytes" + std::to_string(byte_count);
        case Kind::DynamicBytes: return "bytes";
        case Kind::String: return "string";
        case Kind::Array: return element->to_string() + "[]";
        case Kind::FixedArray:
            return element->to_string() + "[" + std::to_string(array_length) + "]";
    }
    return "?";
}

Value Value::uint256(const U256& v) {
    Value out;
    out.type.kind = Type::Kind::Uint;
    out.scalar = v;
    return out;
}

Value Value::boolean(bool b) {
    Value out;
    out.type.kind = Type::Kind::Bool;
    out.scalar = b ? 1 : 0;
    return out;
}

Value Value::address(const Address& a) {
    Value out;
    out.type.kind = Type::Kind::AddressType;
    out.scalar = u256::from_address(a);
    return out;
}

std::string Value::to_string() const {
    switch (type.kind) {
        case Type::Kind::Uint: {
            std::ostringstream os;
            os << scalar;
            return os.str();
        }
        case Type::Kind::Int: {
            const U256 sign_bit = U256(1) << (type.bits - 1);
            std::ostringstream os;
            if (type.bits == 256 ? (scalar & (U256(1) << 255)) != 0 : (scalar & sign_bit) != 0)
                os << "-" << u256::neg(u256::signextend(31, scalar));
            else
                os << scalar;
            return os.str();
        }
        case Type::Kind::Bool: return scalar == 0 ? "false" : "true";
        case Type::Kind::AddressType: return checksumless_hex(u256::to_address(scalar));
        case Type::Kind::FixedBytes: {
            const auto b = u256::to_bytes32(scalar);
            return "0x" + to_hex(b.data(), type.byte_count);
        }
        case Type::Kind::DynamicBytes: return "0x" + to_hex(data);
        case Type::Kind::String: return "\"" + std::string(data.begin(), data.end()) + "\"";
        case Type::Kind::Array:
        case Type::Kind::FixedArray: {
            std::string out = "[";
            for (size_t i = 0; i < elements.size(); ++i) {
                if (i > 0) out += ", ";
                out += elements[i].to_string();
            }
            return out + "]";
        }
    }
    return "?";
}

namespace {

void append_word(Bytes& out, const U256& v) {
    const auto w = u256::to_bytes32(v);
    out.insert(out.end(), w.begin(), w.end());
}

void append_padded(Bytes& out, const Bytes& data) {
    out.insert(out.end(), data.begin(), data.end());
    const size_t rem = data.size() % 32;
    if (rem != 0) out.insert(out.end(), 32 - rem, 0);
}

Bytes encode_one(const Value& v);

Bytes encode_sequence(const std::vector<Value>& values) {
    Bytes head, tail;
    size_t head_size = 0;
    for (const auto& v : values) head_size += v.type.is_dynamic() ? 32 : encode_one(v).size();
    for (const auto& v : values) {
        const Bytes enc = encode_one(v);
        if (v.type.is_dynamic()) {
            append_word(head, head_size + tail.size());
            tail.insert(tail.end(), enc.begin(), enc.end());
        } else {
            head.insert(head.end(), enc.begin(), enc.end());
        }
    }
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

Bytes encode_one(const Value& v) {
    Bytes out;
    switch (v.type.kind) {
        case Type::Kind::Uint:
        case Type::Kind::Int:
        case Type::Kind::Bool:
        case Type::Kind::AddressType:
            append_word(out, v.scalar);
            break;
        case Type::Kind::FixedBytes: {
            // Left-aligned: scalar stores the bytes in the high-order lanes.
            append_word(out, v.scalar);
            break;
        }
        case Type::Kind::DynamicBytes:
        case Type::Kind::String:
            append_word(out, v.data.size());
            append_padded(out, v.data);
            break;
        case Type::Kind::Array:
            append_word(out, v.elements.size());
            {
                const Bytes inner = encode_sequence(v.elements);
                out.insert(out.end(), inner.begin(), inner.end());
            }
            break;
        case Type::Kind::FixedArray: {
            const Bytes inner = encode_sequence(v.elements);
            out.insert(out.end(), inner.begin(), inner.end());
            break;
        }
    }
    return out;
}

std::optional<Value> decode_one(const Type& t, const Bytes& data, size_t offset, size_t base);

size_t static_width(const Type& t) {
    if (t.kind == Type::Kind::FixedArray && !t.is_dynamic())
        return t.array_length * static_width(*t.element);
    return 32;
}

std::optional<std::vector<Value>> decode_sequence(const std::vector<Type>& types,
                                                  const Bytes& data, size_t base) {
    std::vector<Value> out;
    size_t head = base;
    for (const auto& t : types) {
        if (t.is_dynamic()) {
            if (head + 32 > data.size()) return std::nullopt;
            const U256 rel = u256::from_bytes32(data.data() + head);
            if (rel > data.size()) return std::nullopt;
            auto v = decode_one(t, data, base + static_cast<size_t>(rel), 0);
            if (!v) return std::nullopt;
            out.push_back(std::move(*v));
            head += 32;
        } else {
            auto v = decode_one(t, data, head, 0);
            if (!v) return std::nullopt;
            out.push_back(std::move(*v));
            head += static_width(t);
        }
    }
    return out;
}

std::optional<Value> decode_one(const Type& t, const Bytes& data, size_t offset, size_t) {
    Value v;
    v.type = t;
    switch (t.kind) {
        case Type::Kind::Uint:
        case Type::Kind::Int:
        case Type::Kind::Bool:
        case Type::Kind::AddressType:
        case Type::Kind::FixedBytes:
            if (offset + 32 > data.size()) return std::nullopt;
            v.scalar = u256::from_bytes32(data.data() + offset);
            return v;
        case Type::Kind::DynamicBytes:
        case Type::Kind::String: {
            if (offset + 32 > data.size()) return std::nullopt;
            const U256 len = u256::from_bytes32(data.data() + offset);
            if (U512(offset) + 32 + U512(len) > data.size()) return std::nullopt;
            v.data.assign(data.begin() + static_cast<long>(offset + 32),
                          data.begin() + static_cast<long>(offset + 32 + static_cast<size_t>(len)));
            return v;
        }
        case Type::Kind::Array: {
            if (offset + 32 > data.size()) return std::nullopt;
            const U256 len = u256::from_bytes32(data.data() + offset);
            if (len > 4096) return std::nullopt;  // sanity bound for fixtures
            std::vector<Type> inner(static_cast<size_t>(len), *t.element);
            auto elems = decode_sequence(inner, data, offset + 32);
            if (!elems) return std::nullopt;
            v.elements = std::move(*elems);
            return v;
        }
        case Type::Kind::FixedArray: {
            std::vector<Type> inner(t.array_length, *t.element);
            auto elems = decode_sequence(inner, data, offset);
            if (!elems) return std::nullopt;
            v.elements = std::move(*elems);
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace

Bytes encode(const std::vector<Value>& args) {
    return encode_sequence(args);
}

std::optional<std::vector<Value>> decode(const std::vector<Type>& types, const Bytes& data) {
    return decode_sequence(types, data, 0);
}

Bytes selector(const std::string& signature) {
    const auto h = keccak256(signature);
    return Bytes(h.begin(), h.begin() + 4);
}

std::string signature_of(const Json& abi_entry) {
    std::string sig = abi_entry.value("name", "");
    sig += "(";
    bool first = true;
    for (const auto& input : abi_entry.value("inputs", Json::array())) {
        if (!first) sig += ",";
        sig += input.value("type", "");
        first = false;
    }
    sig += ")";
    return sig;
}

std::optional<std::vector<Type>> types_of(const Json& abi_params) {
    std::vector<Type> out;
    for (const auto& p : abi_params) {
        auto t = Type::parse(p.value("type", ""));
        if (!t) return std::nullopt;
        out.push_back(std::move(*t));
    }
    return out;
}

}  // namespace gasloop::abi
